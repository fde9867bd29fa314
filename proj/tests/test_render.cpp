#include <bit>
#include <map>
#include <vector>

#include <doctest.h>

#include "rpm/render.hpp"
#include "rpm/scene.hpp"

using namespace rpm;

namespace {

const AttributeDomain kDomain = AttributeDomain::standard();

// Connected components of dark pixels (4-neighbourhood).
int dark_components(const PanelRaster& r, int threshold = 128) {
    std::vector<int> label(r.pixels.size(), 0);
    int count = 0;
    for (int y = 0; y < r.height; ++y)
        for (int x = 0; x < r.width; ++x) {
            const int i = y * r.width + x;
            if (r.pixels[i] >= threshold || label[i]) continue;
            ++count;
            std::vector<int> stack{i};
            label[i] = count;
            while (!stack.empty()) {
                const int j = stack.back();
                stack.pop_back();
                const int jx = j % r.width, jy = j / r.width;
                const int nbrs[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
                for (const auto& d : nbrs) {
                    const int nx = jx + d[0], ny = jy + d[1];
                    if (nx < 0 || ny < 0 || nx >= r.width || ny >= r.height) continue;
                    const int n = ny * r.width + nx;
                    if (r.pixels[n] < threshold && !label[n]) {
                        label[n] = count;
                        stack.push_back(n);
                    }
                }
            }
        }
    return count;
}

struct Box {
    int x0 = 1 << 30, y0 = 1 << 30, x1 = -1, y1 = -1;
    int width() const { return x1 - x0 + 1; }
    int height() const { return y1 - y0 + 1; }
};

Box dark_bbox(const PanelRaster& r, int threshold = 200) {
    Box b;
    for (int y = 0; y < r.height; ++y)
        for (int x = 0; x < r.width; ++x)
            if (r.pixels[y * r.width + x] < threshold) {
                b.x0 = std::min(b.x0, x);
                b.y0 = std::min(b.y0, y);
                b.x1 = std::max(b.x1, x);
                b.y1 = std::max(b.y1, y);
            }
    return b;
}

PanelSymbol center_panel(int type, int size, int color) {
    PanelSymbol p;
    p.components.push_back({1, type, size, color});
    return p;
}

}  // namespace

TEST_SUITE("render") {

TEST_CASE("byte determinism") {
    const auto& config = Configuration::by_name("3x3Grid");
    PanelSymbol p;
    p.components.push_back({0b101010101, 2, 3, 4});
    const auto a = render_panel(p, config, kDomain);
    const auto b = render_panel(p, config, kDomain);
    CHECK(a == b);
    CHECK(to_pgm(a) == to_pgm(b));
    RenderOptions rot;
    rot.rotate = true;
    rot.rotation_seed = 9;
    CHECK(render_panel(p, config, kDomain, rot) == render_panel(p, config, kDomain, rot));
}

TEST_CASE("single Center circle draws one connected dark contour") {
    const auto& config = Configuration::by_name("Center");
    const auto r =
        render_panel(center_panel(static_cast<int>(Shape::Circle), 3, 0), config, kDomain);
    CHECK(dark_components(r) == 1);
}

TEST_CASE("size level grows the drawn extent") {
    const auto& config = Configuration::by_name("Center");
    for (int type = 0; type < 5; ++type) {
        const auto small = render_panel(center_panel(type, 0, 5), config, kDomain);
        const auto large = render_panel(center_panel(type, 5, 5), config, kDomain);
        const Box bs = dark_bbox(small), bl = dark_bbox(large);
        REQUIRE(bs.x1 >= 0);
        REQUIRE(bl.x1 >= 0);
        CHECK(bl.width() > bs.width());
        CHECK(bl.height() > bs.height());
    }
}

TEST_CASE("color level darkens the fill") {
    const auto& config = Configuration::by_name("Center");
    const auto light = render_panel(center_panel(4, 5, 0), config, kDomain);
    const auto dark = render_panel(center_panel(4, 5, 9), config, kDomain);
    // centre pixel: fill grey
    const int mid = (light.height / 2) * light.width + light.width / 2;
    CHECK(light.pixels[mid] > dark.pixels[mid]);
    CHECK(dark.pixels[mid] == 0);  // deepest level is black
}

TEST_CASE("pgm header and payload size") {
    const auto& config = Configuration::by_name("Center");
    const auto r = render_panel(center_panel(0, 2, 2), config, kDomain);
    const std::string pgm = to_pgm(r);
    CHECK(pgm.substr(0, 3) == "P5\n");
    CHECK(pgm.size() > static_cast<std::size_t>(r.width * r.height));
}

TEST_CASE("svg output mentions every drawn slot") {
    const auto& config = Configuration::by_name("2x2Grid");
    PanelSymbol p;
    p.components.push_back({0b0101, static_cast<int>(Shape::Circle), 3, 4});
    const std::string svg = to_svg(p, config, kDomain);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("circle") != std::string::npos);
}

TEST_CASE("point-mass prediction samples its unique support point") {
    PredictedScene pred;
    ComponentBelief b;
    b.position = LogDist::point_mass(0b0110 - 1, 15);
    b.number = LogDist::point_mass(1, 4);
    b.type = LogDist::point_mass(2, 5);
    b.size = LogDist::point_mass(3, 6);
    b.color = LogDist::point_mass(4, 10);
    pred.belief = {b};
    pred.axis_info.resize(1);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto sym = sample_symbol(pred, seed);
        REQUIRE(sym.components.size() == 1);
        CHECK(sym.components[0] == ComponentSymbol{0b0110, 2, 3, 4});
    }
}

TEST_CASE("number-mode prediction: 3-subset sampling frequencies") {
    PredictedScene pred;
    ComponentBelief b;
    std::vector<double> pos(15, 0.0);
    for (int mask = 1; mask <= 15; ++mask)
        if (std::popcount(static_cast<unsigned>(mask)) == 3) pos[mask - 1] = 0.25;
    b.position = LogDist::from_linear(pos);
    b.number = LogDist::point_mass(2, 4);
    b.type = LogDist::point_mass(0, 5);
    b.size = LogDist::point_mass(0, 6);
    b.color = LogDist::point_mass(0, 10);
    pred.belief = {b};
    pred.axis_info.resize(1);
    std::map<int, int> counts;
    const int total = 1000;
    for (std::uint64_t seed = 0; seed < total; ++seed)
        ++counts[sample_symbol(pred, seed).components[0].occupied];
    CHECK(counts.size() == 4);
    for (const auto& [mask, n] : counts) {
        CHECK(std::popcount(static_cast<unsigned>(mask)) == 3);
        CHECK(std::abs(n / static_cast<double>(total) - 0.25) <= 0.04);
    }
}

}  // TEST_SUITE
