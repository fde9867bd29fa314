#include "rpm/render.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "rpm/errors.hpp"

namespace rpm {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kSub = 256;  // fixed-point subpixel resolution

int grey_for_color(int level, int levels) {
    // level 0 lightest, max darkest
    return levels > 1 ? (255 * (levels - 1 - level)) / (levels - 1) : 0;
}

double size_scale(int level, int levels) {
    return levels > 1 ? 0.4 + 0.6 * level / (levels - 1) : 1.0;
}

int polygon_sides(Shape s) {
    switch (s) {
        case Shape::Triangle: return 3;
        case Shape::Square: return 4;
        case Shape::Pentagon: return 5;
        case Shape::Hexagon: return 6;
        case Shape::Circle: return 0;
    }
    return 0;
}

struct FixedPoint {
    std::int64_t x, y;
};

void fill_convex_polygon(PanelRaster& img, const std::vector<FixedPoint>& v,
                         std::uint8_t fill) {
    std::int64_t min_x = v[0].x, max_x = v[0].x, min_y = v[0].y, max_y = v[0].y;
    for (const auto& p : v) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    const int x0 = std::max<int>(0, static_cast<int>(min_x / kSub) - 1);
    const int x1 = std::min<int>(img.width - 1, static_cast<int>(max_x / kSub) + 1);
    const int y0 = std::max<int>(0, static_cast<int>(min_y / kSub) - 1);
    const int y1 = std::min<int>(img.height - 1, static_cast<int>(max_y / kSub) + 1);
    const int n = static_cast<int>(v.size());
    for (int py = y0; py <= y1; ++py) {
        for (int px = x0; px <= x1; ++px) {
            const std::int64_t cx = static_cast<std::int64_t>(px) * kSub + kSub / 2;
            const std::int64_t cy = static_cast<std::int64_t>(py) * kSub + kSub / 2;
            bool inside = true;
            for (int i = 0; i < n && inside; ++i) {
                const auto& a = v[i];
                const auto& b = v[(i + 1) % n];
                const std::int64_t cross =
                    (b.x - a.x) * (cy - a.y) - (b.y - a.y) * (cx - a.x);
                if (cross < 0) inside = false;  // vertices counter-clockwise
            }
            if (inside) img.pixels[py * img.width + px] = fill;
        }
    }
}

void draw_line(PanelRaster& img, int x0, int y0, int x1, int y1, std::uint8_t c) {
    const int dx = std::abs(x1 - x0), dy = -std::abs(y1 - y0);
    const int sx = x0 < x1 ? 1 : -1, sy = y0 < y1 ? 1 : -1;
    int err = dx + dy;
    while (true) {
        if (x0 >= 0 && x0 < img.width && y0 >= 0 && y0 < img.height)
            img.pixels[y0 * img.width + x0] = c;
        if (x0 == x1 && y0 == y1) break;
        const int e2 = 2 * err;
        if (e2 >= dy) { err += dy; x0 += sx; }
        if (e2 <= dx) { err += dx; y0 += sy; }
    }
}

void draw_circle(PanelRaster& img, int cx, int cy, int r, std::uint8_t fill) {
    const std::int64_t r2 = static_cast<std::int64_t>(r) * r;
    const std::int64_t inner = r >= 2 ? static_cast<std::int64_t>(r - 2) * (r - 2) : 0;
    for (int py = std::max(0, cy - r); py <= std::min(img.height - 1, cy + r); ++py) {
        for (int px = std::max(0, cx - r); px <= std::min(img.width - 1, cx + r); ++px) {
            const std::int64_t dx = px - cx, dy = py - cy;
            const std::int64_t d2 = dx * dx + dy * dy;
            if (d2 > r2) continue;
            img.pixels[py * img.width + px] = d2 >= inner ? 0 : fill;
        }
    }
}

void draw_shape(PanelRaster& img, Shape shape, double cx, double cy, double radius,
                double angle, std::uint8_t fill) {
    const int sides = polygon_sides(shape);
    if (sides == 0) {
        draw_circle(img, static_cast<int>(std::lround(cx)),
                    static_cast<int>(std::lround(cy)),
                    static_cast<int>(std::lround(radius)), fill);
        return;
    }
    std::vector<FixedPoint> v(sides);
    for (int i = 0; i < sides; ++i) {
        // counter-clockwise in raster coordinates (y grows downward)
        const double a = angle - kPi / 2 - 2.0 * kPi * i / sides;
        v[i] = {static_cast<std::int64_t>(std::llround((cx + radius * std::cos(a)) * kSub)),
                static_cast<std::int64_t>(std::llround((cy + radius * std::sin(a)) * kSub))};
    }
    fill_convex_polygon(img, v, fill);
    for (int i = 0; i < sides; ++i) {
        const auto& a = v[i];
        const auto& b = v[(i + 1) % sides];
        draw_line(img, static_cast<int>(a.x / kSub), static_cast<int>(a.y / kSub),
                  static_cast<int>(b.x / kSub), static_cast<int>(b.y / kSub), 0);
    }
}

double slot_angle(const RenderOptions& options, std::uint64_t slot_key) {
    if (!options.rotate) return 0.0;
    std::mt19937_64 rng(options.rotation_seed ^ (slot_key * 0x9e3779b97f4a7c15ULL));
    return 2.0 * kPi * ((rng() >> 11) * 0x1.0p-53);
}

}  // namespace

PanelRaster render_panel(const PanelSymbol& panel, const Configuration& config,
                         const AttributeDomain& domain, const RenderOptions& options) {
    if (options.width <= 0 || options.height <= 0)
        throw std::invalid_argument("raster dimensions must be positive");
    if (panel.components.size() != config.components.size())
        throw std::invalid_argument("panel/config component count mismatch");

    PanelRaster img;
    img.width = options.width;
    img.height = options.height;
    img.pixels.assign(static_cast<std::size_t>(options.width) * options.height, 255);

    std::uint64_t slot_key = 0;
    for (std::size_t c = 0; c < panel.components.size(); ++c) {
        const auto& sym = panel.components[c];
        const auto& layout = config.components[c];
        const Shape shape = domain.type_values.at(sym.type);
        const std::uint8_t fill =
            static_cast<std::uint8_t>(grey_for_color(sym.color, domain.color_levels));
        for (int j = 0; j < layout.slot_count; ++j, ++slot_key) {
            if (((sym.occupied >> j) & 1) == 0) continue;
            const auto& g = layout.slots[j];
            const double radius = 0.5 * g.max_extent * options.width *
                                  size_scale(sym.size, domain.size_levels);
            draw_shape(img, shape, g.center_x * options.width, g.center_y * options.height,
                       radius, slot_angle(options, slot_key), fill);
        }
    }
    return img;
}

namespace {

int sample_index(const LogDist& d, double u) {
    const auto p = d.linear();
    double acc = 0.0;
    int last_positive = -1;
    for (int i = 0; i < static_cast<int>(p.size()); ++i) {
        if (p[i] <= 0) continue;
        last_positive = i;
        acc += p[i];
        if (u < acc) return i;
    }
    if (last_positive < 0) throw DegenerateBeliefError("cannot sample empty distribution");
    return last_positive;
}

double next_uniform(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

}  // namespace

PanelSymbol sample_symbol(const PredictedScene& pred, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    PanelSymbol out;
    for (const auto& comp : pred.belief) {
        ComponentSymbol s;
        s.occupied = sample_index(comp.position, next_uniform(rng)) + 1;
        s.type = sample_index(comp.type, next_uniform(rng));
        s.size = sample_index(comp.size, next_uniform(rng));
        s.color = sample_index(comp.color, next_uniform(rng));
        out.components.push_back(s);
    }
    return out;
}

std::pair<PanelSymbol, PanelRaster> sample_and_render(const PredictedScene& pred,
                                                      const Configuration& config,
                                                      const AttributeDomain& domain,
                                                      std::uint64_t seed,
                                                      const RenderOptions& options) {
    PanelSymbol symbol = sample_symbol(pred, seed);
    PanelRaster raster = render_panel(symbol, config, domain, options);
    return {std::move(symbol), std::move(raster)};
}

std::string to_pgm(const PanelRaster& raster) {
    std::ostringstream out;
    out << "P5\n" << raster.width << " " << raster.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(raster.pixels.data()),
              static_cast<std::streamsize>(raster.pixels.size()));
    return out.str();
}

std::string to_svg(const PanelSymbol& panel, const Configuration& config,
                   const AttributeDomain& domain, const RenderOptions& options) {
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width
        << "\" height=\"" << options.height << "\" viewBox=\"0 0 " << options.width
        << " " << options.height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    std::uint64_t slot_key = 0;
    for (std::size_t c = 0; c < panel.components.size(); ++c) {
        const auto& sym = panel.components[c];
        const auto& layout = config.components[c];
        const int grey = grey_for_color(sym.color, domain.color_levels);
        const int sides = polygon_sides(domain.type_values.at(sym.type));
        for (int j = 0; j < layout.slot_count; ++j, ++slot_key) {
            if (((sym.occupied >> j) & 1) == 0) continue;
            const auto& g = layout.slots[j];
            const double cx = g.center_x * options.width;
            const double cy = g.center_y * options.height;
            const double r = 0.5 * g.max_extent * options.width *
                             size_scale(sym.size, domain.size_levels);
            const std::string fill =
                "rgb(" + std::to_string(grey) + "," + std::to_string(grey) + "," +
                std::to_string(grey) + ")";
            if (sides == 0) {
                out << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"" << r
                    << "\" fill=\"" << fill << "\" stroke=\"black\"/>\n";
            } else {
                const double angle = slot_angle(options, slot_key);
                out << "<polygon points=\"";
                for (int i = 0; i < sides; ++i) {
                    const double a = angle - kPi / 2 - 2.0 * kPi * i / sides;
                    out << cx + r * std::cos(a) << "," << cy + r * std::sin(a)
                        << (i + 1 < sides ? " " : "");
                }
                out << "\" fill=\"" << fill << "\" stroke=\"black\"/>\n";
            }
        }
    }
    out << "</svg>\n";
    return out.str();
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace rpm
