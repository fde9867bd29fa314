#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <random>

#include <doctest.h>

#include "oracles.hpp"
#include "rpm/errors.hpp"
#include "rpm/scene.hpp"

using namespace rpm;

namespace {

ObjectBelief make_obj(std::vector<double> p_obj,
                      std::vector<std::vector<double>> types = {}) {
    ObjectBelief obj;
    const int n = static_cast<int>(p_obj.size());
    obj.slots.resize(n);
    for (int j = 0; j < n; ++j) {
        obj.slots[j].p_object = p_obj[j];
        obj.slots[j].type_dist =
            types.empty() ? std::vector<double>{1.0, 0.0} : types[j];
        obj.slots[j].size_dist = {0.5, 0.5};
        obj.slots[j].color_dist = {1.0 / 3, 1.0 / 3, 1.0 / 3};
    }
    return obj;
}

void check_close(const std::vector<double>& got, const std::vector<double>& want,
                 double tol = 1e-9) {
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i)
        CHECK(std::abs(got[i] - want[i]) <= tol);
}

}  // namespace

TEST_SUITE("scene") {

TEST_CASE("position: single slot renormalizes to certainty") {
    const auto d = infer_position(make_obj({0.3}));
    check_close(d.linear(), {1.0});
}

TEST_CASE("position and number: N=2 frozen values") {
    const auto obj = make_obj({0.9, 0.5});
    // masks {slot0}, {slot1}, {slot0,slot1}
    check_close(infer_position(obj).linear(), {0.45 / 0.95, 0.05 / 0.95, 0.45 / 0.95});
    check_close(infer_number(obj).linear(), {0.5 / 0.95, 0.45 / 0.95});
}

TEST_CASE("number: all slots certain") {
    const auto d = infer_number(make_obj({1.0, 1.0, 1.0, 1.0}));
    check_close(d.linear(), {0.0, 0.0, 0.0, 1.0});
}

TEST_CASE("scalar axis: N=2 frozen example") {
    ObjectBelief obj = make_obj({1.0, 0.5}, {{0.8, 0.2}, {0.5, 0.5}});
    check_close(infer_scalar_axis(obj, Axis::Type).linear(), {0.8, 0.2});
}

TEST_CASE("scalar axis: single certain slot is the identity") {
    ObjectBelief obj = make_obj({1.0}, {{0.3, 0.7}});
    check_close(infer_scalar_axis(obj, Axis::Type).linear(), {0.3, 0.7});
}

TEST_CASE("point-mass beliefs round-trip the symbol") {
    const auto domain = AttributeDomain::standard();
    const auto& layout = Configuration::by_name("2x2Grid").components[0];
    const ComponentSymbol sym{0b1010, 3, 4, 7};
    const auto b = point_mass_belief(sym, layout, domain);
    CHECK(b.position.linear_at(0b1010 - 1) == doctest::Approx(1.0));
    CHECK(b.number.linear_at(1) == doctest::Approx(1.0));  // two objects
    CHECK(b.type.linear_at(3) == doctest::Approx(1.0));
    CHECK(b.size.linear_at(4) == doctest::Approx(1.0));
    CHECK(b.color.linear_at(7) == doctest::Approx(1.0));
}

TEST_CASE("brute-force equivalence on random beliefs, N <= 4") {
    const auto domain = AttributeDomain::standard();
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 4);
        const auto obj = oracle::random_object_belief(rng, n, domain);
        const auto got = infer_component(obj);
        const auto want = oracle::scene_brute_force(obj);
        check_close(got.position.linear(), want.position);
        check_close(got.number.linear(), want.number);
        check_close(got.type.linear(), want.type);
        check_close(got.size.linear(), want.size);
        check_close(got.color.linear(), want.color);
    }
}

TEST_CASE("permutation invariance of slot order") {
    const auto domain = AttributeDomain::standard();
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 3);
        auto obj = oracle::random_object_belief(rng, n, domain);
        std::vector<int> perm(n);
        for (int j = 0; j < n; ++j) perm[j] = j;
        std::shuffle(perm.begin(), perm.end(), rng);
        ObjectBelief permuted;
        permuted.slots.resize(n);
        for (int j = 0; j < n; ++j) permuted.slots[j] = obj.slots[perm[j]];

        const auto a = infer_component(obj);
        const auto b = infer_component(permuted);
        check_close(a.number.linear(), b.number.linear());
        check_close(a.type.linear(), b.type.linear());
        check_close(a.size.linear(), b.size.linear());
        check_close(a.color.linear(), b.color.linear());
        // position transforms by the induced subset permutation
        for (int mask = 1; mask < (1 << n); ++mask) {
            int mapped = 0;
            for (int j = 0; j < n; ++j)
                if ((mask >> perm[j]) & 1) mapped |= 1 << j;
            CHECK(a.position.linear_at(mask - 1) ==
                  doctest::Approx(b.position.linear_at(mapped - 1)).epsilon(1e-9));
        }
    }
}

TEST_CASE("normalization and log/linear consistency up to N=9") {
    const auto domain = AttributeDomain::standard();
    std::mt19937_64 rng(13);
    for (int n : {1, 2, 5, 9}) {
        const auto obj = oracle::random_object_belief(rng, n, domain);
        const auto b = infer_component(obj);
        for (const LogDist* d : {&b.position, &b.number, &b.type, &b.size, &b.color}) {
            double s = 0.0;
            for (int i = 0; i < d->size(); ++i) {
                CHECK(d->linear_at(i) == doctest::Approx(std::exp(d->logp[i])));
                s += d->linear_at(i);
            }
            CHECK(s == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("degenerate beliefs throw") {
    CHECK_THROWS_AS(infer_position(make_obj({0.0, 0.0})), DegenerateBeliefError);
    CHECK_THROWS_AS(infer_position(make_obj({1.5})), std::invalid_argument);
    CHECK_THROWS_AS(LogDist::from_linear({0.0, 0.0}), DegenerateBeliefError);
    CHECK_THROWS_AS(LogDist::from_linear({-0.1, 1.1}), std::invalid_argument);
}

}  // TEST_SUITE
