#include <cmath>
#include <stdexcept>
#include <map>
#include <random>

#include <doctest.h>

#include "oracles.hpp"
#include "rpm/abduction.hpp"
#include "rpm/generator.hpp"
#include "rpm/kernels.hpp"
#include "rpm/scene.hpp"

using namespace rpm;

namespace {

const AttributeDomain kDomain = AttributeDomain::standard();

// Eight ComponentBeliefs whose `axis` distribution (in `position_mode`) is the
// given linear vector; the other fields are 1-point placeholders.
std::vector<ComponentBelief> beliefs_for(Axis axis, bool position_mode,
                                         const std::vector<std::vector<double>>& dists) {
    std::vector<ComponentBelief> out(8);
    for (int i = 0; i < 8; ++i) {
        ComponentBelief& b = out[i];
        b.position = b.number = b.type = b.size = b.color = LogDist::point_mass(0, 1);
        b.axis_dist(axis, position_mode) = LogDist::from_linear(dists[i]);
        if (axis == Axis::NumberPosition) {
            // keep number/position sizes consistent so space derivation works
            const int m = static_cast<int>(dists[i].size());
            if (position_mode) {
                int n = 0;
                while ((1 << n) - 1 < m) ++n;
                b.number = LogDist::point_mass(0, n);
            } else {
                b.position = LogDist::point_mass(0, (1 << m) - 1);
            }
        }
    }
    return out;
}

// Compares the decomposed posterior against the joint-enumeration oracle.
void check_against_oracle(const std::vector<RuleSpec>& rule_set, Axis axis,
                          bool position_mode, const AxisSpace& sp,
                          const std::vector<std::vector<double>>& dists) {
    const auto beliefs = beliefs_for(axis, position_mode, dists);
    const auto post = abduce_axis(rule_set, beliefs, axis);
    std::vector<double> want_log(rule_set.size());
    for (std::size_t i = 0; i < rule_set.size(); ++i) {
        const double s = oracle::abduction_score(rule_set[i], sp, dists);
        want_log[i] = s > 0 ? std::log(s) : oracle::kNegInf;
    }
    const double z = kern::logsumexp(want_log);
    REQUIRE(std::isfinite(z));
    for (std::size_t i = 0; i < rule_set.size(); ++i) {
        const double want = want_log[i] - z;
        if (want == oracle::kNegInf)
            CHECK(post.log_probs[i] == oracle::kNegInf);
        else
            CHECK(std::abs(post.log_probs[i] - want) <= 1e-9);
    }
}

}  // namespace

TEST_SUITE("abduction") {

TEST_CASE("row-major numbers [1,2,3,1,3,4,1,2] favor Arithmetic+ with score 1") {
    const auto& layout = Configuration::by_name("2x2Grid").components[0];
    const int counts[8] = {1, 2, 3, 1, 3, 4, 1, 2};
    std::vector<std::vector<double>> dists;
    for (int c : counts) {
        std::vector<double> d(4, 0.0);
        d[c - 1] = 1.0;
        dists.push_back(d);
    }
    // restrict to number-mode rules; point-mass placeholder positions would be
    // meaningless evidence for the position-mode half of the catalog
    std::vector<RuleSpec> number_rules;
    for (const auto& r : catalog_for_axis(Axis::NumberPosition, layout, kDomain))
        if (!r.position_mode) number_rules.push_back(r);

    const auto beliefs = beliefs_for(Axis::NumberPosition, false, dists);
    const auto post = abduce_axis(number_rules, beliefs, Axis::NumberPosition);

    const RuleSpec arith_plus{Axis::NumberPosition, RuleKind::Arithmetic, +1, false};
    CHECK(post.rules[post.argmax()] == arith_plus);
    CHECK(post.prob_of(arith_plus) == doctest::Approx(1.0).epsilon(1e-9));
    // unnormalized score 1: all three row partial sums are exactly 1
    for (std::size_t i = 0; i < post.rules.size(); ++i)
        if (post.rules[i] == arith_plus)
            for (double row_log : post.row_log_sums[i]) CHECK(row_log == 0.0);
}

TEST_CASE("joint-enumeration equivalence: toy scalar domain") {
    AttributeDomain toy;
    toy.type_values = {Shape::Triangle, Shape::Square, Shape::Circle};
    const auto& layout = Configuration::by_name("Center").components[0];
    const auto rule_set = catalog_for_axis(Axis::Type, layout, toy);
    const AxisSpace sp{SpaceKind::Scalar, 3};
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::vector<double>> dists;
        for (int i = 0; i < 8; ++i)
            dists.push_back(oracle::random_dist(rng, 3, trial % 2 == 1));
        check_against_oracle(rule_set, Axis::Type, false, sp, dists);
    }
}

TEST_CASE("joint-enumeration equivalence: Number axis of 2x2Grid (4^8 states)") {
    const auto& layout = Configuration::by_name("2x2Grid").components[0];
    std::vector<RuleSpec> number_rules;
    for (const auto& r : catalog_for_axis(Axis::NumberPosition, layout, kDomain))
        if (!r.position_mode) number_rules.push_back(r);
    const AxisSpace sp{SpaceKind::Number, 4};
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 6; ++trial) {
        std::vector<std::vector<double>> dists;
        for (int i = 0; i < 8; ++i)
            dists.push_back(oracle::random_dist(rng, 4, trial % 2 == 1));
        check_against_oracle(number_rules, Axis::NumberPosition, false, sp, dists);
    }
}

TEST_CASE("joint-enumeration equivalence: 2-slot position axis") {
    ComponentLayout layout;
    layout.slot_count = 2;
    layout.slots.resize(2);
    std::vector<RuleSpec> pos_rules;
    for (const auto& r : catalog_for_axis(Axis::NumberPosition, layout, kDomain))
        if (r.position_mode) pos_rules.push_back(r);
    REQUIRE(pos_rules.size() >= 4);
    const AxisSpace sp{SpaceKind::Subset, 2};
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<std::vector<double>> dists;
        for (int i = 0; i < 8; ++i)
            dists.push_back(oracle::random_dist(rng, 3, trial % 2 == 1));
        check_against_oracle(pos_rules, Axis::NumberPosition, true, sp, dists);
    }
}

TEST_CASE("epsilon-0 beliefs from generated instances give posterior 1") {
    for (const char* name : {"Center", "2x2Grid", "L-R"}) {
        const auto& config = Configuration::by_name(name);
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const auto inst = generate(config, seed, kDomain);
            for (std::size_t c = 0; c < config.components.size(); ++c) {
                std::vector<ComponentBelief> beliefs;
                for (const auto& panel : inst.context)
                    beliefs.push_back(point_mass_belief(panel.components[c],
                                                        config.components[c], kDomain));
                const auto posts = abduce_component(beliefs, config.components[c], kDomain);
                for (int a = 0; a < kAxisCount; ++a) {
                    CHECK(posts[a].rules[posts[a].argmax()] == inst.rules[c][a]);
                    CHECK(posts[a].prob_of(inst.rules[c][a]) ==
                          doctest::Approx(1.0).epsilon(1e-9));
                }
            }
        }
    }
}

TEST_CASE("all-zero scores fall back to a flagged uniform posterior") {
    // Constant-only rule set against a non-constant point-mass row
    std::vector<std::vector<double>> dists(8, std::vector<double>{1.0, 0.0, 0.0});
    dists[1] = {0.0, 1.0, 0.0};
    const std::vector<RuleSpec> rule_set{{Axis::Type, RuleKind::Constant, 0, false}};
    const auto beliefs = beliefs_for(Axis::Type, false, dists);
    const auto post = abduce_axis(rule_set, beliefs, Axis::Type);
    CHECK(post.uniform_fallback);
    CHECK(post.log_probs[0] == doctest::Approx(0.0));
}

TEST_CASE("select_rule: argmax determinism and tie break") {
    RulePosterior p;
    p.axis = Axis::Size;
    p.rules = {{Axis::Size, RuleKind::Constant, 0, false},
               {Axis::Size, RuleKind::Progression, 1, false},
               {Axis::Size, RuleKind::Progression, -1, false}};
    p.log_probs = {std::log(0.2), std::log(0.4), std::log(0.4)};
    CHECK(select_rule(p, SelectMode::Argmax) == p.rules[1]);  // tie -> lowest index
    p.log_probs = {std::log(0.7), std::log(0.2), std::log(0.1)};
    CHECK(select_rule(p, SelectMode::Argmax) == p.rules[0]);
}

TEST_CASE("select_rule: sampling frequencies match the posterior") {
    RulePosterior p;
    p.axis = Axis::Size;
    for (int d : {-2, -1, 1, 2})
        p.rules.push_back({Axis::Size, RuleKind::Progression, d, false});
    p.log_probs.assign(4, std::log(0.25));
    std::map<int, int> counts;
    for (std::uint64_t s = 0; s < 10000; ++s) {
        const auto r = select_rule(p, SelectMode::Sample, s);
        for (int i = 0; i < 4; ++i)
            if (p.rules[i] == r) ++counts[i];
    }
    for (int i = 0; i < 4; ++i)
        CHECK(std::abs(counts[i] / 10000.0 - 0.25) <= 0.02);

    // one-hot posterior samples that rule with probability 1
    p.log_probs = {0.0, oracle::kNegInf, oracle::kNegInf, oracle::kNegInf};
    for (std::uint64_t s = 0; s < 50; ++s)
        CHECK(select_rule(p, SelectMode::Sample, s) == p.rules[0]);
}

TEST_CASE("input contracts") {
    const std::vector<RuleSpec> empty_set;
    std::vector<ComponentBelief> beliefs(8);
    for (auto& b : beliefs)
        b.position = b.number = b.type = b.size = b.color = LogDist::point_mass(0, 1);
    CHECK_THROWS_AS(abduce_axis(empty_set, beliefs, Axis::Type), std::invalid_argument);
    const std::vector<RuleSpec> rules{{Axis::Type, RuleKind::Constant, 0, false}};
    std::vector<ComponentBelief> seven(beliefs.begin(), beliefs.begin() + 7);
    CHECK_THROWS_AS(abduce_axis(rules, seven, Axis::Type), std::invalid_argument);
    CHECK_THROWS_AS(abduce_axis(rules, beliefs, Axis::Size), std::invalid_argument);
}

}  // TEST_SUITE
