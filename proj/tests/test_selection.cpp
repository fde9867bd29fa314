#include <cmath>
#include <stdexcept>
#include <random>

#include <doctest.h>

#include "oracles.hpp"
#include "rpm/selection.hpp"

using namespace rpm;

namespace {

// One-component predicted scene with the given axis distributions.
PredictedScene make_pred(const ComponentBelief& b) {
    PredictedScene p;
    p.belief = {b};
    p.axis_info.resize(1);
    for (int a = 0; a < kAxisCount; ++a)
        p.axis_info[0][a] = {RuleSpec{static_cast<Axis>(a), RuleKind::Constant, 0, false},
                             1.0};
    return p;
}

ComponentBelief belief_point(int pos, int num, int type, int size, int color) {
    ComponentBelief b;
    b.position = LogDist::point_mass(pos, 3);
    b.number = LogDist::point_mass(num, 2);
    b.type = LogDist::point_mass(type, 5);
    b.size = LogDist::point_mass(size, 6);
    b.color = LogDist::point_mass(color, 10);
    return b;
}

}  // namespace

TEST_SUITE("selection") {

TEST_CASE("jsd reference values") {
    const std::vector<double> half{0.5, 0.5}, p10{1.0, 0.0}, p01{0.0, 1.0};
    CHECK(jsd(half, half) == doctest::Approx(0.0));
    CHECK(jsd(p10, p01) == doctest::Approx(std::log(2.0)).epsilon(1e-9));
    CHECK(jsd(half, p10) == doctest::Approx(0.215762).epsilon(1e-5));
    CHECK(jsd(LogDist::from_linear(half), LogDist::point_mass(0, 2)) ==
          doctest::Approx(0.215762).epsilon(1e-5));
}

TEST_CASE("jsd symmetry and bounds, 10^4 random pairs") {
    std::mt19937_64 rng(3);
    const double ln2 = std::log(2.0);
    for (int trial = 0; trial < 10000; ++trial) {
        const int m = 2 + static_cast<int>(rng() % 8);
        const auto p = oracle::random_dist(rng, m, trial % 3 == 0);
        const auto q = oracle::random_dist(rng, m, trial % 3 == 0);
        const double d = jsd(p, q);
        CHECK(d >= 0.0);
        CHECK(d <= ln2 + 1e-12);
        CHECK(jsd(q, p) == d);  // exactly as computed
    }
}

TEST_CASE("jsd rejects mismatched outcome spaces") {
    const std::vector<double> p{0.5, 0.5}, q{1.0, 0.0, 0.0};
    CHECK_THROWS_AS(jsd(p, q), std::invalid_argument);
}

TEST_CASE("score_candidates: exact match wins with zero divergence") {
    const auto pred = make_pred(belief_point(1, 1, 2, 3, 4));
    std::vector<PanelBelief> cands;
    for (int i = 0; i < 8; ++i)
        cands.push_back({belief_point(1, 1, (2 + (i != 3)) % 5, 3, 4)});
    const auto rep = score_candidates(pred, cands);
    CHECK(rep.chosen == 3);
    CHECK(rep.divergences[3] == doctest::Approx(0.0));
    CHECK(rep.divergences[0] > 0.0);
    double z = 0.0;
    for (double p : rep.answer_probs) z += p;
    CHECK(z == doctest::Approx(1.0).epsilon(1e-9));
    // argmin divergence == argmax probability
    int best = 0;
    for (int i = 1; i < 8; ++i)
        if (rep.answer_probs[i] > rep.answer_probs[best]) best = i;
    CHECK(best == rep.chosen);
}

TEST_CASE("equal divergences give the uniform answer distribution") {
    const auto pred = make_pred(belief_point(0, 0, 0, 0, 0));
    std::vector<PanelBelief> cands(8, PanelBelief{belief_point(2, 1, 4, 5, 9)});
    const auto rep = score_candidates(pred, cands);
    for (double p : rep.answer_probs) CHECK(p == doctest::Approx(0.125).epsilon(1e-9));
    CHECK(rep.chosen == 0);  // tie -> lowest index
}

TEST_CASE("softmax shift invariance to 1e-9") {
    const auto pred = make_pred(belief_point(1, 0, 2, 3, 4));
    std::vector<PanelBelief> cands;
    for (int i = 0; i < 8; ++i)
        cands.push_back({belief_point(i % 3, i % 2, i % 5, i % 6, i % 10)});
    const auto rep = score_candidates(pred, cands);
    for (double shift : {0.0, 5.0, -3.0, 100.0}) {
        // recompute the softmax with shifted divergences
        double z = 0.0;
        std::vector<double> probs(8);
        double m = -1e300;
        for (double d : rep.divergences) m = std::max(m, -(d + shift));
        for (int i = 0; i < 8; ++i) {
            probs[i] = std::exp(-(rep.divergences[i] + shift) - m);
            z += probs[i];
        }
        for (int i = 0; i < 8; ++i)
            CHECK(std::abs(probs[i] / z - rep.answer_probs[i]) <= 1e-9);
    }
}

TEST_CASE("breakdown sums to the divergence") {
    const auto pred = make_pred(belief_point(1, 0, 2, 3, 4));
    std::vector<PanelBelief> cands;
    for (int i = 0; i < 8; ++i)
        cands.push_back({belief_point(i % 3, i % 2, i % 5, i % 6, i % 10)});
    const auto rep = score_candidates(pred, cands);
    for (int i = 0; i < 8; ++i) {
        double s = 0.0;
        for (const auto& comp : rep.breakdown[i])
            for (double term : comp) s += term;
        CHECK(s == doctest::Approx(rep.divergences[i]).epsilon(1e-9));
    }
}

TEST_CASE("executed-mode-only flag drops the coupled mode term") {
    // position-mode rule: number term excluded under the flag
    auto pred = make_pred(belief_point(1, 1, 2, 3, 4));
    pred.axis_info[0][0].rule = {Axis::NumberPosition, RuleKind::Constant, 0, true};
    std::vector<PanelBelief> cands;
    for (int i = 0; i < 8; ++i) {
        auto b = belief_point(1, 1, 2, 3, 4);
        b.number = LogDist::point_mass(i % 2, 2);  // differ only in number
        cands.push_back({b});
    }
    SelectionOptions opts;
    opts.executed_mode_only = true;
    const auto rep = score_candidates(pred, cands, opts);
    for (double d : rep.divergences) CHECK(d == doctest::Approx(0.0));
    const auto rep_both = score_candidates(pred, cands);
    CHECK(rep_both.divergences[0] > 0.0);  // candidate 0 differs in number
}

TEST_CASE("answer_cross_entropy") {
    AnswerReport rep;
    rep.answer_probs.assign(8, 0.125);
    CHECK(answer_cross_entropy(rep, 5) == doctest::Approx(std::log(8.0)).epsilon(1e-9));
    rep.answer_probs = {1, 0, 0, 0, 0, 0, 0, 0};
    CHECK(answer_cross_entropy(rep, 0) == doctest::Approx(0.0));
    rep.answer_probs = {0.5, 0.5, 0, 0, 0, 0, 0, 0};
    CHECK(answer_cross_entropy(rep, 1) == doctest::Approx(-std::log(0.5)).epsilon(1e-9));
}

}  // TEST_SUITE
