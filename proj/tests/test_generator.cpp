#include <stdexcept>
#include <bit>
#include <map>
#include <set>

#include <doctest.h>

#include "rpm/generator.hpp"
#include "rpm/json_io.hpp"
#include "rpm/rules.hpp"

using namespace rpm;

namespace {

const AttributeDomain kDomain = AttributeDomain::standard();

int axis_value(const ComponentSymbol& c, const RuleSpec& r) {
    switch (r.axis) {
        case Axis::NumberPosition:
            return r.position_mode ? c.occupied
                                   : std::popcount(static_cast<unsigned>(c.occupied));
        case Axis::Type: return c.type;
        case Axis::Size: return c.size;
        case Axis::Color: return c.color;
    }
    throw std::logic_error("bad axis");
}

// Checks the ground-truth rule on one complete row of component symbols.
bool row_ok(const RuleSpec& r, const AxisSpace& sp, const ComponentSymbol& a,
            const ComponentSymbol& b, const ComponentSymbol& c,
            const std::vector<int>* triple) {
    return rule_holds_row_v(r, sp, axis_value(a, r), axis_value(b, r), axis_value(c, r),
                            r.kind == RuleKind::DistributeThree ? triple : nullptr);
}

void check_instance_rows(const PuzzleInstance& inst) {
    const auto& config = inst.config();
    for (std::size_t c = 0; c < config.components.size(); ++c) {
        for (int a = 0; a < kAxisCount; ++a) {
            const RuleSpec& r = inst.rules[c][a];
            const AxisSpace sp = axis_space(r, config.components[c], kDomain);
            std::vector<int> triple;
            if (r.kind == RuleKind::DistributeThree)
                for (int i = 0; i < 3; ++i)
                    triple.push_back(axis_value(inst.context[i].components[c], r));
            const auto* tp = &triple;
            CHECK(row_ok(r, sp, inst.context[0].components[c], inst.context[1].components[c],
                         inst.context[2].components[c], tp));
            CHECK(row_ok(r, sp, inst.context[3].components[c], inst.context[4].components[c],
                         inst.context[5].components[c], tp));
            CHECK(row_ok(r, sp, inst.context[6].components[c], inst.context[7].components[c],
                         inst.candidates[inst.answer_index].components[c], tp));
        }
    }
}

}  // namespace

TEST_SUITE("generator") {

TEST_CASE("deterministic in (config, seed)") {
    for (const char* name : {"Center", "3x3Grid", "O-IG"}) {
        const auto& config = Configuration::by_name(name);
        const auto a = generate(config, 7, kDomain);
        const auto b = generate(config, 7, kDomain);
        CHECK(a.context == b.context);
        CHECK(a.candidates == b.candidates);
        CHECK(a.answer_index == b.answer_index);
        CHECK(a.rules == b.rules);
        const auto c = generate(config, 8, kDomain);
        CHECK(a.context != c.context);
    }
}

TEST_CASE("ground-truth rules hold on all three rows") {
    for (const char* name : {"Center", "2x2Grid", "3x3Grid", "L-R", "U-D", "O-IC", "O-IG"}) {
        const auto& config = Configuration::by_name(name);
        for (std::uint64_t seed = 0; seed < 25; ++seed)
            check_instance_rows(generate(config, seed, kDomain));
    }
}

TEST_CASE("answer index is shuffled: no position above 20% over 1000 seeds") {
    const auto& config = Configuration::by_name("2x2Grid");
    std::map<int, int> counts;
    for (std::uint64_t seed = 0; seed < 1000; ++seed)
        ++counts[generate(config, seed, kDomain).answer_index];
    for (const auto& [idx, n] : counts) {
        CHECK(idx >= 0);
        CHECK(idx <= 7);
        CHECK(n <= 200);
    }
}

TEST_CASE("candidates are pairwise distinct and contain the answer") {
    for (const char* name : {"Center", "2x2Grid", "O-IC"}) {
        const auto& config = Configuration::by_name(name);
        for (std::uint64_t seed = 100; seed < 140; ++seed) {
            const auto inst = generate(config, seed, kDomain);
            for (int i = 0; i < 8; ++i)
                for (int j = i + 1; j < 8; ++j)
                    CHECK(inst.candidates[i] != inst.candidates[j]);
        }
    }
}

TEST_CASE("bisection structure: per axis, 4 or 8 candidates share the answer value") {
    const auto& config = Configuration::by_name("2x2Grid");
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto inst = generate(config, seed, kDomain);
        const auto& answer = inst.candidates[inst.answer_index];
        int perturbed_pairs = 0;
        for (std::size_t c = 0; c < answer.components.size(); ++c) {
            for (int a = 0; a < kAxisCount; ++a) {
                const auto pick = [&](const ComponentSymbol& s) {
                    switch (static_cast<Axis>(a)) {
                        case Axis::NumberPosition: return s.occupied;
                        case Axis::Type: return s.type;
                        case Axis::Size: return s.size;
                        default: return s.color;
                    }
                };
                int share = 0;
                for (const auto& cand : inst.candidates)
                    if (pick(cand.components[c]) == pick(answer.components[c])) ++share;
                CHECK((share == 4 || share == 8));
                if (share == 4) ++perturbed_pairs;
            }
        }
        CHECK(perturbed_pairs == 3);  // three bisection levels
    }
}

TEST_CASE("NumberPosition distractor perturbations change the cardinality") {
    const auto& config = Configuration::by_name("3x3Grid");
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto inst = generate(config, seed, kDomain);
        const auto& answer = inst.candidates[inst.answer_index];
        for (const auto& cand : inst.candidates)
            for (std::size_t c = 0; c < answer.components.size(); ++c)
                if (cand.components[c].occupied != answer.components[c].occupied)
                    CHECK(std::popcount(static_cast<unsigned>(cand.components[c].occupied)) !=
                          std::popcount(static_cast<unsigned>(answer.components[c].occupied)));
    }
}

TEST_CASE("context-blind majority vote stays near chance") {
    const auto& config = Configuration::by_name("2x2Grid");
    int hits = 0;
    const int total = 1000;
    for (std::uint64_t seed = 0; seed < total; ++seed) {
        const auto inst = generate(config, seed, kDomain);
        // score each candidate by how many attribute values it shares with the
        // other candidates; pick the most "typical" one
        int best = 0;
        long best_score = -1;
        for (int i = 0; i < 8; ++i) {
            long score = 0;
            for (int j = 0; j < 8; ++j) {
                if (i == j) continue;
                for (std::size_t c = 0; c < inst.candidates[i].components.size(); ++c) {
                    const auto& ci = inst.candidates[i].components[c];
                    const auto& cj = inst.candidates[j].components[c];
                    score += (ci.occupied == cj.occupied) + (ci.type == cj.type) +
                             (ci.size == cj.size) + (ci.color == cj.color);
                }
            }
            if (score > best_score) {
                best_score = score;
                best = i;
            }
        }
        if (best == inst.answer_index) ++hits;
    }
    CHECK(hits <= total / 5);  // <= 20 %
}

TEST_CASE("serialize -> deserialize -> regenerate is bit-identical") {
    const auto& config = Configuration::by_name("U-D");
    const auto inst = generate(config, 42, kDomain);
    const std::string text = instance_to_json(inst);
    const auto parsed = instance_from_json(text);
    CHECK(parsed.context == inst.context);
    CHECK(parsed.candidates == inst.candidates);
    CHECK(parsed.rules == inst.rules);
    CHECK(parsed.answer_index == inst.answer_index);
    CHECK(parsed.seed == inst.seed);
    const auto regen = generate(Configuration::by_name(parsed.config_name), parsed.seed,
                                kDomain);
    CHECK(instance_to_json(regen) == text);
}

TEST_CASE("every configuration generates across many seeds") {
    for (const auto& config : Configuration::all()) {
        std::set<int> answer_indices;
        for (std::uint64_t seed = 0; seed < 60; ++seed) {
            const auto inst = generate(config, seed, kDomain);
            CHECK(inst.config_name == config.name);
            CHECK(inst.rules.size() == config.components.size());
            answer_indices.insert(inst.answer_index);
            for (const auto& p : inst.context)
                for (std::size_t c = 0; c < p.components.size(); ++c) {
                    CHECK(p.components[c].occupied >= 1);
                    CHECK(p.components[c].occupied <
                          (1 << config.components[c].slot_count));
                }
        }
        CHECK(answer_indices.size() >= 4);  // shuffle actually spreads
    }
}

}  // TEST_SUITE
