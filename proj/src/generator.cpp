#include "rpm/generator.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <random>

#include "rpm/errors.hpp"

namespace rpm {

namespace {

constexpr int kAxisAttempts = 100;

using Rng = std::mt19937_64;

int rand_int(Rng& rng, int lo, int hi) {  // inclusive
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Random subset with exactly k of n bits set.
int random_mask(Rng& rng, int n, int k) {
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::shuffle(idx.begin(), idx.end(), rng);
    int mask = 0;
    for (int i = 0; i < k; ++i) mask |= 1 << idx[i];
    return mask;
}

std::vector<std::pair<int, int>> precondition_pairs(const RuleSpec& r, const AxisSpace& sp) {
    std::vector<std::pair<int, int>> out;
    const int m = sp.outcome_count();
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const int v1 = sp.value_at(i), v2 = sp.value_at(j);
            if (rule_precondition_v(r, sp, v1, v2)) out.emplace_back(v1, v2);
        }
    return out;
}

// One realized 3x3 grid of semantic axis values (context rows + answer).
using AxisGrid = std::array<int, 9>;

AxisGrid realize_axis_values(Rng& rng, const RuleSpec& rule, const AxisSpace& sp) {
    AxisGrid g{};
    if (rule.kind == RuleKind::DistributeThree) {
        const int m = sp.outcome_count();
        std::vector<int> outcomes(m);
        for (int i = 0; i < m; ++i) outcomes[i] = sp.value_at(i);
        std::shuffle(outcomes.begin(), outcomes.end(), rng);
        std::vector<int> triple(outcomes.begin(), outcomes.begin() + 3);
        for (int row = 0; row < 3; ++row) {
            std::vector<int> perm = triple;
            std::shuffle(perm.begin(), perm.end(), rng);
            for (int c = 0; c < 3; ++c) g[3 * row + c] = perm[c];
        }
        return g;
    }
    const auto pairs = precondition_pairs(rule, sp);
    if (pairs.empty()) throw GenerationError("rule has empty precondition set: " + rule_name(rule));
    for (int row = 0; row < 3; ++row) {
        const auto [v1, v2] = pairs[rand_int(rng, 0, static_cast<int>(pairs.size()) - 1)];
        g[3 * row] = v1;
        g[3 * row + 1] = v2;
        g[3 * row + 2] = rule_forward_v(rule, sp, v1, v2);
    }
    return g;
}

// Support at zero noise: does `rule` admit the observed context (rows 1 and 2
// fully, the third-row pair through its precondition)? This mirrors what the
// abduction posterior sees from point-mass beliefs.
bool rule_supports_context(const RuleSpec& rule, const AxisSpace& sp, const AxisGrid& g) {
    if (rule.kind == RuleKind::DistributeThree) {
        if (sp.outcome_count() < 3) return false;
        std::vector<int> t{g[0], g[1], g[2]};
        std::sort(t.begin(), t.end());
        if (t[0] == t[1] || t[1] == t[2]) return false;
        std::vector<int> u{g[3], g[4], g[5]};
        std::sort(u.begin(), u.end());
        if (t != u) return false;
        return g[6] != g[7] && std::ranges::count(t, g[6]) == 1 &&
               std::ranges::count(t, g[7]) == 1;
    }
    for (int row = 0; row < 2; ++row)
        if (!rule_holds_row_v(rule, sp, g[3 * row], g[3 * row + 1], g[3 * row + 2]))
            return false;
    return rule_precondition_v(rule, sp, g[6], g[7]);
}

struct NumberPositionGrid {
    RuleSpec rule;
    std::array<int, 9> masks{};
    std::array<int, 9> counts{};
};

// Uniqueness over the union catalog: position-mode rules read the masks,
// number-mode rules read the counts.
bool numpos_unambiguous(const std::vector<RuleSpec>& catalog, const ComponentLayout& layout,
                        const AttributeDomain& domain, const NumberPositionGrid& g) {
    AxisGrid count_grid{}, mask_grid{};
    for (int i = 0; i < 9; ++i) {
        count_grid[i] = g.counts[i];
        mask_grid[i] = g.masks[i];
    }
    for (const auto& r : catalog) {
        if (r == g.rule) continue;
        const auto sp = axis_space(r, layout, domain);
        const auto& grid = r.position_mode ? mask_grid : count_grid;
        if (rule_supports_context(r, sp, grid)) return false;
    }
    return true;
}

NumberPositionGrid realize_numberposition(Rng& rng, const std::vector<RuleSpec>& catalog,
                                          const ComponentLayout& layout,
                                          const AttributeDomain& domain) {
    const int n = layout.slot_count;
    for (int attempt = 0; attempt < kAxisAttempts; ++attempt) {
        NumberPositionGrid g;
        g.rule = catalog[rand_int(rng, 0, static_cast<int>(catalog.size()) - 1)];
        const auto sp = axis_space(g.rule, layout, domain);
        const AxisGrid values = realize_axis_values(rng, g.rule, sp);
        if (g.rule.position_mode) {
            for (int i = 0; i < 9; ++i) {
                g.masks[i] = values[i];
                g.counts[i] = std::popcount(static_cast<unsigned>(values[i]));
            }
        } else {
            for (int i = 0; i < 9; ++i) {
                g.counts[i] = values[i];
                g.masks[i] = random_mask(rng, n, values[i]);
            }
        }
        if (numpos_unambiguous(catalog, layout, domain, g)) return g;
    }
    throw GenerationError("NumberPosition rejection budget exhausted");
}

struct ScalarGrid {
    RuleSpec rule;
    AxisGrid values{};
};

ScalarGrid realize_scalar_axis(Rng& rng, Axis axis, const std::vector<RuleSpec>& catalog,
                               const ComponentLayout& layout, const AttributeDomain& domain) {
    for (int attempt = 0; attempt < kAxisAttempts; ++attempt) {
        ScalarGrid g;
        g.rule = catalog[rand_int(rng, 0, static_cast<int>(catalog.size()) - 1)];
        const auto sp = axis_space(g.rule, layout, domain);
        g.values = realize_axis_values(rng, g.rule, sp);
        bool ambiguous = false;
        for (const auto& r : catalog) {
            if (r == g.rule) continue;
            if (rule_supports_context(r, sp, g.values)) {
                ambiguous = true;
                break;
            }
        }
        if (!ambiguous) return g;
    }
    throw GenerationError(std::string("rejection budget exhausted on axis ") +
                          axis_name(axis));
}

}  // namespace

std::array<PanelSymbol, 8> make_distractors(const PanelSymbol& answer,
                                            const Configuration& config,
                                            const AttributeDomain& domain,
                                            std::uint64_t seed) {
    Rng rng(seed);
    struct Perturbation {
        int component;
        Axis axis;
        ComponentSymbol value;  // replacement fields for the perturbed axis
    };

    std::vector<std::pair<int, Axis>> available;
    for (std::size_t c = 0; c < config.components.size(); ++c) {
        if (config.components[c].slot_count >= 2)
            available.emplace_back(static_cast<int>(c), Axis::NumberPosition);
        available.emplace_back(static_cast<int>(c), Axis::Type);
        available.emplace_back(static_cast<int>(c), Axis::Size);
        available.emplace_back(static_cast<int>(c), Axis::Color);
    }
    std::shuffle(available.begin(), available.end(), rng);

    const auto fresh_scalar = [&](int current, int k) {
        int v = rand_int(rng, 0, k - 2);
        return v >= current ? v + 1 : v;
    };

    std::array<Perturbation, 3> levels;
    for (int l = 0; l < 3; ++l) {
        const auto [c, axis] = available[l];
        Perturbation p{c, axis, answer.components[c]};
        const int n = config.components[c].slot_count;
        switch (axis) {
            case Axis::NumberPosition: {
                const int k = std::popcount(static_cast<unsigned>(p.value.occupied));
                const int fresh_count = fresh_scalar(k - 1, n) + 1;
                p.value.occupied = random_mask(rng, n, fresh_count);
                break;
            }
            case Axis::Type:
                p.value.type = fresh_scalar(p.value.type, domain.type_count());
                break;
            case Axis::Size:
                p.value.size = fresh_scalar(p.value.size, domain.size_levels);
                break;
            case Axis::Color:
                p.value.color = fresh_scalar(p.value.color, domain.color_levels);
                break;
        }
        levels[l] = p;
    }

    std::array<PanelSymbol, 8> leaves;
    for (int i = 0; i < 8; ++i) {
        PanelSymbol s = answer;
        for (int l = 0; l < 3; ++l) {
            if (((i >> l) & 1) == 0) continue;
            const auto& p = levels[l];
            auto& comp = s.components[p.component];
            switch (p.axis) {
                case Axis::NumberPosition: comp.occupied = p.value.occupied; break;
                case Axis::Type: comp.type = p.value.type; break;
                case Axis::Size: comp.size = p.value.size; break;
                case Axis::Color: comp.color = p.value.color; break;
            }
        }
        leaves[i] = std::move(s);
    }
    return leaves;
}

PuzzleInstance generate(const Configuration& config, std::uint64_t seed,
                        const AttributeDomain& domain) {
    domain.validate();
    Rng rng(seed);

    PuzzleInstance inst;
    inst.config_name = config.name;
    inst.seed = seed;

    const int ncomp = static_cast<int>(config.components.size());
    std::vector<NumberPositionGrid> np(ncomp);
    std::vector<ScalarGrid> types(ncomp), sizes(ncomp), colors(ncomp);

    for (int c = 0; c < ncomp; ++c) {
        const auto& layout = config.components[c];
        np[c] = realize_numberposition(
            rng, catalog_for_axis(Axis::NumberPosition, layout, domain), layout, domain);
        types[c] = realize_scalar_axis(rng, Axis::Type,
                                       catalog_for_axis(Axis::Type, layout, domain),
                                       layout, domain);
        sizes[c] = realize_scalar_axis(rng, Axis::Size,
                                       catalog_for_axis(Axis::Size, layout, domain),
                                       layout, domain);
        colors[c] = realize_scalar_axis(rng, Axis::Color,
                                        catalog_for_axis(Axis::Color, layout, domain),
                                        layout, domain);
        inst.rules.push_back({np[c].rule, types[c].rule, sizes[c].rule, colors[c].rule});
    }

    std::array<PanelSymbol, 9> panels;
    for (int i = 0; i < 9; ++i) {
        panels[i].components.resize(ncomp);
        for (int c = 0; c < ncomp; ++c) {
            panels[i].components[c] = {np[c].masks[i], types[c].values[i],
                                       sizes[c].values[i], colors[c].values[i]};
        }
    }
    for (int i = 0; i < 8; ++i) inst.context[i] = panels[i];

    const auto leaves =
        make_distractors(panels[8], config, domain, rng());
    std::array<int, 8> order;
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    for (int i = 0; i < 8; ++i) {
        inst.candidates[i] = leaves[order[i]];
        if (order[i] == 0) inst.answer_index = i;
    }
    return inst;
}

}  // namespace rpm
