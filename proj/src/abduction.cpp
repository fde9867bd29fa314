#include "rpm/abduction.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "engine_detail.hpp"
#include "rpm/errors.hpp"
#include "rpm/kernels.hpp"

namespace rpm {

using detail::ScaledDist;
using detail::kNegInf;

int RulePosterior::argmax() const {
    int best = 0;
    for (int i = 1; i < static_cast<int>(log_probs.size()); ++i)
        if (log_probs[i] > log_probs[best]) best = i;
    return best;
}

std::vector<double> RulePosterior::linear() const {
    std::vector<double> p(log_probs.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::exp(log_probs[i]);
    return p;
}

double RulePosterior::prob_of(const RuleSpec& r) const {
    for (std::size_t i = 0; i < rules.size(); ++i)
        if (rules[i] == r) return std::exp(log_probs[i]);
    return 0.0;
}

namespace {

AxisSpace space_for(const RuleSpec& r, const ComponentBelief& b) {
    if (r.axis == Axis::NumberPosition) {
        const int n = b.number.size();
        return r.position_mode ? AxisSpace{SpaceKind::Subset, n}
                               : AxisSpace{SpaceKind::Number, n};
    }
    return {SpaceKind::Scalar, b.axis_dist(r.axis, false).size()};
}

}  // namespace

RulePosterior abduce_axis(const std::vector<RuleSpec>& rule_set,
                          std::span<const ComponentBelief> beliefs, Axis axis) {
    if (rule_set.empty()) throw std::invalid_argument("empty rule set");
    if (beliefs.size() != 8) throw std::invalid_argument("expected 8 context beliefs");

    RulePosterior out;
    out.axis = axis;
    out.rules = rule_set;
    out.log_probs.resize(rule_set.size());
    out.row_log_sums.resize(rule_set.size());

    // Scaled views per mode, built lazily (NumberPosition rules mix modes).
    std::vector<ScaledDist> num_view, pos_view;
    const auto views = [&](bool position_mode) -> std::vector<ScaledDist>& {
        auto& v = position_mode ? pos_view : num_view;
        if (v.empty()) {
            v.reserve(8);
            for (const auto& b : beliefs)
                v.emplace_back(b.axis_dist(axis, position_mode));
        }
        return v;
    };

    for (std::size_t ri = 0; ri < rule_set.size(); ++ri) {
        const RuleSpec& r = rule_set[ri];
        if (r.axis != axis) throw std::invalid_argument("rule/axis mismatch");
        const AxisSpace sp = space_for(r, beliefs[0]);
        const auto& v = views(r.axis == Axis::NumberPosition && r.position_mode);

        if (r.kind == RuleKind::DistributeThree) {
            const detail::D3Inputs in{v[0].p, v[1].p, v[2].p, v[3].p, v[4].p, v[5].p,
                                      v[6].p, v[7].p};
            const auto res = detail::d3_reduce(in, nullptr);
            double log_score = res.score > 0 ? std::log(res.score) : kNegInf;
            if (std::isfinite(log_score))
                for (const auto& sd : v) log_score += sd.log_scale;
            out.log_probs[ri] = log_score;
            out.row_log_sums[ri] = {log_score, 0.0, 0.0};
            continue;
        }

        double row_logs[3];
        for (int row = 0; row < 2; ++row) {
            const auto& p1 = v[3 * row].p;
            const auto& p2 = v[3 * row + 1].p;
            const auto& p3 = v[3 * row + 2].p;
            const double s = detail::row_product_sum(r, sp, p1, p2, p3);
            row_logs[row] = s > 0 ? std::log(s) + v[3 * row].log_scale +
                                        v[3 * row + 1].log_scale + v[3 * row + 2].log_scale
                                  : kNegInf;
        }
        const double s3 = detail::pair_product_sum(r, sp, v[6].p, v[7].p);
        row_logs[2] = s3 > 0 ? std::log(s3) + v[6].log_scale + v[7].log_scale : kNegInf;

        out.row_log_sums[ri] = {row_logs[0], row_logs[1], row_logs[2]};
        out.log_probs[ri] = row_logs[0] + row_logs[1] + row_logs[2];
        if (std::isnan(out.log_probs[ri])) out.log_probs[ri] = kNegInf;
    }

    const double z = kern::logsumexp(out.log_probs);
    if (z == kNegInf) {
        // Perception inconsistent with every rule: flagged uniform fallback.
        out.uniform_fallback = true;
        const double u = -std::log(static_cast<double>(rule_set.size()));
        for (auto& lp : out.log_probs) lp = u;
    } else {
        for (auto& lp : out.log_probs) lp -= z;
    }
    return out;
}

std::array<RulePosterior, kAxisCount> abduce_component(
    std::span<const ComponentBelief> beliefs, const ComponentLayout& layout,
    const AttributeDomain& domain) {
    std::array<RulePosterior, kAxisCount> out;
    for (int a = 0; a < kAxisCount; ++a) {
        const Axis axis = static_cast<Axis>(a);
        out[a] = abduce_axis(catalog_for_axis(axis, layout, domain), beliefs, axis);
    }
    return out;
}

RuleSpec select_rule(const RulePosterior& posterior, SelectMode mode, std::uint64_t seed) {
    if (posterior.rules.empty()) throw std::invalid_argument("empty posterior");
    if (mode == SelectMode::Argmax) return posterior.rules[posterior.argmax()];
    const auto p = posterior.linear();
    std::mt19937_64 rng(seed);
    std::discrete_distribution<int> dist(p.begin(), p.end());
    return posterior.rules[dist(rng)];
}

}  // namespace rpm
