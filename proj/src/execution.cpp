#include "rpm/execution.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "engine_detail.hpp"
#include "rpm/errors.hpp"
#include "rpm/kernels.hpp"

namespace rpm {

using detail::ScaledDist;
using detail::kNegInf;

LogDist execute_axis(const RuleSpec& rule, const AxisSpace& space, const LogDist& b7,
                     const LogDist& b8, const TripleContext* triple,
                     double* precondition_mass) {
    const int m = space.outcome_count();
    if (b7.size() != m || b8.size() != m)
        throw std::invalid_argument("belief size does not match axis space");

    const ScaledDist s7(b7), s8(b8);
    std::vector<double> out(m, 0.0);
    double mass = 0.0;

    if (rule.kind == RuleKind::DistributeThree) {
        if (triple == nullptr)
            throw std::invalid_argument("DistributeThree execution requires triple context");
        std::vector<ScaledDist> rows;
        rows.reserve(6);
        for (const LogDist* d : triple->row_panels) {
            if (d == nullptr || d->size() != m)
                throw std::invalid_argument("bad triple context");
            rows.emplace_back(*d);
        }
        const detail::D3Inputs in{rows[0].p, rows[1].p, rows[2].p,
                                  rows[3].p, rows[4].p, rows[5].p, s7.p, s8.p};
        const auto res = detail::d3_reduce(in, &out);
        if (res.pair_weight > 0)
            mass = res.score / res.pair_weight *
                   std::exp(s7.log_scale + s8.log_scale);
    } else {
        detail::for_each_pre_pair(rule, space, [&](int i1, int i2, int i3) {
            out[i3] += s7.p[i1] * s8.p[i2];
        });
        mass = kern::sum(out.data(), out.size()) * std::exp(s7.log_scale + s8.log_scale);
    }

    const double total = kern::sum(out.data(), out.size());
    if (!(total > 0.0))
        throw ExecutionInfeasibleError(rule_name(rule),
                                       "zero precondition mass executing " + rule_name(rule));
    if (precondition_mass != nullptr) *precondition_mass = mass;

    LogDist result;
    result.logp.resize(m);
    const double log_total = std::log(total);
    for (int i = 0; i < m; ++i)
        result.logp[i] = out[i] > 0 ? std::log(out[i]) - log_total : kNegInf;
    return result;
}

namespace {

LogDist cardinality_pushforward(const LogDist& position, int n) {
    std::vector<std::vector<double>> groups(n);
    for (int mask = 1; mask <= (1 << n) - 1; ++mask)
        groups[std::popcount(static_cast<unsigned>(mask)) - 1]
            .push_back(position.logp[mask - 1]);
    LogDist out;
    out.logp.resize(n);
    for (int k = 0; k < n; ++k) out.logp[k] = kern::logsumexp(groups[k]);
    out.normalize();
    return out;
}

LogDist uniform_over_cardinalities(const LogDist& number, int n) {
    // log C(n, k) per cardinality
    std::vector<double> logc(n + 1, 0.0);
    for (int k = 1; k <= n; ++k)
        logc[k] = logc[k - 1] + std::log(static_cast<double>(n - k + 1) / k);
    LogDist out;
    out.logp.resize((1 << n) - 1);
    for (int mask = 1; mask <= (1 << n) - 1; ++mask) {
        const int k = std::popcount(static_cast<unsigned>(mask));
        out.logp[mask - 1] = number.logp[k - 1] - logc[k];
    }
    return out;
}

TripleContext make_triple_context(std::span<const PanelBelief> beliefs, int component,
                                  Axis axis, bool position_mode) {
    TripleContext ctx;
    for (int i = 0; i < 6; ++i)
        ctx.row_panels[i] = &beliefs[i][component].axis_dist(axis, position_mode);
    return ctx;
}

}  // namespace

PredictedScene execute_scene(const std::vector<ComponentRules>& rules,
                             std::span<const PanelBelief> beliefs,
                             const Configuration& config, const AttributeDomain& domain) {
    if (beliefs.size() != 8) throw std::invalid_argument("expected 8 context beliefs");
    const int ncomp = static_cast<int>(config.components.size());
    if (static_cast<int>(rules.size()) != ncomp)
        throw std::invalid_argument("rules/config component mismatch");

    PredictedScene scene;
    scene.belief.resize(ncomp);
    scene.axis_info.resize(ncomp);

    for (int c = 0; c < ncomp; ++c) {
        const auto& layout = config.components[c];
        ComponentBelief& pred = scene.belief[c];

        for (int a = 0; a < kAxisCount; ++a) {
            const Axis axis = static_cast<Axis>(a);
            const RuleSpec& rule = rules[c][a];
            const AxisSpace sp = axis_space(rule, layout, domain);
            const LogDist& b7 = beliefs[6][c].axis_dist(axis, rule.position_mode);
            const LogDist& b8 = beliefs[7][c].axis_dist(axis, rule.position_mode);

            TripleContext ctx;
            const TripleContext* ctx_ptr = nullptr;
            if (rule.kind == RuleKind::DistributeThree) {
                ctx = make_triple_context(beliefs, c, axis, rule.position_mode);
                ctx_ptr = &ctx;
            }
            AxisExecution info{rule, 0.0};
            LogDist predicted = execute_axis(rule, sp, b7, b8, ctx_ptr,
                                             &info.precondition_mass);

            if (axis == Axis::NumberPosition) {
                if (rule.position_mode) {
                    pred.number = cardinality_pushforward(predicted, layout.slot_count);
                    pred.position = std::move(predicted);
                } else {
                    pred.position = uniform_over_cardinalities(predicted, layout.slot_count);
                    pred.number = std::move(predicted);
                }
            } else {
                pred.axis_dist(axis, false) = std::move(predicted);
            }
            scene.axis_info[c][a] = info;
        }
    }
    return scene;
}

}  // namespace rpm
