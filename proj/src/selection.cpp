#include "rpm/selection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rpm/kernels.hpp"

namespace rpm {

double jsd(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size() || p.empty())
        throw std::invalid_argument("jsd: mismatched outcome spaces");
    double d = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double m = 0.5 * (p[i] + q[i]);
        // one commutative addition per index keeps jsd(p,q) == jsd(q,p) bit-exactly
        const double tp = p[i] > 0 ? 0.5 * p[i] * std::log(p[i] / m) : 0.0;
        const double tq = q[i] > 0 ? 0.5 * q[i] * std::log(q[i] / m) : 0.0;
        d += tp + tq;
    }
    return std::max(d, 0.0);
}

double jsd(const LogDist& p, const LogDist& q) {
    return jsd(std::span<const double>(p.linear()), std::span<const double>(q.linear()));
}

AnswerReport score_candidates(const PredictedScene& pred,
                              std::span<const PanelBelief> candidates,
                              const SelectionOptions& opts) {
    const int ncand = static_cast<int>(candidates.size());
    const int ncomp = static_cast<int>(pred.belief.size());

    AnswerReport report;
    report.divergences.resize(ncand);
    report.breakdown.resize(ncand);

    for (int i = 0; i < ncand; ++i) {
        if (static_cast<int>(candidates[i].size()) != ncomp)
            throw std::invalid_argument("candidate component count mismatch");
        double total = 0.0;
        report.breakdown[i].resize(ncomp);
        for (int c = 0; c < ncomp; ++c) {
            const ComponentBelief& pc = pred.belief[c];
            const ComponentBelief& cc = candidates[i][c];
            const bool executed_position =
                pred.axis_info[c][static_cast<int>(Axis::NumberPosition)].rule.position_mode;
            std::array<double, 5> terms{};
            terms[0] = jsd(pc.position, cc.position);
            terms[1] = jsd(pc.number, cc.number);
            terms[2] = jsd(pc.type, cc.type);
            terms[3] = jsd(pc.size, cc.size);
            terms[4] = jsd(pc.color, cc.color);
            report.breakdown[i][c] = terms;
            if (opts.executed_mode_only)
                total += executed_position ? terms[0] : terms[1];
            else
                total += terms[0] + terms[1];
            total += terms[2] + terms[3] + terms[4];
        }
        report.divergences[i] = total;
    }

    report.chosen = static_cast<int>(
        std::min_element(report.divergences.begin(), report.divergences.end()) -
        report.divergences.begin());

    // Softmax of negative divergence, computed stably.
    std::vector<double> neg(ncand);
    for (int i = 0; i < ncand; ++i) neg[i] = -report.divergences[i];
    const double z = kern::logsumexp(neg);
    report.answer_probs.resize(ncand);
    for (int i = 0; i < ncand; ++i) report.answer_probs[i] = std::exp(neg[i] - z);
    return report;
}

double answer_cross_entropy(const AnswerReport& report, int answer_index) {
    if (answer_index < 0 || answer_index >= static_cast<int>(report.answer_probs.size()))
        throw std::invalid_argument("answer index out of range");
    return -std::log(report.answer_probs[answer_index]);
}

}  // namespace rpm
