#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "rpm/execution.hpp"
#include "rpm/scene.hpp"

namespace rpm {

// Jensen-Shannon divergence in nats; 0 <= jsd <= ln 2, with 0*log 0 = 0.
// Throws std::invalid_argument on mismatched outcome spaces.
double jsd(std::span<const double> p, std::span<const double> q);
double jsd(const LogDist& p, const LogDist& q);

struct AnswerReport {
    std::vector<double> divergences;   // 8, nats
    std::vector<double> answer_probs;  // softmax of negative divergence
    int chosen = 0;                    // argmin divergence, ties -> lowest index
    // Per candidate, per component, per axis term: position, number, type,
    // size, color.
    std::vector<std::vector<std::array<double, 5>>> breakdown;
};

struct SelectionOptions {
    // When true, the NumberPosition contribution counts only the executed
    // mode's distribution (position or number) instead of both.
    bool executed_mode_only = false;
};

AnswerReport score_candidates(const PredictedScene& pred,
                              std::span<const PanelBelief> candidates,
                              const SelectionOptions& opts = {});

// -log answer_probs[answer_index]; evaluation metric.
double answer_cross_entropy(const AnswerReport& report, int answer_index);

}  // namespace rpm
