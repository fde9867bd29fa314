#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "rpm/abduction.hpp"
#include "rpm/execution.hpp"
#include "rpm/generator.hpp"
#include "rpm/perception.hpp"
#include "rpm/selection.hpp"

namespace rpm {

struct SolveOptions {
    double epsilon = 0.0;
    std::uint64_t seed = 0;  // rule sampling / reserved perception jitter
    SelectMode mode = SelectMode::Argmax;
    bool column_mode = false;  // abduce/execute along columns instead of rows
    SelectionOptions selection;
    const NoiseModel* noise = nullptr;  // overrides the symmetric epsilon model
};

struct AxisOutcome {
    RulePosterior posterior;
    RuleSpec chosen;
    double ground_truth_mass = 0.0;  // posterior mass on the instance's rule
    bool chosen_matches_truth = false;
};

struct SolveResult {
    AnswerReport report;
    PredictedScene prediction;
    std::vector<std::array<AxisOutcome, kAxisCount>> axes;  // per component
    bool correct = false;
    double cross_entropy = 0.0;
    std::vector<std::string> warnings;
};

// Full inference pipeline: corrupt -> infer scenes for all 16 panels ->
// abduce -> select rules -> execute -> score candidates.
SolveResult solve(const PuzzleInstance& instance, const SolveOptions& opts,
                  const AttributeDomain& domain = AttributeDomain::standard());

}  // namespace rpm
