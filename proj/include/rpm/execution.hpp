#pragma once

#include <array>
#include <span>
#include <vector>

#include "rpm/instance.hpp"
#include "rpm/rules.hpp"
#include "rpm/scene.hpp"

namespace rpm {

// Latent-triple evidence for DistributeThree execution: the rows 1-2 axis
// distributions the triple posterior was abduced from.
struct TripleContext {
    std::array<const LogDist*, 6> row_panels{};  // context panels 1..6
};

struct AxisExecution {
    RuleSpec rule;
    // Probability mass captured by the rule precondition before
    // renormalization (for DistributeThree, conditional on the triple
    // posterior). In (0, 1] on success.
    double precondition_mass = 0.0;
};

// The predicted answer representation plus, per component and axis, the rule
// that produced it.
struct PredictedScene {
    PanelBelief belief;
    std::vector<std::array<AxisExecution, kAxisCount>> axis_info;
};

// Eq.-5-style mass redistribution: pushes the third-row pair (b7, b8) through
// the rule's forward model over its precondition set and renormalizes.
// Throws ExecutionInfeasibleError when the precondition mass is zero.
LogDist execute_axis(const RuleSpec& rule, const AxisSpace& space, const LogDist& b7,
                     const LogDist& b8, const TripleContext* triple = nullptr,
                     double* precondition_mass = nullptr);

// Executes one rule per axis per component on panels 7-8. The NumberPosition
// axis runs in the chosen rule's mode: position-mode rules predict the subset
// distribution (number as its cardinality pushforward); number-mode rules
// predict the count distribution (position uniform over subsets of each
// predicted cardinality).
PredictedScene execute_scene(const std::vector<ComponentRules>& rules,
                             std::span<const PanelBelief> beliefs,
                             const Configuration& config, const AttributeDomain& domain);

}  // namespace rpm
