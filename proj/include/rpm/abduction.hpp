#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "rpm/rules.hpp"
#include "rpm/scene.hpp"

namespace rpm {

// Posterior over the rule catalog for one attribute axis, abduced from the 8
// context panel beliefs by inverse dynamics. Kept in log space; zero-support
// rules carry exactly -inf.
struct RulePosterior {
    Axis axis = Axis::NumberPosition;
    std::vector<RuleSpec> rules;
    std::vector<double> log_probs;  // normalized over `rules`
    // Audit trail: log of the per-row partial sums (rows 1, 2 and the partial
    // third row). DistributeThree couples the rows through the latent triple;
    // for it, entry 0 holds the log of the full triple-marginalized score and
    // entries 1-2 are zero.
    std::vector<std::array<double, 3>> row_log_sums;
    bool uniform_fallback = false;  // all scores were zero; flagged warning

    int argmax() const;  // ties broken by lowest catalog index
    std::vector<double> linear() const;
    double prob_of(const RuleSpec& r) const;  // 0 if the rule is not cataloged
};

// Scores every rule by partially marginalizing each row and aggregating:
// rows 1-2 contribute full-row sums over valid assignments, the third row the
// precondition-pair sum over panels 7-8. Beliefs are the 8 context panels of
// one component, row-major.
RulePosterior abduce_axis(const std::vector<RuleSpec>& rule_set,
                          std::span<const ComponentBelief> beliefs, Axis axis);

// Convenience: abduce all four axes of one component.
std::array<RulePosterior, kAxisCount> abduce_component(
    std::span<const ComponentBelief> beliefs, const ComponentLayout& layout,
    const AttributeDomain& domain);

enum class SelectMode { Argmax, Sample };

RuleSpec select_rule(const RulePosterior& posterior, SelectMode mode,
                     std::uint64_t seed = 0);

}  // namespace rpm
