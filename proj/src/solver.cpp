#include "rpm/solver.hpp"

#include <stdexcept>

namespace rpm {

SolveResult solve(const PuzzleInstance& instance, const SolveOptions& opts,
                  const AttributeDomain& domain) {
    const Configuration& config = instance.config();
    const NoiseModel model =
        opts.noise != nullptr ? *opts.noise : NoiseModel::symmetric(opts.epsilon);

    std::array<PanelBelief, 8> context;
    for (int i = 0; i < 8; ++i)
        context[i] = infer_panel(
            corrupt_panel(instance.context[i], config, domain, model, opts.seed));
    std::vector<PanelBelief> candidates(8);
    for (int i = 0; i < 8; ++i)
        candidates[i] = infer_panel(
            corrupt_panel(instance.candidates[i], config, domain, model, opts.seed));

    // Column mode re-reads the 3x3 grid column-major; the missing panel stays
    // last, so the same row machinery applies.
    std::array<PanelBelief, 8> ordered;
    if (opts.column_mode) {
        static constexpr int kColumnOrder[8] = {0, 3, 6, 1, 4, 7, 2, 5};
        for (int i = 0; i < 8; ++i) ordered[i] = context[kColumnOrder[i]];
    } else {
        ordered = context;
    }

    const int ncomp = static_cast<int>(config.components.size());
    SolveResult result;
    result.axes.resize(ncomp);
    std::vector<ComponentRules> chosen(ncomp);

    for (int c = 0; c < ncomp; ++c) {
        std::vector<ComponentBelief> comp_beliefs;
        comp_beliefs.reserve(8);
        for (const auto& pb : ordered) comp_beliefs.push_back(pb[c]);

        for (int a = 0; a < kAxisCount; ++a) {
            const Axis axis = static_cast<Axis>(a);
            AxisOutcome& out = result.axes[c][a];
            out.posterior = abduce_axis(catalog_for_axis(axis, config.components[c], domain),
                                        comp_beliefs, axis);
            if (out.posterior.uniform_fallback)
                result.warnings.push_back("uniform fallback on component " +
                                          std::to_string(c) + " axis " + axis_name(axis));
            out.chosen = select_rule(out.posterior, opts.mode,
                                     opts.seed * 31 + c * kAxisCount + a);
            const RuleSpec& truth = instance.rules[c][a];
            out.ground_truth_mass = out.posterior.prob_of(truth);
            out.chosen_matches_truth = out.chosen == truth;
            chosen[c][a] = out.chosen;
        }
    }

    result.prediction =
        execute_scene(chosen, std::span<const PanelBelief>(ordered), config, domain);
    result.report = score_candidates(result.prediction, candidates, opts.selection);
    result.correct = result.report.chosen == instance.answer_index;
    result.cross_entropy = answer_cross_entropy(result.report, instance.answer_index);
    return result;
}

}  // namespace rpm
