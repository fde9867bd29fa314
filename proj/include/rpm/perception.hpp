#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rpm/domain.hpp"
#include "rpm/instance.hpp"

namespace rpm {

// Per-slot perception output for one component: objectiveness probability and
// conditional attribute distributions (conditioned on objectiveness true).
struct SlotBelief {
    double p_object = 0.0;
    std::vector<double> type_dist;
    std::vector<double> size_dist;
    std::vector<double> color_dist;
};

struct ObjectBelief {
    std::vector<SlotBelief> slots;
};

// Noise for one conditional attribute: symmetric-uniform with parameter
// epsilon, or an explicit row-stochastic confusion matrix (row = true value).
struct AttributeNoise {
    double epsilon = 0.0;
    std::optional<std::vector<std::vector<double>>> confusion;
};

struct NoiseModel {
    double objectiveness = 0.0;  // epsilon for the objectiveness flips
    AttributeNoise type, size, color;

    static NoiseModel symmetric(double epsilon);
};

// Simulated perception: true outcome keeps mass (1-eps), eps spreads uniformly
// over the rest; occupied slots get p_object = 1-eps/2, empty slots eps/2.
// Deterministic in (panel, model, seed); seed is reserved for optional jitter.
ObjectBelief corrupt(const ComponentSymbol& panel, const ComponentLayout& layout,
                     const AttributeDomain& domain, const NoiseModel& model,
                     std::uint64_t seed = 0);

std::vector<ObjectBelief> corrupt_panel(const PanelSymbol& panel, const Configuration& config,
                                        const AttributeDomain& domain, const NoiseModel& model,
                                        std::uint64_t seed = 0);

}  // namespace rpm
