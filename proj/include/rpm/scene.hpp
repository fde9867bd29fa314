#pragma once

#include <vector>

#include "rpm/domain.hpp"
#include "rpm/perception.hpp"
#include "rpm/rules.hpp"

namespace rpm {

// A normalized categorical distribution kept in log space.
struct LogDist {
    std::vector<double> logp;

    int size() const { return static_cast<int>(logp.size()); }
    std::vector<double> linear() const;
    double linear_at(int i) const;
    // Renormalizes in place via log-sum-exp; throws DegenerateBeliefError if
    // the total mass is zero.
    void normalize();

    static LogDist point_mass(int index, int size);
    static LogDist from_linear(const std::vector<double>& p);
};

// The probabilistic scene representation of one component: distributions over
// position (non-empty slot subsets), number, type, size, color.
struct ComponentBelief {
    LogDist position;  // outcome i <-> mask i+1
    LogDist number;    // outcome i <-> count i+1
    LogDist type, size, color;

    const LogDist& axis_dist(Axis axis, bool position_mode) const;
    LogDist& axis_dist(Axis axis, bool position_mode);
};

using PanelBelief = std::vector<ComponentBelief>;  // one entry per component

// Exact marginalization of per-slot beliefs (Eq. 1 and its analogues), with
// the empty panel excluded and mass renormalized.
LogDist infer_position(const ObjectBelief& obj);
LogDist infer_number(const ObjectBelief& obj);
LogDist infer_scalar_axis(const ObjectBelief& obj, Axis axis);

ComponentBelief infer_component(const ObjectBelief& obj);
PanelBelief infer_panel(const std::vector<ObjectBelief>& per_component);

// Point-mass belief of a ground-truth panel (the epsilon = 0 limit).
ComponentBelief point_mass_belief(const ComponentSymbol& panel, const ComponentLayout& layout,
                                  const AttributeDomain& domain);
PanelBelief point_mass_panel(const PanelSymbol& panel, const Configuration& config,
                             const AttributeDomain& domain);

}  // namespace rpm
