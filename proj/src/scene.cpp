#include "rpm/scene.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rpm/errors.hpp"
#include "rpm/kernels.hpp"

namespace rpm {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

std::vector<double> LogDist::linear() const {
    std::vector<double> p(logp.size());
    for (std::size_t i = 0; i < logp.size(); ++i) p[i] = std::exp(logp[i]);
    return p;
}

double LogDist::linear_at(int i) const { return std::exp(logp[i]); }

void LogDist::normalize() {
    const double z = kern::logsumexp(logp);
    if (z == kNegInf)
        throw DegenerateBeliefError("distribution has zero total mass");
    for (auto& v : logp) v -= z;
}

LogDist LogDist::point_mass(int index, int size) {
    LogDist d;
    d.logp.assign(size, kNegInf);
    d.logp[index] = 0.0;
    return d;
}

LogDist LogDist::from_linear(const std::vector<double>& p) {
    LogDist d;
    d.logp.resize(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] < 0) throw std::invalid_argument("negative probability");
        d.logp[i] = std::log(p[i]);
    }
    d.normalize();
    return d;
}

const LogDist& ComponentBelief::axis_dist(Axis axis, bool position_mode) const {
    switch (axis) {
        case Axis::NumberPosition: return position_mode ? position : number;
        case Axis::Type: return type;
        case Axis::Size: return size;
        case Axis::Color: return color;
    }
    throw std::invalid_argument("bad axis");
}

LogDist& ComponentBelief::axis_dist(Axis axis, bool position_mode) {
    return const_cast<LogDist&>(
        static_cast<const ComponentBelief*>(this)->axis_dist(axis, position_mode));
}

LogDist infer_position(const ObjectBelief& obj) {
    const int n = static_cast<int>(obj.slots.size());
    if (n < 1) throw std::invalid_argument("no slots");
    std::vector<double> log_on(n), log_off(n);
    for (int j = 0; j < n; ++j) {
        const double p = obj.slots[j].p_object;
        if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p_object out of [0,1]");
        log_on[j] = std::log(p);
        log_off[j] = std::log1p(-p);
    }
    LogDist out;
    out.logp.resize((1 << n) - 1);
    for (int mask = 1; mask <= (1 << n) - 1; ++mask) {
        double lp = 0.0;
        for (int j = 0; j < n; ++j) lp += ((mask >> j) & 1) ? log_on[j] : log_off[j];
        out.logp[mask - 1] = lp;
    }
    out.normalize();  // excludes the empty subset by construction
    return out;
}

LogDist infer_number(const ObjectBelief& obj) {
    const LogDist pos = infer_position(obj);
    const int n = static_cast<int>(obj.slots.size());
    std::vector<std::vector<double>> groups(n);
    for (int mask = 1; mask <= (1 << n) - 1; ++mask)
        groups[std::popcount(static_cast<unsigned>(mask)) - 1].push_back(pos.logp[mask - 1]);
    LogDist out;
    out.logp.resize(n);
    for (int k = 0; k < n; ++k) out.logp[k] = kern::logsumexp(groups[k]);
    out.normalize();
    return out;
}

LogDist infer_scalar_axis(const ObjectBelief& obj, Axis axis) {
    if (axis == Axis::NumberPosition)
        throw std::invalid_argument("scalar axis expected");
    const int n = static_cast<int>(obj.slots.size());
    if (n < 1) throw std::invalid_argument("no slots");
    const auto& dist_of = [&](int j) -> const std::vector<double>& {
        switch (axis) {
            case Axis::Type: return obj.slots[j].type_dist;
            case Axis::Size: return obj.slots[j].size_dist;
            default: return obj.slots[j].color_dist;
        }
    };
    const int k = static_cast<int>(dist_of(0).size());

    // P(axis = t) ∝ prod_j [(1-p_j) + p_j q_j(t)] - prod_j (1-p_j): at least one
    // object present and every present object carries value t.
    double log_all_off = 0.0;
    for (int j = 0; j < n; ++j) log_all_off += std::log1p(-obj.slots[j].p_object);

    LogDist out;
    out.logp.resize(k);
    for (int t = 0; t < k; ++t) {
        double log_mix = 0.0;
        for (int j = 0; j < n; ++j) {
            const double p = obj.slots[j].p_object;
            log_mix += std::log((1.0 - p) + p * dist_of(j)[t]);
        }
        if (log_mix <= log_all_off) {
            out.logp[t] = kNegInf;
        } else {
            // log(exp(a) - exp(b)) with a > b
            out.logp[t] = log_mix + std::log1p(-std::exp(log_all_off - log_mix));
        }
    }
    out.normalize();
    return out;
}

ComponentBelief infer_component(const ObjectBelief& obj) {
    ComponentBelief b;
    b.position = infer_position(obj);
    b.number = infer_number(obj);
    b.type = infer_scalar_axis(obj, Axis::Type);
    b.size = infer_scalar_axis(obj, Axis::Size);
    b.color = infer_scalar_axis(obj, Axis::Color);
    return b;
}

PanelBelief infer_panel(const std::vector<ObjectBelief>& per_component) {
    PanelBelief out;
    out.reserve(per_component.size());
    for (const auto& obj : per_component) out.push_back(infer_component(obj));
    return out;
}

ComponentBelief point_mass_belief(const ComponentSymbol& panel, const ComponentLayout& layout,
                                  const AttributeDomain& domain) {
    ComponentBelief b;
    const int n = layout.slot_count;
    b.position = LogDist::point_mass(panel.occupied - 1, (1 << n) - 1);
    b.number = LogDist::point_mass(
        std::popcount(static_cast<unsigned>(panel.occupied)) - 1, n);
    b.type = LogDist::point_mass(panel.type, domain.type_count());
    b.size = LogDist::point_mass(panel.size, domain.size_levels);
    b.color = LogDist::point_mass(panel.color, domain.color_levels);
    return b;
}

PanelBelief point_mass_panel(const PanelSymbol& panel, const Configuration& config,
                             const AttributeDomain& domain) {
    PanelBelief out;
    for (std::size_t c = 0; c < panel.components.size(); ++c)
        out.push_back(point_mass_belief(panel.components[c], config.components[c], domain));
    return out;
}

}  // namespace rpm
