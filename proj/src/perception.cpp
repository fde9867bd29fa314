#include "rpm/perception.hpp"

#include <cmath>
#include <stdexcept>

namespace rpm {

namespace {

void check_eps(double eps) {
    if (!(eps >= 0.0 && eps <= 1.0))
        throw std::invalid_argument("epsilon must be in [0,1]");
}

std::vector<double> noisy_dist(const AttributeNoise& noise, int true_value, int k) {
    if (noise.confusion) {
        const auto& m = *noise.confusion;
        if (static_cast<int>(m.size()) != k ||
            static_cast<int>(m[true_value].size()) != k)
            throw std::invalid_argument("confusion matrix shape mismatch");
        return m[true_value];
    }
    check_eps(noise.epsilon);
    std::vector<double> d(k, k > 1 ? noise.epsilon / (k - 1) : 0.0);
    d[true_value] = k > 1 ? 1.0 - noise.epsilon : 1.0;
    return d;
}

std::vector<double> uniform_dist(int k) { return std::vector<double>(k, 1.0 / k); }

}  // namespace

NoiseModel NoiseModel::symmetric(double epsilon) {
    check_eps(epsilon);
    NoiseModel m;
    m.objectiveness = epsilon;
    m.type.epsilon = m.size.epsilon = m.color.epsilon = epsilon;
    return m;
}

ObjectBelief corrupt(const ComponentSymbol& panel, const ComponentLayout& layout,
                     const AttributeDomain& domain, const NoiseModel& model,
                     std::uint64_t /*seed*/) {
    check_eps(model.objectiveness);
    ObjectBelief out;
    out.slots.resize(layout.slot_count);
    for (int j = 0; j < layout.slot_count; ++j) {
        auto& slot = out.slots[j];
        const bool occupied = (panel.occupied >> j) & 1;
        slot.p_object = occupied ? 1.0 - model.objectiveness / 2.0
                                 : model.objectiveness / 2.0;
        if (occupied) {
            slot.type_dist = noisy_dist(model.type, panel.type, domain.type_count());
            slot.size_dist = noisy_dist(model.size, panel.size, domain.size_levels);
            slot.color_dist = noisy_dist(model.color, panel.color, domain.color_levels);
        } else {
            // No true value behind an empty slot; the conditional is vacuous.
            slot.type_dist = uniform_dist(domain.type_count());
            slot.size_dist = uniform_dist(domain.size_levels);
            slot.color_dist = uniform_dist(domain.color_levels);
        }
    }
    return out;
}

std::vector<ObjectBelief> corrupt_panel(const PanelSymbol& panel, const Configuration& config,
                                        const AttributeDomain& domain, const NoiseModel& model,
                                        std::uint64_t seed) {
    if (panel.components.size() != config.components.size())
        throw std::invalid_argument("panel/config component count mismatch");
    std::vector<ObjectBelief> out;
    out.reserve(panel.components.size());
    for (std::size_t c = 0; c < panel.components.size(); ++c)
        out.push_back(corrupt(panel.components[c], config.components[c], domain, model, seed));
    return out;
}

}  // namespace rpm
