#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "rpm/domain.hpp"
#include "rpm/rules.hpp"

namespace rpm {

// Ground-truth symbolic content of one panel component: occupied slots plus
// uniform type/size/color across the component's objects.
struct ComponentSymbol {
    int occupied = 1;  // non-empty slot bitmask
    int type = 0;
    int size = 0;
    int color = 0;

    bool operator==(const ComponentSymbol&) const = default;
};

struct PanelSymbol {
    std::vector<ComponentSymbol> components;

    bool operator==(const PanelSymbol&) const = default;
};

// One rule per axis, in Axis enum order.
using ComponentRules = std::array<RuleSpec, kAxisCount>;

struct PuzzleInstance {
    std::string config_name;
    std::uint64_t seed = 0;
    std::vector<ComponentRules> rules;      // one entry per component
    std::array<PanelSymbol, 8> context;     // row-major positions 1..8
    std::array<PanelSymbol, 8> candidates;
    int answer_index = 0;

    const Configuration& config() const { return Configuration::by_name(config_name); }
};

}  // namespace rpm
