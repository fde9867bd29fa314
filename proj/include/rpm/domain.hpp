#pragma once

#include <string>
#include <vector>

namespace rpm {

// Shape indices, in the fixed domain order.
enum class Shape : int { Triangle = 0, Square = 1, Pentagon = 2, Hexagon = 3, Circle = 4 };

const char* shape_name(Shape s);

// Attribute value domains shared by every module. Values are dense indices;
// Progression/Arithmetic operate on these indices.
struct AttributeDomain {
    std::vector<Shape> type_values;  // default: all 5 shapes
    int size_levels = 6;             // indices 0..5
    int color_levels = 10;           // indices 0..9

    static AttributeDomain standard();

    int type_count() const { return static_cast<int>(type_values.size()); }
    void validate() const;  // throws std::invalid_argument
};

struct SlotGeometry {
    double center_x = 0.5;  // normalized panel coordinates [0,1]
    double center_y = 0.5;
    double max_extent = 0.9;  // diameter of the largest shape this slot can hold
};

// Slots are stored in row-major order; slot index == position bit index.
struct ComponentLayout {
    int slot_count = 1;
    std::vector<SlotGeometry> slots;
};

struct Configuration {
    std::string name;
    std::vector<ComponentLayout> components;

    // The seven standard configurations:
    // Center, 2x2Grid, 3x3Grid, L-R, U-D, O-IC, O-IG.
    static const std::vector<Configuration>& all();
    static const Configuration& by_name(const std::string& name);  // throws on unknown
};

}  // namespace rpm
