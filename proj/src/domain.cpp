#include "rpm/domain.hpp"

#include <stdexcept>

namespace rpm {

const char* shape_name(Shape s) {
    switch (s) {
        case Shape::Triangle: return "triangle";
        case Shape::Square: return "square";
        case Shape::Pentagon: return "pentagon";
        case Shape::Hexagon: return "hexagon";
        case Shape::Circle: return "circle";
    }
    return "?";
}

AttributeDomain AttributeDomain::standard() {
    AttributeDomain d;
    d.type_values = {Shape::Triangle, Shape::Square, Shape::Pentagon,
                     Shape::Hexagon, Shape::Circle};
    d.size_levels = 6;
    d.color_levels = 10;
    return d;
}

void AttributeDomain::validate() const {
    if (type_values.empty()) throw std::invalid_argument("domain: empty type list");
    if (size_levels < 1) throw std::invalid_argument("domain: size_levels < 1");
    if (color_levels < 1) throw std::invalid_argument("domain: color_levels < 1");
}

namespace {

ComponentLayout single_slot(double cx, double cy, double extent) {
    ComponentLayout c;
    c.slot_count = 1;
    c.slots = {{cx, cy, extent}};
    return c;
}

ComponentLayout grid(int side, double x0, double y0, double pitch, double extent) {
    ComponentLayout c;
    c.slot_count = side * side;
    for (int r = 0; r < side; ++r)
        for (int col = 0; col < side; ++col)
            c.slots.push_back({x0 + col * pitch, y0 + r * pitch, extent});
    return c;
}

std::vector<Configuration> make_configs() {
    std::vector<Configuration> v;
    v.push_back({"Center", {single_slot(0.5, 0.5, 0.85)}});
    v.push_back({"2x2Grid", {grid(2, 0.27, 0.27, 0.46, 0.42)}});
    v.push_back({"3x3Grid", {grid(3, 0.17, 0.17, 0.33, 0.30)}});
    v.push_back({"L-R", {single_slot(0.26, 0.5, 0.44), single_slot(0.74, 0.5, 0.44)}});
    v.push_back({"U-D", {single_slot(0.5, 0.26, 0.44), single_slot(0.5, 0.74, 0.44)}});
    v.push_back({"O-IC", {single_slot(0.5, 0.5, 0.9), single_slot(0.5, 0.5, 0.38)}});
    v.push_back({"O-IG", {single_slot(0.5, 0.5, 0.95),
                          grid(2, 0.41, 0.41, 0.18, 0.15)}});
    return v;
}

}  // namespace

const std::vector<Configuration>& Configuration::all() {
    static const std::vector<Configuration> configs = make_configs();
    return configs;
}

const Configuration& Configuration::by_name(const std::string& name) {
    for (const auto& c : all())
        if (c.name == name) return c;
    throw std::invalid_argument("unknown configuration: " + name);
}

}  // namespace rpm
