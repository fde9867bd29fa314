#include "rpm/rules.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "rpm/errors.hpp"

namespace rpm {

const char* axis_name(Axis a) {
    switch (a) {
        case Axis::NumberPosition: return "NumberPosition";
        case Axis::Type: return "Type";
        case Axis::Size: return "Size";
        case Axis::Color: return "Color";
    }
    return "?";
}

Axis axis_from_name(const std::string& name) {
    for (int i = 0; i < kAxisCount; ++i)
        if (name == axis_name(static_cast<Axis>(i))) return static_cast<Axis>(i);
    throw std::invalid_argument("unknown axis: " + name);
}

const char* rule_kind_name(RuleKind k) {
    switch (k) {
        case RuleKind::Constant: return "Constant";
        case RuleKind::Progression: return "Progression";
        case RuleKind::Arithmetic: return "Arithmetic";
        case RuleKind::DistributeThree: return "DistributeThree";
    }
    return "?";
}

RuleKind rule_kind_from_name(const std::string& name) {
    for (int i = 0; i < 4; ++i) {
        const auto k = static_cast<RuleKind>(i);
        if (name == rule_kind_name(k)) return k;
    }
    throw std::invalid_argument("unknown rule kind: " + name);
}

std::string rule_name(const RuleSpec& r) {
    std::string s = r.position_mode ? "Pos" : "";
    s += rule_kind_name(r.kind);
    if (r.kind == RuleKind::Progression)
        s += (r.param > 0 ? "+" : "") + std::to_string(r.param);
    else if (r.kind == RuleKind::Arithmetic)
        s += r.param > 0 ? "+" : "-";
    return s;
}

AxisSpace axis_space(Axis axis, bool position_mode, const ComponentLayout& layout,
                     const AttributeDomain& domain) {
    switch (axis) {
        case Axis::NumberPosition:
            return position_mode ? AxisSpace{SpaceKind::Subset, layout.slot_count}
                                 : AxisSpace{SpaceKind::Number, layout.slot_count};
        case Axis::Type: return {SpaceKind::Scalar, domain.type_count()};
        case Axis::Size: return {SpaceKind::Scalar, domain.size_levels};
        case Axis::Color: return {SpaceKind::Scalar, domain.color_levels};
    }
    throw std::invalid_argument("bad axis");
}

int cyclic_shift(int mask, int delta, int slot_count) {
    const int n = slot_count;
    int d = ((delta % n) + n) % n;
    if (d == 0) return mask;
    const int full = (1 << n) - 1;
    return ((mask << d) | (mask >> (n - d))) & full;
}

namespace {

void check_triple(const RuleSpec& r, const AxisSpace& sp, const std::vector<int>* triple,
                  bool required) {
    if (r.kind == RuleKind::DistributeThree) {
        if (required && triple == nullptr)
            throw std::invalid_argument("DistributeThree requires a triple context");
        if (triple != nullptr) {
            if (triple->size() != 3) throw std::invalid_argument("triple must have 3 values");
            for (int v : *triple)
                if (!sp.in_domain(v)) throw std::invalid_argument("triple value out of domain");
            if ((*triple)[0] == (*triple)[1] || (*triple)[0] == (*triple)[2] ||
                (*triple)[1] == (*triple)[2])
                throw std::invalid_argument("triple values must be distinct");
        }
    } else if (triple != nullptr) {
        throw std::invalid_argument("triple context only valid for DistributeThree");
    }
}

bool in_triple(const std::vector<int>& t, int v) {
    return v == t[0] || v == t[1] || v == t[2];
}

}  // namespace

bool rule_holds_row_v(const RuleSpec& r, const AxisSpace& sp, int v1, int v2, int v3,
                      const std::vector<int>* triple) {
    for (int v : {v1, v2, v3})
        if (!sp.in_domain(v)) throw std::invalid_argument("value out of axis domain");
    check_triple(r, sp, triple, /*required=*/true);

    switch (r.kind) {
        case RuleKind::Constant:
            return v1 == v2 && v2 == v3;
        case RuleKind::Progression:
            if (sp.kind == SpaceKind::Subset)
                return v2 == cyclic_shift(v1, r.param, sp.n) &&
                       v3 == cyclic_shift(v2, r.param, sp.n);
            return v2 == v1 + r.param && v3 == v2 + r.param;
        case RuleKind::Arithmetic:
            if (sp.kind == SpaceKind::Subset) {
                if (r.param > 0) return v3 == (v1 | v2);
                return (v2 & ~v1) == 0 && v2 != v1 && v3 == (v1 & ~v2);
            }
            return v3 == v1 + r.param * v2 && sp.in_domain(v1 + r.param * v2);
        case RuleKind::DistributeThree:
            return v1 != v2 && v1 != v3 && v2 != v3 && in_triple(*triple, v1) &&
                   in_triple(*triple, v2) && in_triple(*triple, v3);
    }
    throw std::invalid_argument("bad rule kind");
}

bool rule_precondition_v(const RuleSpec& r, const AxisSpace& sp, int v1, int v2,
                         const std::vector<int>* triple) {
    for (int v : {v1, v2})
        if (!sp.in_domain(v)) throw std::invalid_argument("value out of axis domain");
    check_triple(r, sp, triple, /*required=*/false);

    switch (r.kind) {
        case RuleKind::Constant:
            return v1 == v2;
        case RuleKind::Progression:
            if (sp.kind == SpaceKind::Subset)
                return v2 == cyclic_shift(v1, r.param, sp.n);
            return v2 == v1 + r.param && sp.in_domain(v2 + r.param);
        case RuleKind::Arithmetic:
            if (sp.kind == SpaceKind::Subset) {
                if (r.param > 0) return true;  // union is total on non-empty pairs
                return (v2 & ~v1) == 0 && v2 != v1;
            }
            return sp.in_domain(v1 + r.param * v2);
        case RuleKind::DistributeThree:
            if (triple != nullptr)
                return v1 != v2 && in_triple(*triple, v1) && in_triple(*triple, v2);
            // Without an explicit triple: a completing triple exists iff v1 != v2
            // and the domain has a third value.
            return v1 != v2 && sp.outcome_count() >= 3;
    }
    throw std::invalid_argument("bad rule kind");
}

int rule_forward_v(const RuleSpec& r, const AxisSpace& sp, int v1, int v2,
                   const std::vector<int>* triple) {
    if (r.kind == RuleKind::DistributeThree) {
        check_triple(r, sp, triple, /*required=*/true);
        if (!rule_precondition_v(r, sp, v1, v2, triple))
            throw PreconditionError("DistributeThree forward: pair not in triple");
        for (int v : *triple)
            if (v != v1 && v != v2) return v;
        throw PreconditionError("DistributeThree forward: degenerate triple");
    }
    if (!rule_precondition_v(r, sp, v1, v2, triple))
        throw PreconditionError(rule_name(r) + " forward: precondition violated");

    switch (r.kind) {
        case RuleKind::Constant:
            return v1;
        case RuleKind::Progression:
            if (sp.kind == SpaceKind::Subset) return cyclic_shift(v2, r.param, sp.n);
            return v2 + r.param;
        case RuleKind::Arithmetic:
            if (sp.kind == SpaceKind::Subset)
                return r.param > 0 ? (v1 | v2) : (v1 & ~v2);
            return v1 + r.param * v2;
        default:
            break;
    }
    throw std::invalid_argument("bad rule kind");
}

namespace {

int value_of(const AxisSpace& sp, const AxisValue& v) {
    if (sp.kind == SpaceKind::Subset) {
        const auto* s = std::get_if<SubsetValue>(&v);
        if (s == nullptr)
            throw std::invalid_argument("axis expects a subset value");
        if (s->mask == 0) throw std::invalid_argument("subset value is empty");
        if (!sp.in_domain(s->mask)) throw std::invalid_argument("subset out of range");
        return s->mask;
    }
    const auto* s = std::get_if<ScalarValue>(&v);
    if (s == nullptr) throw std::invalid_argument("axis expects a scalar value");
    if (!sp.in_domain(s->value)) throw std::invalid_argument("scalar value out of range");
    return s->value;
}

std::vector<int> triple_values(const AxisSpace& sp, const std::vector<AxisValue>& t) {
    std::vector<int> out;
    out.reserve(t.size());
    for (const auto& v : t) out.push_back(value_of(sp, v));
    return out;
}

AxisValue wrap(const AxisSpace& sp, int v) {
    if (sp.kind == SpaceKind::Subset) return SubsetValue{v};
    return ScalarValue{v};
}

}  // namespace

bool rule_holds_row(const RuleSpec& r, const AxisSpace& sp, const AxisValue& v1,
                    const AxisValue& v2, const AxisValue& v3,
                    const std::vector<AxisValue>* triple_context) {
    std::vector<int> t;
    if (triple_context != nullptr) t = triple_values(sp, *triple_context);
    return rule_holds_row_v(r, sp, value_of(sp, v1), value_of(sp, v2), value_of(sp, v3),
                            triple_context != nullptr ? &t : nullptr);
}

bool rule_precondition(const RuleSpec& r, const AxisSpace& sp, const AxisValue& v1,
                       const AxisValue& v2) {
    return rule_precondition_v(r, sp, value_of(sp, v1), value_of(sp, v2));
}

AxisValue rule_forward(const RuleSpec& r, const AxisSpace& sp, const AxisValue& v1,
                       const AxisValue& v2,
                       const std::vector<AxisValue>* triple_context) {
    std::vector<int> t;
    if (triple_context != nullptr) t = triple_values(sp, *triple_context);
    return wrap(sp, rule_forward_v(r, sp, value_of(sp, v1), value_of(sp, v2),
                                   triple_context != nullptr ? &t : nullptr));
}

namespace {

// A rule enters the catalog only if its precondition set is non-empty and its
// forward image can differ in a well-formed way (degenerate single-value axes
// collapse to Constant).
bool feasible(const RuleSpec& r, const AxisSpace& sp) {
    switch (r.kind) {
        case RuleKind::Constant:
            return true;
        case RuleKind::Progression: {
            if (sp.kind == SpaceKind::Subset)
                // Shift must move something; delta == 0 (mod n) equals Constant.
                return sp.n >= 2 && (((r.param % sp.n) + sp.n) % sp.n) != 0;
            const int lo = sp.kind == SpaceKind::Number ? 1 : 0;
            const int hi = sp.kind == SpaceKind::Number ? sp.n : sp.n - 1;
            for (int v = lo; v <= hi; ++v)
                if (v + 2 * r.param >= lo && v + 2 * r.param <= hi &&
                    v + r.param >= lo && v + r.param <= hi)
                    return true;
            return false;
        }
        case RuleKind::Arithmetic:
            if (sp.kind == SpaceKind::Subset) return sp.n >= 2;
            if (sp.kind == SpaceKind::Number) return sp.n >= 2;  // 1 +/- 1 needs room
            return true;  // scalar domains include 0
        case RuleKind::DistributeThree:
            return sp.outcome_count() >= 3;
    }
    return false;
}

void append_mode(std::vector<RuleSpec>& out, Axis axis, bool position_mode,
                 const AxisSpace& sp, bool allow_arithmetic) {
    const auto push = [&](RuleKind k, int param) {
        RuleSpec r{axis, k, param, position_mode};
        if (feasible(r, sp)) out.push_back(r);
    };
    push(RuleKind::Constant, 0);
    for (int d : {-2, -1, 1, 2}) push(RuleKind::Progression, d);
    if (allow_arithmetic) {
        push(RuleKind::Arithmetic, +1);
        push(RuleKind::Arithmetic, -1);
    }
    push(RuleKind::DistributeThree, 0);
}

}  // namespace

std::vector<RuleSpec> catalog_for_axis(Axis axis, const ComponentLayout& layout,
                                       const AttributeDomain& domain) {
    std::vector<RuleSpec> out;
    if (axis == Axis::NumberPosition) {
        append_mode(out, axis, /*position_mode=*/false,
                    axis_space(axis, false, layout, domain), /*allow_arithmetic=*/true);
        if (layout.slot_count >= 2)
            append_mode(out, axis, /*position_mode=*/true,
                        axis_space(axis, true, layout, domain), /*allow_arithmetic=*/true);
        return out;
    }
    append_mode(out, axis, false, axis_space(axis, false, layout, domain),
                /*allow_arithmetic=*/axis != Axis::Type);
    return out;
}

}  // namespace rpm
