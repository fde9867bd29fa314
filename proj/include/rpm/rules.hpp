#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rpm/domain.hpp"

namespace rpm {

// Rule-governed attribute axes. Number and Position rules are exclusive and
// share one axis; each rule on it carries a mode flag.
enum class Axis : int { NumberPosition = 0, Type = 1, Size = 2, Color = 3 };
inline constexpr int kAxisCount = 4;

const char* axis_name(Axis a);
Axis axis_from_name(const std::string& name);  // throws on unknown

enum class RuleKind : int { Constant = 0, Progression = 1, Arithmetic = 2, DistributeThree = 3 };

const char* rule_kind_name(RuleKind k);
RuleKind rule_kind_from_name(const std::string& name);

struct RuleSpec {
    Axis axis = Axis::NumberPosition;
    RuleKind kind = RuleKind::Constant;
    // Progression delta in {-2,-1,+1,+2}; Arithmetic sign in {+1,-1}; else 0.
    int param = 0;
    // Only meaningful on NumberPosition: true = the rule reads the slot subset,
    // false = it reads the cardinality.
    bool position_mode = false;

    bool operator==(const RuleSpec&) const = default;
};

// Short display name, e.g. "Progression+1", "PosArithmetic-", "DistributeThree".
std::string rule_name(const RuleSpec& r);

// ---------------------------------------------------------------------------
// Axis value spaces. Values are semantic: a non-empty slot bitmask for subset
// spaces, a count 1..N for number spaces, a dense 0-based index for scalars.
// Dense outcome indices (0..outcome_count-1) are what the engines iterate.

enum class SpaceKind { Subset, Number, Scalar };

struct AxisSpace {
    SpaceKind kind = SpaceKind::Scalar;
    int n = 1;  // Subset/Number: slot count; Scalar: domain cardinality

    int outcome_count() const {
        return kind == SpaceKind::Subset ? (1 << n) - 1 : n;
    }
    int value_at(int index) const {
        return kind == SpaceKind::Scalar ? index : index + 1;
    }
    int index_of(int value) const {
        return kind == SpaceKind::Scalar ? value : value - 1;
    }
    bool in_domain(int value) const {
        if (kind == SpaceKind::Subset) return value >= 1 && value <= (1 << n) - 1;
        if (kind == SpaceKind::Number) return value >= 1 && value <= n;
        return value >= 0 && value < n;
    }
    bool operator==(const AxisSpace&) const = default;
};

// The value space a rule reads, given its axis and mode.
AxisSpace axis_space(Axis axis, bool position_mode, const ComponentLayout& layout,
                     const AttributeDomain& domain);
inline AxisSpace axis_space(const RuleSpec& r, const ComponentLayout& layout,
                            const AttributeDomain& domain) {
    return axis_space(r.axis, r.position_mode, layout, domain);
}

// Cyclic row-major shift of a slot subset (Progression in position mode).
int cyclic_shift(int mask, int delta, int slot_count);

// ---------------------------------------------------------------------------
// Rule semantics on semantic values. `triple` is the DistributeThree latent
// triple (three distinct in-domain values); it must be present iff the rule is
// DistributeThree (holds/forward) and must be absent otherwise.

bool rule_holds_row_v(const RuleSpec& r, const AxisSpace& sp, int v1, int v2, int v3,
                      const std::vector<int>* triple = nullptr);
bool rule_precondition_v(const RuleSpec& r, const AxisSpace& sp, int v1, int v2,
                         const std::vector<int>* triple = nullptr);
// Throws PreconditionError if the precondition fails (never clamps).
int rule_forward_v(const RuleSpec& r, const AxisSpace& sp, int v1, int v2,
                   const std::vector<int>* triple = nullptr);

// ---------------------------------------------------------------------------
// Public tagged-union value surface.

struct SubsetValue {
    int mask = 0;  // non-empty
    bool operator==(const SubsetValue&) const = default;
};
struct ScalarValue {
    int value = 0;
    bool operator==(const ScalarValue&) const = default;
};
using AxisValue = std::variant<SubsetValue, ScalarValue>;

bool rule_holds_row(const RuleSpec& r, const AxisSpace& sp, const AxisValue& v1,
                    const AxisValue& v2, const AxisValue& v3,
                    const std::vector<AxisValue>* triple_context = nullptr);
bool rule_precondition(const RuleSpec& r, const AxisSpace& sp, const AxisValue& v1,
                       const AxisValue& v2);
AxisValue rule_forward(const RuleSpec& r, const AxisSpace& sp, const AxisValue& v1,
                       const AxisValue& v2,
                       const std::vector<AxisValue>* triple_context = nullptr);

// ---------------------------------------------------------------------------
// Rule catalog: the hypothesis space the posterior is normalized over.
// Deterministic, duplicate-free; rules whose precondition set is empty in the
// given layout/domain are omitted. Arithmetic never appears on Type.
std::vector<RuleSpec> catalog_for_axis(Axis axis, const ComponentLayout& layout,
                                       const AttributeDomain& domain);

}  // namespace rpm
