#pragma once

// Internal machinery shared by the abduction and execution engines: scaled
// linear views of log distributions and the specialized precondition-pair /
// latent-triple reduction loops.

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "rpm/kernels.hpp"
#include "rpm/rules.hpp"
#include "rpm/scene.hpp"

namespace rpm::detail {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Linear probabilities rescaled so the largest entry is 1; the shift is kept
// as a log offset. This is blockwise log-sum-exp: sums of products of scaled
// entries go back to log space via log(sum) + sum-of-offsets.
struct ScaledDist {
    std::vector<double> p;
    double log_scale = 0.0;

    explicit ScaledDist(const LogDist& d) {
        const double m = kern::max(d.logp.data(), d.logp.size());
        log_scale = std::isfinite(m) ? m : 0.0;
        p.resize(d.logp.size());
        for (std::size_t i = 0; i < p.size(); ++i)
            p[i] = std::exp(d.logp[i] - log_scale);
    }
};

// Applies fn(i1, i2, i3) for every dense-index precondition pair of a non-D3
// rule, with i3 the forward image. Iterates only the valid pairs.
template <typename Fn>
void for_each_pre_pair(const RuleSpec& r, const AxisSpace& sp, Fn&& fn) {
    const int m = sp.outcome_count();
    switch (r.kind) {
        case RuleKind::Constant:
            for (int i = 0; i < m; ++i) fn(i, i, i);
            return;
        case RuleKind::Progression:
            if (sp.kind == SpaceKind::Subset) {
                for (int i = 0; i < m; ++i) {
                    const int v2 = cyclic_shift(i + 1, r.param, sp.n);
                    const int v3 = cyclic_shift(v2, r.param, sp.n);
                    fn(i, v2 - 1, v3 - 1);
                }
            } else {
                for (int i = 0; i < m; ++i) {
                    const int v1 = sp.value_at(i);
                    if (!sp.in_domain(v1 + r.param) || !sp.in_domain(v1 + 2 * r.param))
                        continue;
                    fn(i, sp.index_of(v1 + r.param), sp.index_of(v1 + 2 * r.param));
                }
            }
            return;
        case RuleKind::Arithmetic:
            if (sp.kind == SpaceKind::Subset) {
                if (r.param > 0) {
                    for (int a = 1; a <= m; ++a)
                        for (int b = 1; b <= m; ++b) fn(a - 1, b - 1, (a | b) - 1);
                } else {
                    // v2 ranges over proper non-empty submasks of v1.
                    for (int v1 = 1; v1 <= m; ++v1)
                        for (int v2 = (v1 - 1) & v1; v2 != 0; v2 = (v2 - 1) & v1)
                            if (v2 != v1) fn(v1 - 1, v2 - 1, (v1 & ~v2) - 1);
                }
            } else {
                for (int i = 0; i < m; ++i) {
                    const int v1 = sp.value_at(i);
                    for (int j = 0; j < m; ++j) {
                        const int v3 = v1 + r.param * sp.value_at(j);
                        if (sp.in_domain(v3)) fn(i, j, sp.index_of(v3));
                    }
                }
            }
            return;
        case RuleKind::DistributeThree:
            break;  // handled by the triple reductions below
    }
    throw std::invalid_argument("for_each_pre_pair: unsupported rule");
}

// Sum of p1[i1]*p2[i2]*p3[i3] over the precondition pairs (a complete row).
inline double row_product_sum(const RuleSpec& r, const AxisSpace& sp,
                              const std::vector<double>& p1, const std::vector<double>& p2,
                              const std::vector<double>& p3) {
    double s = 0.0;
    for_each_pre_pair(r, sp, [&](int i1, int i2, int i3) { s += p1[i1] * p2[i2] * p3[i3]; });
    return s;
}

// Sum of p1[i1]*p2[i2] over the precondition pairs (the partial third row).
inline double pair_product_sum(const RuleSpec& r, const AxisSpace& sp,
                               const std::vector<double>& p1, const std::vector<double>& p2) {
    if (r.kind == RuleKind::Arithmetic && sp.kind == SpaceKind::Subset && r.param > 0)
        return kern::sum(p1.data(), p1.size()) * kern::sum(p2.data(), p2.size());
    double s = 0.0;
    for_each_pre_pair(r, sp, [&](int i1, int i2, int) { s += p1[i1] * p2[i2]; });
    return s;
}

// DistributeThree reductions over the latent triple T = {a,b,c}. For each row
// with panel vectors (x,y,z), perm(T) = sum over the 6 assignments of T to the
// row; the third-row pair factor is pre(T) = sum over ordered distinct pairs.
// Everything is accumulated with an (a<b) outer loop and a vectorized inner
// loop over c.
struct D3Result {
    double score = 0.0;        // sum_T perm1(T) * perm2(T) * pre3(T)
    double pair_weight = 0.0;  // sum_T perm1(T) * perm2(T)
};

struct D3Inputs {
    // Scaled linear vectors for context panels 1..6 and the third-row pair.
    const std::vector<double>&x1, &y1, &z1;  // row 1 panels
    const std::vector<double>&x2, &y2, &z2;  // row 2 panels
    const std::vector<double>&p7, &p8;       // row 3 pair
};

// If `out` is non-null it receives, per dense outcome index, the executed
// answer mass: sum_T perm1(T)*perm2(T)*[pair mass from T with that remainder].
D3Result d3_reduce(const D3Inputs& in, std::vector<double>* out);

}  // namespace rpm::detail
