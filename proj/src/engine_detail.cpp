#include "engine_detail.hpp"

namespace rpm::detail {

D3Result d3_reduce(const D3Inputs& in, std::vector<double>* out) {
    const int m = static_cast<int>(in.x1.size());
    D3Result res;
    if (m < 3) return res;

    std::vector<double> t(m), w2(m);
    const double* x1 = in.x1.data();
    const double* y1 = in.y1.data();
    const double* z1 = in.z1.data();
    const double* x2 = in.x2.data();
    const double* y2 = in.y2.data();
    const double* z2 = in.z2.data();
    const double* p7 = in.p7.data();
    const double* p8 = in.p8.data();

    for (int a = 0; a < m - 2; ++a) {
        for (int b = a + 1; b < m - 1; ++b) {
            // Row permanents as affine functions of the third element c:
            // perm(T) = A*z[c] + B*y[c] + C*x[c].
            const double A1 = x1[a] * y1[b] + x1[b] * y1[a];
            const double B1 = x1[a] * z1[b] + x1[b] * z1[a];
            const double C1 = y1[a] * z1[b] + y1[b] * z1[a];
            const double A2 = x2[a] * y2[b] + x2[b] * y2[a];
            const double B2 = x2[a] * z2[b] + x2[b] * z2[a];
            const double C2 = y2[a] * z2[b] + y2[b] * z2[a];
            const double D = p7[a] * p8[b] + p7[b] * p8[a];
            const double E = p7[a] + p7[b];  // multiplies p8[c]
            const double F = p8[a] + p8[b];  // multiplies p7[c]

            const int c0 = b + 1;
            const std::size_t len = static_cast<std::size_t>(m - c0);
            if (len == 0) continue;
            // t[c] = perm1(T) * perm2(T) for T = {a, b, c}
            kern::affine3_product(t.data() + c0, len,
                                  A1, z1 + c0, B1, y1 + c0, C1, x1 + c0,
                                  A2, z2 + c0, B2, y2 + c0, C2, x2 + c0);
            const double tsum = kern::sum(t.data() + c0, len);
            const double t_dot_p8 = kern::dot(t.data() + c0, p8 + c0, len);
            const double t_dot_p7 = kern::dot(t.data() + c0, p7 + c0, len);
            res.pair_weight += tsum;
            res.score += D * tsum + E * t_dot_p8 + F * t_dot_p7;
            if (out != nullptr) {
                // remainder c: ordered pairs over {a,b}
                kern::axpy(out->data() + c0, D, t.data() + c0, len);
                // remainder a: pairs (b,c) and (c,b); remainder b: (a,c),(c,a)
                (*out)[a] += p7[b] * t_dot_p8 + p8[b] * t_dot_p7;
                (*out)[b] += p7[a] * t_dot_p8 + p8[a] * t_dot_p7;
            }
        }
    }
    return res;
}

}  // namespace rpm::detail
