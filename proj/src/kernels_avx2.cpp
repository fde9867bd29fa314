// AVX2 kernel variants. Compiled with -mavx2; only reached after the runtime
// cpuid check in kernels.cpp.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>
#include <cstddef>

namespace rpm::kern::avx2 {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d swapped = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

inline double hmax(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_max_pd(lo, hi);
    __m128d swapped = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_max_sd(lo, swapped));
}

}  // namespace

double sum(const double* x, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
        acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(x + i + 4));
    }
    for (; i + 4 <= n; i += 4) acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) s += x[i];
    return s;
}

double max(const double* x, std::size_t n) {
    std::size_t i = 0;
    double m = x[0];
    if (n >= 4) {
        __m256d acc = _mm256_loadu_pd(x);
        for (i = 4; i + 4 <= n; i += 4)
            acc = _mm256_max_pd(acc, _mm256_loadu_pd(x + i));
        m = hmax(acc);
    }
    for (; i < n; ++i)
        if (x[i] > m) m = x[i];
    return m;
}

double dot(const double* x, const double* y, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4)
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) s += x[i] * y[i];
    return s;
}

// exp stays scalar; the four-way accumulation still narrows the dependency chain.
double sum_exp(const double* x, std::size_t n, double shift) {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        s0 += std::exp(x[i] - shift);
        s1 += std::exp(x[i + 1] - shift);
        s2 += std::exp(x[i + 2] - shift);
        s3 += std::exp(x[i + 3] - shift);
    }
    for (; i < n; ++i) s0 += std::exp(x[i] - shift);
    return (s0 + s1) + (s2 + s3);
}

void axpy(double* dst, double a, const double* x, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_loadu_pd(dst + i);
        d = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), d);
        _mm256_storeu_pd(dst + i, d);
    }
    for (; i < n; ++i) dst[i] += a * x[i];
}

void affine3_product(double* dst, std::size_t n,
                     double a1, const double* x1, double b1, const double* y1,
                     double c1, const double* z1,
                     double a2, const double* x2, double b2, const double* y2,
                     double c2, const double* z2) {
    const __m256d va1 = _mm256_set1_pd(a1), vb1 = _mm256_set1_pd(b1),
                  vc1 = _mm256_set1_pd(c1);
    const __m256d va2 = _mm256_set1_pd(a2), vb2 = _mm256_set1_pd(b2),
                  vc2 = _mm256_set1_pd(c2);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d u = _mm256_mul_pd(va1, _mm256_loadu_pd(x1 + i));
        u = _mm256_fmadd_pd(vb1, _mm256_loadu_pd(y1 + i), u);
        u = _mm256_fmadd_pd(vc1, _mm256_loadu_pd(z1 + i), u);
        __m256d v = _mm256_mul_pd(va2, _mm256_loadu_pd(x2 + i));
        v = _mm256_fmadd_pd(vb2, _mm256_loadu_pd(y2 + i), v);
        v = _mm256_fmadd_pd(vc2, _mm256_loadu_pd(z2 + i), v);
        _mm256_storeu_pd(dst + i, _mm256_mul_pd(u, v));
    }
    for (; i < n; ++i) {
        const double u = a1 * x1[i] + b1 * y1[i] + c1 * z1[i];
        const double v = a2 * x2[i] + b2 * y2[i] + c2 * z2[i];
        dst[i] = u * v;
    }
}

}  // namespace rpm::kern::avx2

#endif  // x86_64
