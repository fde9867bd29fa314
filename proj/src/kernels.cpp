#include "rpm/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace rpm::kern {

namespace scalar {

double sum(const double* x, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
}

double max(const double* x, std::size_t n) {
    double m = x[0];
    for (std::size_t i = 1; i < n; ++i)
        if (x[i] > m) m = x[i];
    return m;
}

double dot(const double* x, const double* y, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
    return s;
}

double sum_exp(const double* x, std::size_t n, double shift) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::exp(x[i] - shift);
    return s;
}

void axpy(double* dst, double a, const double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] += a * x[i];
}

void affine3_product(double* dst, std::size_t n,
                     double a1, const double* x1, double b1, const double* y1,
                     double c1, const double* z1,
                     double a2, const double* x2, double b2, const double* y2,
                     double c2, const double* z2) {
    for (std::size_t i = 0; i < n; ++i) {
        const double u = a1 * x1[i] + b1 * y1[i] + c1 * z1[i];
        const double v = a2 * x2[i] + b2 * y2[i] + c2 * z2[i];
        dst[i] = u * v;
    }
}

}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define RPM_HAVE_AVX2_TU 1
namespace avx2 {
double sum(const double* x, std::size_t n);
double max(const double* x, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
double sum_exp(const double* x, std::size_t n, double shift);
void axpy(double* dst, double a, const double* x, std::size_t n);
void affine3_product(double* dst, std::size_t n,
                     double a1, const double* x1, double b1, const double* y1,
                     double c1, const double* z1,
                     double a2, const double* x2, double b2, const double* y2,
                     double c2, const double* z2);
}  // namespace avx2
#endif

namespace {

struct Vtable {
    double (*sum)(const double*, std::size_t);
    double (*max)(const double*, std::size_t);
    double (*dot)(const double*, const double*, std::size_t);
    double (*sum_exp)(const double*, std::size_t, double);
    void (*axpy)(double*, double, const double*, std::size_t);
    void (*affine3_product)(double*, std::size_t, double, const double*, double,
                            const double*, double, const double*, double,
                            const double*, double, const double*, double,
                            const double*);
};

constexpr Vtable kScalar{scalar::sum, scalar::max, scalar::dot,
                         scalar::sum_exp, scalar::axpy, scalar::affine3_product};

#ifdef RPM_HAVE_AVX2_TU
constexpr Vtable kAvx2{avx2::sum, avx2::max, avx2::dot,
                       avx2::sum_exp, avx2::axpy, avx2::affine3_product};
#endif

bool detect_avx2() {
#ifdef RPM_HAVE_AVX2_TU
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

struct Dispatch {
    const Vtable* table;
    Backend backend;
    Dispatch() {
        backend = detect_avx2() ? Backend::Avx2 : Backend::Scalar;
        if (const char* env = std::getenv("RPM_KERNELS")) {
            const std::string s(env);
            if (s == "scalar") backend = Backend::Scalar;
            else if (s == "avx2" && detect_avx2()) backend = Backend::Avx2;
        }
        set(backend);
    }
    void set(Backend b) {
        backend = b;
#ifdef RPM_HAVE_AVX2_TU
        table = (b == Backend::Avx2) ? &kAvx2 : &kScalar;
#else
        table = &kScalar;
#endif
    }
};

Dispatch& dispatch() {
    static Dispatch d;
    return d;
}

}  // namespace

Backend active_backend() { return dispatch().backend; }
bool avx2_available() { return detect_avx2(); }

void force_backend(Backend b) {
    if (b == Backend::Avx2 && !detect_avx2())
        throw std::invalid_argument("AVX2 backend not available on this CPU");
    dispatch().set(b);
}

std::string backend_name(Backend b) {
    return b == Backend::Avx2 ? "avx2" : "scalar";
}

double sum(const double* x, std::size_t n) { return dispatch().table->sum(x, n); }
double max(const double* x, std::size_t n) { return dispatch().table->max(x, n); }
double dot(const double* x, const double* y, std::size_t n) {
    return dispatch().table->dot(x, y, n);
}
double sum_exp(const double* x, std::size_t n, double shift) {
    return dispatch().table->sum_exp(x, n, shift);
}
void axpy(double* dst, double a, const double* x, std::size_t n) {
    dispatch().table->axpy(dst, a, x, n);
}
void affine3_product(double* dst, std::size_t n,
                     double a1, const double* x1, double b1, const double* y1,
                     double c1, const double* z1,
                     double a2, const double* x2, double b2, const double* y2,
                     double c2, const double* z2) {
    dispatch().table->affine3_product(dst, n, a1, x1, b1, y1, c1, z1,
                                      a2, x2, b2, y2, c2, z2);
}

double logsumexp(std::span<const double> x) {
    if (x.empty()) return -std::numeric_limits<double>::infinity();
    const double m = max(x.data(), x.size());
    if (!std::isfinite(m)) return m;  // all -inf (or a +inf/NaN passes through)
    return m + std::log(sum_exp(x.data(), x.size(), m));
}

}  // namespace rpm::kern
