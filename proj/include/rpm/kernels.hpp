#pragma once

#include <cstddef>
#include <span>
#include <string>

// Data-parallel reduction kernels behind the probabilistic engines.
// Scalar reference implementations always exist; an AVX2 variant is selected
// at runtime when the CPU supports it. RPM_KERNELS=scalar|avx2 forces a backend.
// The two backends are equivalence-tested against each other.

namespace rpm::kern {

enum class Backend { Scalar, Avx2 };

Backend active_backend();
bool avx2_available();
// Throws std::invalid_argument if the backend is unavailable on this CPU.
void force_backend(Backend b);
std::string backend_name(Backend b);

double sum(const double* x, std::size_t n);
double max(const double* x, std::size_t n);            // n >= 1
double dot(const double* x, const double* y, std::size_t n);
double sum_exp(const double* x, std::size_t n, double shift);  // sum_i exp(x[i] - shift)
void axpy(double* dst, double a, const double* x, std::size_t n);
// dst[i] = (a1*x1[i] + b1*y1[i] + c1*z1[i]) * (a2*x2[i] + b2*y2[i] + c2*z2[i])
void affine3_product(double* dst, std::size_t n,
                     double a1, const double* x1, double b1, const double* y1,
                     double c1, const double* z1,
                     double a2, const double* x2, double b2, const double* y2,
                     double c2, const double* z2);

inline double sum(std::span<const double> x) { return sum(x.data(), x.size()); }
inline double max(std::span<const double> x) { return max(x.data(), x.size()); }
inline double dot(std::span<const double> x, std::span<const double> y) {
    return dot(x.data(), y.data(), x.size());
}

// log(sum_i exp(x[i])); -inf entries contribute zero mass. Returns -inf for
// all -inf input (or n == 0).
double logsumexp(std::span<const double> x);

}  // namespace rpm::kern
