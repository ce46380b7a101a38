#pragma once

#include <cstddef>

namespace sfcalc::simd {

/// Inner-loop kernels of the quadrature accumulations.  Quaternions are
/// passed as AoS doubles (w,x,y,z per element).  All variants of one
/// kernel compute the same sums in the same order, so results agree to
/// rounding (FMA contraction aside); the equivalence suite pins that down.
struct Kernels {
    /// y[i] += a * x[i]
    void (*axpy)(double a, const double* x, double* y, std::size_t n);
    /// out[k] = m[k] * q   (Hamilton product, broadcast right factor)
    void (*quat_scale_right)(const double* m, const double* q, double* out, std::size_t count);
    /// out[k] = q * m[k]   (broadcast left factor)
    void (*quat_scale_left)(const double* q, const double* m, double* out, std::size_t count);
    /// acc[j] += (a - b*q[j]) / (q[j]^2 - 2*s0*q[j] + r2)  for real symbols q
    void (*diag_fold)(const double* q, std::size_t m, double s0, double r2,
                      double a, double b, double* acc);
    const char* name;
};

/// Kernels selected at startup: AVX2 when the CPU supports it, scalar
/// otherwise.  SFCALC_SIMD=scalar in the environment forces the reference
/// path.
const Kernels& active();

/// Portable reference implementation.
const Kernels& scalar();

/// AVX2 implementation, or nullptr when not compiled in / not supported
/// by the executing CPU.
const Kernels* avx2();

} // namespace sfcalc::simd
