#include "sfcalc/simd/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace sfcalc::simd {

namespace {

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void quat_scale_right_scalar(const double* m, const double* q, double* out, std::size_t count) {
    const double qw = q[0], qx = q[1], qy = q[2], qz = q[3];
    for (std::size_t k = 0; k < count; ++k) {
        const double mw = m[4 * k], mx = m[4 * k + 1], my = m[4 * k + 2], mz = m[4 * k + 3];
        out[4 * k]     = mw * qw - mx * qx - my * qy - mz * qz;
        out[4 * k + 1] = mw * qx + mx * qw + my * qz - mz * qy;
        out[4 * k + 2] = mw * qy - mx * qz + my * qw + mz * qx;
        out[4 * k + 3] = mw * qz + mx * qy - my * qx + mz * qw;
    }
}

void quat_scale_left_scalar(const double* q, const double* m, double* out, std::size_t count) {
    const double qw = q[0], qx = q[1], qy = q[2], qz = q[3];
    for (std::size_t k = 0; k < count; ++k) {
        const double mw = m[4 * k], mx = m[4 * k + 1], my = m[4 * k + 2], mz = m[4 * k + 3];
        out[4 * k]     = qw * mw - qx * mx - qy * my - qz * mz;
        out[4 * k + 1] = qw * mx + qx * mw + qy * mz - qz * my;
        out[4 * k + 2] = qw * my - qx * mz + qy * mw + qz * mx;
        out[4 * k + 3] = qw * mz + qx * my - qy * mx + qz * mw;
    }
}

void diag_fold_scalar(const double* q, std::size_t m, double s0, double r2,
                      double a, double b, double* acc) {
    for (std::size_t j = 0; j < m; ++j) {
        const double d = q[j] * q[j] - 2.0 * s0 * q[j] + r2;
        acc[j] += (a - b * q[j]) / d;
    }
}

const Kernels kScalar = {axpy_scalar, quat_scale_right_scalar, quat_scale_left_scalar,
                         diag_fold_scalar, "scalar"};

} // namespace

const Kernels& scalar() { return kScalar; }

#if defined(SFCALC_HAVE_AVX2)
namespace avx2_impl {
extern const Kernels kAvx2;
bool cpu_ok();
} // namespace avx2_impl
#endif

const Kernels* avx2() {
#if defined(SFCALC_HAVE_AVX2)
    return avx2_impl::cpu_ok() ? &avx2_impl::kAvx2 : nullptr;
#else
    return nullptr;
#endif
}

const Kernels& active() {
    static const Kernels* selected = [] {
        if (const char* env = std::getenv("SFCALC_SIMD");
            env && std::strcmp(env, "scalar") == 0)
            return &kScalar;
        if (const Kernels* v = avx2()) return v;
        return &kScalar;
    }();
    return *selected;
}

} // namespace sfcalc::simd
