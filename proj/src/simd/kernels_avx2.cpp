// AVX2/FMA variants of the quadrature kernels.  This translation unit is
// compiled with -mavx2 -mfma; callers reach it only through the runtime
// dispatch in kernels.cpp.
#include "sfcalc/simd/kernels.hpp"

#if defined(SFCALC_HAVE_AVX2)

#include <immintrin.h>

namespace sfcalc::simd::avx2_impl {

namespace {

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vx = _mm256_loadu_pd(x + i);
        const __m256d vy = _mm256_loadu_pd(y + i);
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, vx, vy));
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

// out = m * q with one quaternion per 256-bit lane:
// out = mw*(qw,qx,qy,qz) + mx*(-qx,qw,qz,-qy) + my*(-qy,-qz,qw,qx) + mz*(-qz,qy,-qx,qw)
void quat_scale_right_avx2(const double* m, const double* q, double* out, std::size_t count) {
    const double qw = q[0], qx = q[1], qy = q[2], qz = q[3];
    const __m256d c0 = _mm256_set_pd(qz, qy, qx, qw);
    const __m256d c1 = _mm256_set_pd(qy, -qz, qw, -qx);
    const __m256d c2 = _mm256_set_pd(-qx, qw, qz, -qy);
    const __m256d c3 = _mm256_set_pd(qw, qx, -qy, -qz);
    for (std::size_t k = 0; k < count; ++k) {
        const double* p = m + 4 * k;
        __m256d r = _mm256_mul_pd(_mm256_set1_pd(p[0]), c0);
        r = _mm256_fmadd_pd(_mm256_set1_pd(p[1]), c1, r);
        r = _mm256_fmadd_pd(_mm256_set1_pd(p[2]), c2, r);
        r = _mm256_fmadd_pd(_mm256_set1_pd(p[3]), c3, r);
        _mm256_storeu_pd(out + 4 * k, r);
    }
}

// out = q * m:
// out = mw*(qw,qx,qy,qz) + mx*(-qx,qw,-qz,qy) + my*(-qy,qz,qw,-qx) + mz*(-qz,-qy,qx,qw)
void quat_scale_left_avx2(const double* q, const double* m, double* out, std::size_t count) {
    const double qw = q[0], qx = q[1], qy = q[2], qz = q[3];
    const __m256d c0 = _mm256_set_pd(qz, qy, qx, qw);
    const __m256d c1 = _mm256_set_pd(-qy, qz, qw, -qx);
    const __m256d c2 = _mm256_set_pd(qx, qw, -qz, -qy);
    const __m256d c3 = _mm256_set_pd(qw, -qx, qy, -qz);
    for (std::size_t k = 0; k < count; ++k) {
        const double* p = m + 4 * k;
        __m256d r = _mm256_mul_pd(_mm256_set1_pd(p[0]), c0);
        r = _mm256_fmadd_pd(_mm256_set1_pd(p[1]), c1, r);
        r = _mm256_fmadd_pd(_mm256_set1_pd(p[2]), c2, r);
        r = _mm256_fmadd_pd(_mm256_set1_pd(p[3]), c3, r);
        _mm256_storeu_pd(out + 4 * k, r);
    }
}

void diag_fold_avx2(const double* q, std::size_t m, double s0, double r2,
                    double a, double b, double* acc) {
    const __m256d vs0x2 = _mm256_set1_pd(2.0 * s0);
    const __m256d vr2 = _mm256_set1_pd(r2);
    const __m256d va = _mm256_set1_pd(a);
    const __m256d vb = _mm256_set1_pd(b);
    std::size_t j = 0;
    for (; j + 4 <= m; j += 4) {
        const __m256d vq = _mm256_loadu_pd(q + j);
        const __m256d d = _mm256_fmadd_pd(vq, vq, _mm256_fnmadd_pd(vs0x2, vq, vr2));
        const __m256d num = _mm256_fnmadd_pd(vb, vq, va); // a - b*q
        const __m256d vacc = _mm256_loadu_pd(acc + j);
        _mm256_storeu_pd(acc + j, _mm256_add_pd(vacc, _mm256_div_pd(num, d)));
    }
    for (; j < m; ++j) {
        const double d = q[j] * q[j] - 2.0 * s0 * q[j] + r2;
        acc[j] += (a - b * q[j]) / d;
    }
}

} // namespace

extern const Kernels kAvx2;
const Kernels kAvx2 = {axpy_avx2, quat_scale_right_avx2, quat_scale_left_avx2,
                       diag_fold_avx2, "avx2"};

bool cpu_ok() { return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"); }

} // namespace sfcalc::simd::avx2_impl

#endif // SFCALC_HAVE_AVX2
