#include "sfcalc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sfcalc::linalg {

double CMatrix::max_abs() const {
    double m = 0.0;
    for (const cd& v : a_) m = std::max(m, std::abs(v));
    return m;
}

CMatrix& CMatrix::operator+=(const CMatrix& r) {
    for (size_t i = 0; i < a_.size(); ++i) a_[i] += r.a_[i];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& r) {
    for (size_t i = 0; i < a_.size(); ++i) a_[i] -= r.a_[i];
    return *this;
}

CMatrix& CMatrix::operator*=(cd s) {
    for (cd& v : a_) v *= s;
    return *this;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    CMatrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const cd aik = a(i, k);
            if (aik == cd{}) continue;
            for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }

LU lu_factor(const CMatrix& a) {
    const int n = a.rows();
    LU f;
    f.lu = a;
    f.perm.resize(n);
    for (int i = 0; i < n; ++i) f.perm[i] = i;

    f.pivot_min = std::numeric_limits<double>::infinity();
    f.pivot_max = 0.0;
    for (int k = 0; k < n; ++k) {
        int p = k;
        double best = std::abs(f.lu(k, k));
        for (int i = k + 1; i < n; ++i) {
            const double v = std::abs(f.lu(i, k));
            if (v > best) { best = v; p = i; }
        }
        if (p != k) {
            for (int j = 0; j < n; ++j) std::swap(f.lu(k, j), f.lu(p, j));
            std::swap(f.perm[k], f.perm[p]);
        }
        const cd piv = f.lu(k, k);
        const double pa = std::abs(piv);
        f.pivot_min = std::min(f.pivot_min, pa);
        f.pivot_max = std::max(f.pivot_max, pa);
        if (pa == 0.0) continue; // exactly singular; recorded via pivot_min
        for (int i = k + 1; i < n; ++i) {
            const cd m = f.lu(i, k) / piv;
            f.lu(i, k) = m;
            if (m == cd{}) continue;
            for (int j = k + 1; j < n; ++j) f.lu(i, j) -= m * f.lu(k, j);
        }
    }
    if (n == 0) f.pivot_min = f.pivot_max = 1.0;
    return f;
}

cd LU::det() const {
    cd d = 1.0;
    for (int i = 0; i < lu.rows(); ++i) d *= lu(i, i);
    std::vector<int> p = perm;
    int sign = 1;
    for (int i = 0; i < static_cast<int>(p.size()); ++i) {
        while (p[i] != i) {
            std::swap(p[i], p[p[i]]);
            sign = -sign;
        }
    }
    return d * static_cast<double>(sign);
}

CMatrix lu_solve(const LU& f, const CMatrix& b) {
    const int n = f.lu.rows();
    const int m = b.cols();
    if (f.pivot_min == 0.0)
        throw SingularityError("LU solve on exactly singular matrix", 0.0, 0.0);
    CMatrix x(n, m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) x(i, j) = b(f.perm[i], j);
    // forward substitution with unit lower triangle
    for (int k = 0; k < n; ++k)
        for (int i = k + 1; i < n; ++i) {
            const cd m_ik = f.lu(i, k);
            if (m_ik == cd{}) continue;
            for (int j = 0; j < m; ++j) x(i, j) -= m_ik * x(k, j);
        }
    // back substitution
    for (int k = n - 1; k >= 0; --k) {
        const cd d = f.lu(k, k);
        for (int j = 0; j < m; ++j) x(k, j) /= d;
        for (int i = 0; i < k; ++i) {
            const cd u = f.lu(i, k);
            if (u == cd{}) continue;
            for (int j = 0; j < m; ++j) x(i, j) -= u * x(k, j);
        }
    }
    return x;
}

CMatrix inverse(const LU& f) { return lu_solve(f, CMatrix::identity(f.lu.rows())); }

std::vector<cd> qr_least_squares(const CMatrix& a, const std::vector<cd>& b) {
    const int m = a.rows();
    const int n = a.cols();
    CMatrix r = a;
    std::vector<cd> rhs = b;
    for (int k = 0; k < n; ++k) {
        // Householder vector for column k below the diagonal.
        double nx = 0.0;
        for (int i = k; i < m; ++i) nx = std::hypot(nx, std::abs(r(i, k)));
        if (nx == 0.0)
            throw SingularityError("rank-deficient least squares", 0.0, 0.0);
        const cd rkk = r(k, k);
        const cd phase = (std::abs(rkk) > 0.0) ? rkk / std::abs(rkk) : cd{1.0};
        const cd alpha = -phase * nx;
        std::vector<cd> v(m - k);
        v[0] = rkk - alpha;
        for (int i = k + 1; i < m; ++i) v[i - k] = r(i, k);
        double vn2 = 0.0;
        for (const cd& vi : v) vn2 += std::norm(vi);
        if (vn2 == 0.0) continue;
        // apply P = I - 2 v v* / (v* v) to the remaining columns and rhs
        for (int j = k; j < n; ++j) {
            cd s = 0.0;
            for (int i = k; i < m; ++i) s += std::conj(v[i - k]) * r(i, j);
            s *= 2.0 / vn2;
            for (int i = k; i < m; ++i) r(i, j) -= s * v[i - k];
        }
        cd s = 0.0;
        for (int i = k; i < m; ++i) s += std::conj(v[i - k]) * rhs[i];
        s *= 2.0 / vn2;
        for (int i = k; i < m; ++i) rhs[i] -= s * v[i - k];
    }
    std::vector<cd> x(n);
    for (int k = n - 1; k >= 0; --k) {
        cd s = rhs[k];
        for (int j = k + 1; j < n; ++j) s -= r(k, j) * x[j];
        x[k] = s / r(k, k);
    }
    return x;
}

namespace {

// In-place reduction to upper Hessenberg form by Householder reflections.
void hessenberg(CMatrix& h) {
    const int n = h.rows();
    for (int k = 0; k < n - 2; ++k) {
        double nx = 0.0;
        for (int i = k + 1; i < n; ++i) nx = std::hypot(nx, std::abs(h(i, k)));
        if (nx == 0.0) continue;
        const cd x0 = h(k + 1, k);
        const cd phase = (std::abs(x0) > 0.0) ? x0 / std::abs(x0) : cd{1.0};
        const cd alpha = -phase * nx;
        std::vector<cd> v(n - k - 1);
        v[0] = x0 - alpha;
        for (int i = k + 2; i < n; ++i) v[i - k - 1] = h(i, k);
        double vn2 = 0.0;
        for (const cd& vi : v) vn2 += std::norm(vi);
        if (vn2 == 0.0) continue;
        const double beta = 2.0 / vn2;
        // left: H = P H
        for (int j = k; j < n; ++j) {
            cd s = 0.0;
            for (int i = k + 1; i < n; ++i) s += std::conj(v[i - k - 1]) * h(i, j);
            s *= beta;
            for (int i = k + 1; i < n; ++i) h(i, j) -= s * v[i - k - 1];
        }
        // right: H = H P
        for (int i = 0; i < n; ++i) {
            cd s = 0.0;
            for (int j = k + 1; j < n; ++j) s += h(i, j) * v[j - k - 1];
            s *= beta;
            for (int j = k + 1; j < n; ++j) h(i, j) -= s * std::conj(v[j - k - 1]);
        }
    }
}

struct Givens {
    double c;
    cd s;
};

// Rotation G with G * (f, g)^T = (r, 0)^T, c real.
Givens make_givens(cd f, cd g) {
    if (g == cd{}) return {1.0, cd{}};
    if (f == cd{}) {
        // swap-like rotation
        return {0.0, std::conj(g) / std::abs(g)};
    }
    const double fa = std::abs(f);
    const double r = std::hypot(fa, std::abs(g));
    return {fa / r, (f / fa) * std::conj(g) / r};
}

// Wilkinson shift: eigenvalue of the trailing 2x2 block closest to h(m,m).
cd wilkinson_shift(const CMatrix& h, int m) {
    const cd a = h(m - 1, m - 1), b = h(m - 1, m), c = h(m, m - 1), d = h(m, m);
    const cd tr2 = (a + d) * 0.5;
    const cd disc = std::sqrt(tr2 * tr2 - (a * d - b * c));
    const cd l1 = tr2 + disc, l2 = tr2 - disc;
    return (std::abs(l1 - d) < std::abs(l2 - d)) ? l1 : l2;
}

} // namespace

std::vector<cd> eigenvalues(const CMatrix& a) {
    const int n = a.rows();
    std::vector<cd> eig;
    eig.reserve(n);
    if (n == 0) return eig;
    if (n == 1) return {a(0, 0)};

    CMatrix h = a;
    hessenberg(h);

    const double eps = std::numeric_limits<double>::epsilon();
    int hi = n - 1;
    int iter_since_deflation = 0;
    while (hi >= 0) {
        // deflate trivially when possible
        int lo = hi;
        while (lo > 0) {
            const double sub = std::abs(h(lo, lo - 1));
            const double scale = std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo));
            if (sub <= eps * std::max(scale, 1e-300)) {
                h(lo, lo - 1) = 0.0;
                break;
            }
            --lo;
        }
        if (lo == hi) {
            eig.push_back(h(hi, hi));
            --hi;
            iter_since_deflation = 0;
            continue;
        }
        if (++iter_since_deflation > 30 * n)
            throw Error("eigenvalue iteration failed to converge");

        cd shift = wilkinson_shift(h, hi);
        if (iter_since_deflation % 12 == 0) {
            // exceptional shift to break symmetry-induced stalls
            shift = h(hi, hi) + 0.75 * std::abs(h(hi, hi - 1));
        }

        // Explicit single-shift QR sweep on the active window [lo, hi].
        // Rotations stay inside the window; the coupling blocks outside it
        // do not influence the eigenvalues of the deflated blocks.
        std::vector<Givens> rots(hi - lo);
        for (int k = lo; k <= hi; ++k) h(k, k) -= shift;
        for (int k = lo; k < hi; ++k) {
            const Givens g = make_givens(h(k, k), h(k + 1, k));
            rots[k - lo] = g;
            for (int j = k; j <= hi; ++j) {
                const cd t1 = h(k, j), t2 = h(k + 1, j);
                h(k, j) = g.c * t1 + g.s * t2;
                h(k + 1, j) = -std::conj(g.s) * t1 + g.c * t2;
            }
        }
        for (int k = lo; k < hi; ++k) {
            const Givens g = rots[k - lo];
            for (int i = lo; i <= std::min(hi, k + 1); ++i) {
                const cd t1 = h(i, k), t2 = h(i, k + 1);
                h(i, k) = g.c * t1 + std::conj(g.s) * t2;
                h(i, k + 1) = -g.s * t1 + g.c * t2;
            }
        }
        for (int k = lo; k <= hi; ++k) h(k, k) += shift;
    }
    return eig;
}

} // namespace sfcalc::linalg
