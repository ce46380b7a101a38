#include "sfcalc/qmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "sfcalc/simd/kernels.hpp"

namespace sfcalc {

std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
    return os << '[' << q.w << ',' << q.x << ',' << q.y << ',' << q.z << ']';
}

std::ostream& operator<<(std::ostream& os, const Sphere& s) {
    return os << '(' << s.s0 << ',' << s.s1 << ')';
}

double QMatrix::max_norm() const {
    double m = 0.0;
    for (const Quaternion& q : e_) m = std::max(m, q.norm());
    return m;
}

QMatrix& QMatrix::operator+=(const QMatrix& r) {
    for (size_t i = 0; i < e_.size(); ++i) e_[i] += r.e_[i];
    return *this;
}

QMatrix& QMatrix::operator-=(const QMatrix& r) {
    for (size_t i = 0; i < e_.size(); ++i) e_[i] -= r.e_[i];
    return *this;
}

QMatrix& QMatrix::operator*=(double s) {
    for (Quaternion& q : e_) q *= s;
    return *this;
}

QMatrix QMatrix::scaled_right(const Quaternion& a) const {
    QMatrix out(n_);
    simd::active().quat_scale_right(reinterpret_cast<const double*>(e_.data()),
                                    reinterpret_cast<const double*>(&a),
                                    reinterpret_cast<double*>(out.e_.data()), e_.size());
    return out;
}

QMatrix QMatrix::scaled_left(const Quaternion& a) const {
    QMatrix out(n_);
    simd::active().quat_scale_left(reinterpret_cast<const double*>(&a),
                                   reinterpret_cast<const double*>(e_.data()),
                                   reinterpret_cast<double*>(out.e_.data()), e_.size());
    return out;
}

void QMatrix::add_scaled(double c, const QMatrix& x) {
    simd::active().axpy(c, reinterpret_cast<const double*>(x.e_.data()),
                        reinterpret_cast<double*>(e_.data()), 4 * e_.size());
}

QMatrix operator+(QMatrix a, const QMatrix& b) { return a += b; }
QMatrix operator-(QMatrix a, const QMatrix& b) { return a -= b; }
QMatrix operator*(QMatrix a, double s) { return a *= s; }
QMatrix operator*(double s, QMatrix a) { return a *= s; }

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
    const int n = a.dim();
    QMatrix c(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const Quaternion& aik = a(i, k);
            for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

QVector mat_vec(const QMatrix& m, const QVector& v) {
    const int n = m.dim();
    QVector out(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out[i] += m(i, j) * v[j];
    return out;
}

QVector operator*(const QVector& v, const Quaternion& a) {
    QVector out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = v[i] * a;
    return out;
}

QVector operator*(const Quaternion& a, const QVector& v) {
    QVector out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = a * v[i];
    return out;
}

QVector operator+(QVector a, const QVector& b) {
    for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

QVector operator-(QVector a, const QVector& b) {
    for (size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

double max_norm(const QVector& v) {
    double m = 0.0;
    for (const Quaternion& q : v) m = std::max(m, q.norm());
    return m;
}

bool approx_equal(const QMatrix& a, const QMatrix& b, double tol) {
    if (a.dim() != b.dim()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (!approx_equal(a.data()[i], b.data()[i], tol)) return false;
    return true;
}

linalg::CMatrix complex_adjoint(const QMatrix& t) {
    const int n = t.dim();
    linalg::CMatrix c(2 * n, 2 * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Quaternion& q = t(i, j);
            const cd a{q.w, q.x};
            const cd b{q.y, q.z};
            c(i, j) = a;
            c(i, j + n) = b;
            c(i + n, j) = -std::conj(b);
            c(i + n, j + n) = std::conj(a);
        }
    return c;
}

QMatrix from_complex_adjoint(const linalg::CMatrix& c) {
    const int n = c.rows() / 2;
    QMatrix t(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const cd a = c(i, j);
            const cd b = c(i, j + n);
            t(i, j) = {a.real(), a.imag(), b.real(), b.imag()};
        }
    return t;
}

bool SSpectrum::contains(const Sphere& s, double tol) const {
    if (real_line && s.s1 <= tol) return true;
    for (const Sphere& t : spheres)
        if (sphere_dist(s, t) <= tol) return true;
    return false;
}

SSpectrum s_spectrum(const QMatrix& t) {
    std::vector<cd> eig;
    try {
        eig = linalg::eigenvalues(complex_adjoint(t));
    } catch (const Error& e) {
        throw Error(std::string("s_spectrum: eigenvalue solver failed: ") + e.what());
    }
    SSpectrum spec;
    for (const cd& l : eig) {
        Sphere s{l.real(), std::abs(l.imag())};
        if (s.s1 < kSphereMergeTol) s.s1 = 0.0;
        bool merged = false;
        for (const Sphere& u : spec.spheres)
            if (std::abs(u.s0 - s.s0) <= kSphereMergeTol && std::abs(u.s1 - s.s1) <= kSphereMergeTol) {
                merged = true;
                break;
            }
        if (!merged) spec.spheres.push_back(s);
    }
    std::sort(spec.spheres.begin(), spec.spheres.end(), [](const Sphere& a, const Sphere& b) {
        return a.s0 != b.s0 ? a.s0 < b.s0 : a.s1 < b.s1;
    });
    return spec;
}

QMatrix q_operator(const QMatrix& t, const Quaternion& s) {
    QMatrix q = t * t;
    q.add_scaled(-2.0 * s.re(), t);
    QMatrix id = QMatrix::identity(t.dim());
    q.add_scaled(s.norm_sq(), id);
    return q;
}

PseudoResolvent pseudo_resolvent(const QMatrix& t, const Quaternion& s) {
    const QMatrix q = q_operator(t, s);
    const linalg::LU f = linalg::lu_factor(complex_adjoint(q));
    if (f.pivot_ratio() < kSingularPivotRatio) {
        const Sphere sp = sphere_of(s);
        std::ostringstream msg;
        msg << "pseudo-resolvent singular at sphere " << sp;
        throw SingularityError(msg.str(), sp.s0, sp.s1);
    }
    PseudoResolvent out{from_complex_adjoint(linalg::inverse(f)),
                        f.pivot_ratio() < 1.0 / kCondWarnLevel};
    return out;
}

QMatrix s_resolvent_left(const QMatrix& t, const Quaternion& s) {
    const QMatrix qi = pseudo_resolvent(t, s).inv;
    return qi.scaled_right(s.conj()) - t * qi;
}

QMatrix s_resolvent_right(const QMatrix& t, const Quaternion& s) {
    const QMatrix qi = pseudo_resolvent(t, s).inv;
    return qi.scaled_left(s.conj()) - t * qi;
}

DiagonalOperator::DiagonalOperator(QVector syms, SSpectrum clo)
    : symbols(std::move(syms)), closure(std::move(clo)) {
    for (const Quaternion& q : symbols) {
        if (!closure.contains(sphere_of(q), 1e-9))
            throw PreconditionError("diagonal symbol outside the declared spectrum closure");
    }
}

QVector diag_pseudo_resolvent(const DiagonalOperator& d, const Quaternion& s) {
    QVector out;
    out.reserve(d.symbols.size());
    const double re2 = 2.0 * s.re();
    const double r2 = s.norm_sq();
    for (const Quaternion& q : d.symbols) {
        const Quaternion den = q * q - q * re2 + Quaternion{r2};
        if (den.norm() < 1e-13) {
            const Sphere sp = sphere_of(s);
            throw SingularityError("diagonal pseudo-resolvent singular", sp.s0, sp.s1);
        }
        out.push_back(inverse(den));
    }
    return out;
}

} // namespace sfcalc
