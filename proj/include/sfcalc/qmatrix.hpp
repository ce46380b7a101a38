#pragma once

#include <optional>
#include <vector>

#include "sfcalc/linalg.hpp"
#include "sfcalc/quaternion.hpp"

namespace sfcalc {

/// Sphere-merge tolerance for spectra assembled from eigenvalues of the
/// complex adjoint; absorbs eigensolver noise.
inline constexpr double kSphereMergeTol = 1e-8;

/// Pivot-ratio threshold below which a pseudo-resolvent solve is treated
/// as singular, and the condition level that only triggers a warning flag.
inline constexpr double kSingularPivotRatio = 1e-14;
inline constexpr double kCondWarnLevel = 1e12;

using QVector = std::vector<Quaternion>;

/// n x n quaternionic matrix acting as a right-linear operator on H^n:
/// (T v)_i = sum_j t_ij v_j, scalars applied to vectors on the right.
class QMatrix {
public:
    QMatrix() = default;
    explicit QMatrix(int n) : n_(n), e_(static_cast<size_t>(n) * n) {}

    static QMatrix identity(int n) {
        QMatrix m(n);
        for (int i = 0; i < n; ++i) m(i, i) = Quaternion::one();
        return m;
    }
    static QMatrix diagonal(const QVector& d) {
        QMatrix m(static_cast<int>(d.size()));
        for (int i = 0; i < m.n_; ++i) m(i, i) = d[i];
        return m;
    }

    [[nodiscard]] int dim() const { return n_; }

    Quaternion& operator()(int i, int j) { return e_[static_cast<size_t>(i) * n_ + j]; }
    const Quaternion& operator()(int i, int j) const { return e_[static_cast<size_t>(i) * n_ + j]; }

    [[nodiscard]] const Quaternion* data() const { return e_.data(); }
    Quaternion* data() { return e_.data(); }
    [[nodiscard]] size_t size() const { return e_.size(); }

    [[nodiscard]] double max_norm() const;

    QMatrix& operator+=(const QMatrix& r);
    QMatrix& operator-=(const QMatrix& r);
    QMatrix& operator*=(double s);

    /// Entrywise right multiplication by a scalar: T |-> T a, i.e. (Ta)(v) = T(av).
    [[nodiscard]] QMatrix scaled_right(const Quaternion& a) const;
    /// Entrywise left multiplication by a scalar: T |-> a T.
    [[nodiscard]] QMatrix scaled_left(const Quaternion& a) const;
    /// In-place y += c * x with a real coefficient (quadrature accumulation).
    void add_scaled(double c, const QMatrix& x);

private:
    int n_ = 0;
    std::vector<Quaternion> e_;
};

QMatrix operator+(QMatrix a, const QMatrix& b);
QMatrix operator-(QMatrix a, const QMatrix& b);
QMatrix operator*(const QMatrix& a, const QMatrix& b);
QMatrix operator*(QMatrix a, double s);
QMatrix operator*(double s, QMatrix a);

QVector mat_vec(const QMatrix& m, const QVector& v);
QVector operator*(const QVector& v, const Quaternion& a); // v a, entrywise right
QVector operator*(const Quaternion& a, const QVector& v); // a v, entrywise left
QVector operator+(QVector a, const QVector& b);
QVector operator-(QVector a, const QVector& b);
double max_norm(const QVector& v);

bool approx_equal(const QMatrix& a, const QMatrix& b, double tol = kDefaultEqTol);

/// Complex adjoint of T with respect to the splitting H = C_I + C_I J:
/// each entry t = a + bJ contributes blocks [[a, b], [-conj b, conj a]].
/// The map is an algebra homomorphism.
linalg::CMatrix complex_adjoint(const QMatrix& t);

/// Reassembles a quaternionic matrix from the block structure above.
QMatrix from_complex_adjoint(const linalg::CMatrix& c);

/// Finite spectrum made of spheres [s] = (s0, s1), plus flags for the
/// extended spectrum: infinity, and closures containing the whole real
/// axis (declared diagonal models).
struct SSpectrum {
    std::vector<Sphere> spheres;
    bool includes_infinity = false;
    bool real_line = false;

    [[nodiscard]] bool contains(const Sphere& s, double tol = kSphereMergeTol) const;
};

/// S-spectrum of a quaternionic matrix via the eigenvalues of its complex
/// adjoint; conjugate pairs collapse onto spheres, duplicates merge within
/// kSphereMergeTol.  Equals the set of right eigenvalues.
SSpectrum s_spectrum(const QMatrix& t);

/// Q_s(T) = T^2 - 2 Re(s) T + |s|^2 I.
QMatrix q_operator(const QMatrix& t, const Quaternion& s);

struct PseudoResolvent {
    QMatrix inv;          ///< Q_s(T)^{-1}
    bool ill_conditioned; ///< pivot ratio fell below 1/kCondWarnLevel
};

/// Inverse of Q_s(T) via a partial-pivot solve on the complex adjoint.
/// Throws SingularityError carrying [s] when s lies (numerically) on the
/// spectrum.
PseudoResolvent pseudo_resolvent(const QMatrix& t, const Quaternion& s);

/// S_L^{-1}(s,T) = Q_s(T)^{-1} conj(s) - T Q_s(T)^{-1}.
QMatrix s_resolvent_left(const QMatrix& t, const Quaternion& s);

/// S_R^{-1}(s,T) = -(T - I conj(s)) Q_s(T)^{-1}.
QMatrix s_resolvent_right(const QMatrix& t, const Quaternion& s);

/// Diagonal operator given by finitely many symbols q_k evaluated
/// entrywise, together with a declared spectrum closure that may be
/// strictly larger than the symbol spheres (e.g. the whole real axis).
struct DiagonalOperator {
    QVector symbols;
    SSpectrum closure;

    DiagonalOperator(QVector syms, SSpectrum clo);
};

/// Entrywise pseudo-resolvent (q_k^2 - 2 Re(s) q_k + |s|^2)^{-1}.
QVector diag_pseudo_resolvent(const DiagonalOperator& d, const Quaternion& s);

} // namespace sfcalc
