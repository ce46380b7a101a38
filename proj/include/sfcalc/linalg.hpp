#pragma once

#include <complex>
#include <vector>

#include "sfcalc/errors.hpp"

namespace sfcalc::linalg {

using cd = std::complex<double>;

/// Dense row-major complex matrix.  Sizes in this library stay at desk
/// scale (the complex adjoint of an n x n quaternionic matrix is 2n x 2n),
/// so everything below favors clarity over blocking.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

    static CMatrix identity(int n) {
        CMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    [[nodiscard]] int rows() const { return rows_; }
    [[nodiscard]] int cols() const { return cols_; }

    cd& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const cd& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    [[nodiscard]] double max_abs() const;

    CMatrix& operator+=(const CMatrix& r);
    CMatrix& operator-=(const CMatrix& r);
    CMatrix& operator*=(cd s);

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<cd> a_;
};

CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);

/// Partial-pivot LU factorization.  pivot_ratio = min|u_ii| / max|u_ii|
/// gives a cheap conditioning hint for singularity detection.
struct LU {
    CMatrix lu;
    std::vector<int> perm;
    double pivot_min = 0.0;
    double pivot_max = 0.0;

    [[nodiscard]] double pivot_ratio() const {
        return pivot_max > 0.0 ? pivot_min / pivot_max : 0.0;
    }
    [[nodiscard]] cd det() const;
};

LU lu_factor(const CMatrix& a);

/// Solves A X = B given the factorization of A.
CMatrix lu_solve(const LU& f, const CMatrix& b);

CMatrix inverse(const LU& f);

/// Least-squares solution of the overdetermined system A x = b via
/// Householder QR, m >= n.
std::vector<cd> qr_least_squares(const CMatrix& a, const std::vector<cd>& b);

/// All eigenvalues of a general complex matrix: Householder reduction to
/// Hessenberg form followed by the shifted QR iteration.  Unordered.
std::vector<cd> eigenvalues(const CMatrix& a);

} // namespace sfcalc::linalg
