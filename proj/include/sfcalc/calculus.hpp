#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sfcalc/contour.hpp"
#include "sfcalc/qmatrix.hpp"
#include "sfcalc/slicefn.hpp"

namespace sfcalc {

struct Diagnostics {
    int nodes = 0;            ///< nodes per curve of the reported operator
    double est_error = 0.0;   ///< max-norm difference between N and 2N node runs
    double tail_bound = 0.0;  ///< magnitude of the far-closure (arc) contribution
    std::string contour;
    ImaginaryUnit unit;
    bool resolvent_warning = false; ///< a pseudo-resolvent solve was ill-conditioned
};

/// Verification tolerance tied to the quadrature accuracy of a result.
inline double verify_tolerance(const Diagnostics& d) {
    return std::max(1e-9, 10.0 * d.est_error);
}

struct CalcResult {
    QMatrix op;
    Diagnostics diag;
};

struct DiagCalcResult {
    QVector values;
    Diagnostics diag;
};

/// f(T) = f(inf) I + (1/2pi) oint S_L^{-1}(s,T) ds_I f(s); the f(inf)
/// term enters exactly when the domain is unbounded.  f must be left
/// slice hyperholomorphic (left, two-sided or intrinsic chirality), the
/// S-spectrum of T must lie inside the domain, and the closure of the
/// domain inside the regions of f.
CalcResult apply_left(const SliceFunction& f, const QMatrix& t, const SliceCauchyDomain& domain,
                      const ImaginaryUnit& unit, int nodes = kDefaultNodesPerCurve);

/// f(T) = f(inf) I + (1/2pi) oint f(s) ds_I S_R^{-1}(s,T).
CalcResult apply_right(const SliceFunction& f, const QMatrix& t, const SliceCauchyDomain& domain,
                       const ImaginaryUnit& unit, int nodes = kDefaultNodesPerCurve);

/// Intrinsic fast path: the integral folded onto the upper-half curves
/// with real weights, plus a consistency assertion against the left and
/// right routes (they must give the same operator).
CalcResult apply_intrinsic(const SliceFunction& f, const QMatrix& t,
                           const SliceCauchyDomain& domain, const ImaginaryUnit& unit,
                           int nodes = kDefaultNodesPerCurve);

/// Entrywise intrinsic calculus for diagonal models.
DiagCalcResult apply_intrinsic(const SliceFunction& f, const DiagonalOperator& d,
                               const SliceCauchyDomain& domain, const ImaginaryUnit& unit,
                               int nodes = kDefaultNodesPerCurve);

struct ProjectionResult {
    QMatrix projection;
    Diagnostics diag;
    SliceCauchyDomain domain;
    std::vector<int> selected_components;
};

/// Spectral projection E_sigma = chi_sigma(T) onto the invariant subspace
/// of the selected spectral spheres.  The selected spheres must be
/// separated from the rest of the spectrum by at least 2*clearance.
ProjectionResult spectral_projection(const QMatrix& t, const std::vector<Sphere>& selected,
                                     double clearance,
                                     const ImaginaryUnit& unit = ImaginaryUnit::i(),
                                     int nodes = kDefaultNodesPerCurve);

struct RestrictResult {
    QMatrix op;                ///< T restricted to ran E, in the extracted basis
    std::vector<QVector> basis; ///< right-linearly independent columns spanning ran E
};

/// Restricts T to the range of a projection E commuting with T.  The
/// basis comes from column-pivoted elimination over H with pivot
/// threshold 1e-10 (rank detection through the complex adjoint).
RestrictResult restrict_to_range(const QMatrix& t, const QMatrix& e, double tol = 1e-7);

/// P(T) = sum a_k T^k by Horner evaluation (real coefficients).
QMatrix poly_apply(const std::vector<double>& coeffs, const QMatrix& t);

/// Image of a sphere set under an intrinsic function (slicewise).
std::vector<Sphere> map_spheres(const SliceFunction& f, const std::vector<Sphere>& spheres);

/// Hausdorff distance between sphere sets in half-plane coordinates.
double sphere_hausdorff(const std::vector<Sphere>& a, const std::vector<Sphere>& b);

struct CheckLine {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct IdentityReport {
    std::vector<CheckLine> checks;
    [[nodiscard]] bool all_pass() const;
    CheckLine& add(const std::string& name, double residual, double tolerance);
};

struct VerifyConfig {
    double clearance = 0.4;
    int nodes = kDefaultNodesPerCurve;
    ImaginaryUnit unit = ImaginaryUnit::i();
    ImaginaryUnit unit_alt = ImaginaryUnit::j();
    std::uint64_t seed = 1;
    // diagonal models: tube height, closure radius, nodes per line
    double diag_eps = 0.5;
    double diag_truncation = 40.0;
    int diag_nodes = 4096;
};

/// Runs the default identity suite on one matrix: S-resolvent equations,
/// product rule, intrinsic left=right, contour/unit independence,
/// spectral mapping, composition, polynomial consistency and the
/// projection algebra.  Failures become report lines, not exceptions.
IdentityReport verify_identities(const QMatrix& t, const VerifyConfig& cfg = {});

/// Entrywise checks for diagonal models: intrinsic calculus against
/// direct evaluation and the polynomial product rule.
IdentityReport verify_diagonal(const DiagonalOperator& d, const VerifyConfig& cfg = {});

} // namespace sfcalc
