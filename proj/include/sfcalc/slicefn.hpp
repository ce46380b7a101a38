#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "sfcalc/contour.hpp"
#include "sfcalc/quaternion.hpp"
#include "sfcalc/region.hpp"

namespace sfcalc {

/// Tolerance for the sampled intrinsic check (f(conj x) = conj f(x) and
/// real-valued stems).
inline constexpr double kIntrinsicTol = 1e-10;
/// Finite-difference Cauchy-Riemann residual allowed for stored stems.
inline constexpr double kCauchyRiemannTol = 1e-6;
/// Radius of the punctures placed around poles of rational functions.
inline constexpr double kPoleExclusion = 1e-8;

enum class Chirality {
    Left,     ///< f = alpha + I_x beta
    Right,    ///< f = alpha + beta I_x
    TwoSided, ///< beta real-valued: both readings coincide
    Intrinsic ///< alpha and beta real-valued
};

/// Stem pair (alpha, beta) at a point of the closed upper half plane.
struct StemValue {
    Quaternion alpha;
    Quaternion beta;
};

/// Slice function given by stem pairs on finitely many axially symmetric
/// regions, evaluated as alpha + I_x beta (left) or alpha + beta I_x
/// (right).  Only x1 >= 0 is stored; the lower half plane is reached via
/// the even/odd symmetry of the stems.
class SliceFunction {
public:
    using StemFn = std::function<StemValue(double, double)>;

    struct Component {
        RegionList region;
        StemFn stem;
    };

    SliceFunction(std::vector<Component> comps, Chirality chi,
                  std::optional<Quaternion> at_infinity = std::nullopt);

    [[nodiscard]] Chirality chirality() const { return chi_; }
    [[nodiscard]] const std::optional<Quaternion>& at_infinity() const { return at_inf_; }
    [[nodiscard]] const std::vector<Component>& components() const { return comps_; }
    [[nodiscard]] bool defined_at(double x0, double x1) const;
    [[nodiscard]] bool has_unbounded_region() const;

    [[nodiscard]] bool left_compatible() const { return chi_ != Chirality::Right; }
    [[nodiscard]] bool right_compatible() const { return chi_ != Chirality::Left; }

    /// Stem values at a half-plane point; throws DomainError outside all
    /// component regions.
    [[nodiscard]] StemValue stem_at(double x0, double x1) const;

    /// Value at a quaternion, using the chirality evaluation rule.
    [[nodiscard]] Quaternion eval(const Quaternion& x) const;

    /// Value at the plane point z of C_u; z may lie in the lower half
    /// plane (the reflected stems are used).
    [[nodiscard]] Quaternion value_on_plane(cd z, const ImaginaryUnit& u) const;

    /// Intrinsic fast path: the value at z in any slice, as a complex
    /// number (requires real stems).
    [[nodiscard]] cd complex_value(cd z) const;

    /// --- built-in constructors addressable from the CLI ---

    /// Intrinsic polynomial a0 + a1 s + ... (real coefficients).
    static SliceFunction polynomial(std::vector<double> coeffs);
    /// Intrinsic rational p(s)/q(s), real coefficients; punctures are
    /// placed at the pole spheres.  Carries f(infinity) when deg p <= deg q.
    static SliceFunction rational(std::vector<double> num, std::vector<double> den);
    /// Intrinsic exponential (entire, no value at infinity).
    static SliceFunction exponential();
    /// Globally constant function (two-sided; intrinsic when real).
    static SliceFunction constant(const Quaternion& c);
    /// Locally constant function taking value values[k] on the k-th
    /// component of the domain.
    static SliceFunction constants_on(const SliceCauchyDomain& d, std::vector<Quaternion> values);
    /// Characteristic function of the selected components of the domain:
    /// 1 on them, 0 on the rest; f(infinity) = 1 iff an unbounded
    /// component is selected.
    static SliceFunction characteristic(const SliceCauchyDomain& d,
                                        const std::vector<int>& selected);

private:
    std::vector<Component> comps_;
    Chirality chi_;
    std::optional<Quaternion> at_inf_;
};

/// Slice hyperholomorphic extension of a holomorphic function h on a
/// region of C_u symmetric about the real axis; the slice Cauchy-Riemann
/// condition of the requested side is verified on samples.
SliceFunction extend_from_slice(const std::function<Quaternion(cd)>& h, const RegionList& region,
                                const ImaginaryUnit& u, Chirality chi);

/// S_L^{-1}(s,x) = -(x^2 - 2 Re(s) x + |s|^2)^{-1} (x - conj s).
Quaternion cauchy_kernel_left(const Quaternion& s, const Quaternion& x);
/// S_R^{-1}(s,x) = -(x - conj s) (x^2 - 2 Re(s) x + |s|^2)^{-1}.
Quaternion cauchy_kernel_right(const Quaternion& s, const Quaternion& x);

struct IntrinsicCheck {
    bool intrinsic;
    double max_violation;
};

/// Sampled intrinsic characterization: f(conj x) = conj(f(x)) and
/// real-valued stems.
IntrinsicCheck is_intrinsic(const SliceFunction& f, int samples = 200);

/// Splits a function with real beta into a locally constant part c and an
/// intrinsic part f_tilde with f = c + f_tilde.
struct SplitResult {
    SliceFunction locally_constant;
    SliceFunction intrinsic_part;
};
SplitResult split_left_right(const SliceFunction& f, int samples = 64);

/// --- pointwise algebra on stems (used by the identity suites) ---

/// Product f*g with f intrinsic (left result) or g intrinsic (right
/// result); both intrinsic gives an intrinsic result.
SliceFunction multiply(const SliceFunction& f, const SliceFunction& g,
                       std::optional<Quaternion> at_infinity = std::nullopt);
/// Composition g(f(x)) for intrinsic f.
SliceFunction compose(const SliceFunction& g, const SliceFunction& f);
/// 1/f for intrinsic f (evaluation throws where f vanishes).
SliceFunction reciprocal(const SliceFunction& f);
/// f + g for componentwise-compatible functions.
SliceFunction add(const SliceFunction& f, const SliceFunction& g);

/// Scalar Cauchy formula over a quadrature rule, folded onto the upper
/// curves: (1/2pi) oint S_L^{-1}(s,x) ds_I f(s) [+ f(infinity)].
Quaternion cauchy_formula_left(const SliceFunction& f, const QuadratureRule& rule,
                               const Quaternion& x, bool domain_unbounded = false);
Quaternion cauchy_formula_right(const SliceFunction& f, const QuadratureRule& rule,
                                const Quaternion& x, bool domain_unbounded = false);

/// Max finite-difference Cauchy-Riemann residual of the stems over an
/// interior sample grid.
double cauchy_riemann_residual(const SliceFunction& f, int samples = 100);

} // namespace sfcalc
