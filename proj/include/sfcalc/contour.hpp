#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sfcalc/qmatrix.hpp"
#include "sfcalc/region.hpp"

namespace sfcalc {

/// Default number of quadrature nodes per boundary curve.  The trapezoid
/// rule on analytic closed curves converges geometrically; 256 reaches the
/// 1e-10 range for clearances >= 0.2.
inline constexpr int kDefaultNodesPerCurve = 256;
inline constexpr int kMinNodesPerCurve = 16;

/// Piecewise smooth boundary curve in the closed upper half plane,
/// parametrized over [0, 1].
struct Curve {
    enum class Kind { Circle, Arc, Segment, TruncatedLine };

    Kind kind = Kind::Circle;
    double c0 = 0.0, c1 = 0.0, r = 0.0; ///< Circle/Arc center and radius
    double th0 = 0.0, th1 = 0.0;        ///< angle range (Circle: th1 = th0 +- 2pi)
    double a0 = 0.0, a1 = 0.0;          ///< Segment/TruncatedLine start
    double b0 = 0.0, b1 = 0.0;          ///< Segment/TruncatedLine end
    bool far_closure = false;           ///< arc closing a tube through infinity

    static Curve circle(double c0, double c1, double r, bool ccw = true);
    static Curve arc(double c0, double c1, double r, double th_from, double th_to);
    static Curve segment(double from0, double from1, double to0, double to1);
    static Curve truncated_line(double from0, double to0, double height);

    [[nodiscard]] bool closed() const { return kind == Kind::Circle; }
    [[nodiscard]] std::pair<double, double> point(double t) const;
    [[nodiscard]] std::pair<double, double> derivative(double t) const;
    [[nodiscard]] Curve reversed() const;
};

/// One axially symmetric component: its region plus the upper-half-plane
/// part of its boundary.  The lower half is the reflection and is folded
/// in analytically by the integrators.
struct DomainComponent {
    RegionList region;
    std::vector<Curve> upper;
    bool unbounded = false;
    Sphere winding_probe;    ///< probe point for the orientation self-test
    double expected_winding; ///< +1 inside bounded components, -1 in a tube's closure lens
    std::string desc;
};

/// Axially symmetric domain whose slices are Cauchy domains, described by
/// the upper-half boundary curves of its components.
struct SliceCauchyDomain {
    std::vector<DomainComponent> components;
    bool unbounded = false;
    std::optional<double> truncation; ///< tube closure radius L, if any

    [[nodiscard]] std::string describe() const;
};

bool contains(const SliceCauchyDomain& d, const Quaternion& x);
bool contains(const SliceCauchyDomain& d, double x0, double x1);

/// Standard components for hand-built domains (tests, CLI configs).
DomainComponent disk_component(double center, double radius);
DomainComponent shell_component(Sphere s, double rin, double rout);
DomainComponent tube_component(double eps, double far_radius);
DomainComponent complement_component(double center, double radius);

/// Assembles a domain and runs the orientation self-test on every
/// component, flipping curves whose empirical winding came out reversed.
SliceCauchyDomain domain_from(std::vector<DomainComponent> comps);

struct EncloseOptions {
    std::vector<Sphere> avoid;         ///< keep-out spheres (e.g. poles of f)
    std::optional<double> truncation;  ///< tube closure radius L
};

/// Builds a slice Cauchy domain around a spectrum: half-plane disks and
/// circles of radius ~clearance per sphere (merged when close), plus a
/// tube component {x1 < clearance} closed through the neighborhood of
/// infinity when the spectrum is unbounded along R or contains infinity.
SliceCauchyDomain enclose(const SSpectrum& spec, double clearance,
                          const EncloseOptions& opts = {});

/// Quadrature node on the integration plane: position and ds_I weight as
/// complex numbers, to be embedded into C_I by the consumer.
struct QuadratureNode {
    cd z;
    cd w;
    bool far_closure = false;
};

/// Nodes on the upper-half boundary curves only; integrals over the full
/// boundary add the reflected nodes (conjugate position, conjugate weight)
/// analytically.
struct QuadratureRule {
    std::vector<QuadratureNode> nodes;
    ImaginaryUnit unit;
    int nodes_per_curve = 0;
    std::string contour_desc;
};

QuadratureRule quadrature(const SliceCauchyDomain& d, const ImaginaryUnit& unit,
                          int nodes_per_curve);

/// Folded winding number (1/2pi) oint (s - p)^{-1} ds_I of the full
/// boundary around an upper-half-plane point p.
double winding_number(const QuadratureRule& rule, cd p);
double winding_number(const std::vector<Curve>& curves, cd p, int nodes_per_curve);

} // namespace sfcalc
