#pragma once

#include <vector>

#include "sfcalc/quaternion.hpp"

namespace sfcalc {

/// Closed-boundary slack: points this close to a region boundary count as
/// inside, so integration nodes sitting on the boundary stay evaluable.
inline constexpr double kRegionSlack = 1e-9;

/// Axially symmetric sets are described by their trace in the closed upper
/// half plane (x0, x1 >= 0): a quaternion x belongs to the set iff
/// (Re x, |vec x|) lies in the region.
struct Region {
    enum class Kind {
        Disk,           ///< dist((x0,x1),(c0,0)) < r, center on the real axis
        SphereShell,    ///< rin < dist((x0,x1),(s0,s1)) < rout around a sphere
        Rect,           ///< a0 <= x0 <= b0, 0 <= x1 <= h
        DiskComplement, ///< dist((x0,x1),(c0,0)) > r (neighborhood of infinity)
        Tube,           ///< x1 < eps, optionally joined with |x| > far_radius
        All,            ///< everything
    };

    Kind kind = Kind::All;
    double c0 = 0.0, c1 = 0.0; ///< center (Disk/SphereShell/DiskComplement)
    double rin = 0.0, rout = 0.0;
    double a0 = 0.0, b0 = 0.0, h = 0.0; ///< Rect bounds
    double eps = 0.0;                   ///< Tube height
    double far_radius = 0.0;            ///< Tube: 0 disables the infinity part
    /// Punctures: every kind may exclude neighborhoods of spheres (poles).
    std::vector<Sphere> excluded;
    std::vector<double> excluded_radius;

    static Region disk(double center, double radius);
    static Region sphere_shell(Sphere s, double r_in, double r_out);
    static Region rect(double x0_min, double x0_max, double height);
    static Region disk_complement(double center, double radius);
    static Region tube(double eps, double far_radius = 0.0);
    static Region all();
    static Region all_except(std::vector<Sphere> poles, double exclusion_radius);

    /// Adds the punctures of r to this region (set intersection with the
    /// complement of r's exclusions).
    void merge_exclusions(const Region& r);

    [[nodiscard]] bool contains(double x0, double x1) const;
    [[nodiscard]] bool unbounded() const;
    /// Representative interior point, used for probes and sampling.
    [[nodiscard]] Sphere probe_point() const;
    /// Box enclosing the region (a synthetic window for unbounded kinds),
    /// used by sampling-based checks.
    void sample_box(double& x0_min, double& x0_max, double& x1_max) const;
};

using RegionList = std::vector<Region>;

bool region_contains(const RegionList& rs, double x0, double x1);
bool region_contains(const RegionList& rs, const Quaternion& x);
bool region_unbounded(const RegionList& rs);

} // namespace sfcalc
