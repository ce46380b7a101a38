#include "sfcalc/region.hpp"

#include <algorithm>
#include <cmath>

namespace sfcalc {

Region Region::disk(double center, double radius) {
    Region r;
    r.kind = Kind::Disk;
    r.c0 = center;
    r.rout = radius;
    return r;
}

Region Region::sphere_shell(Sphere s, double r_in, double r_out) {
    Region r;
    r.kind = Kind::SphereShell;
    r.c0 = s.s0;
    r.c1 = s.s1;
    r.rin = r_in;
    r.rout = r_out;
    return r;
}

Region Region::rect(double x0_min, double x0_max, double height) {
    Region r;
    r.kind = Kind::Rect;
    r.a0 = x0_min;
    r.b0 = x0_max;
    r.h = height;
    return r;
}

Region Region::disk_complement(double center, double radius) {
    Region r;
    r.kind = Kind::DiskComplement;
    r.c0 = center;
    r.rout = radius;
    return r;
}

Region Region::tube(double eps, double far_radius) {
    Region r;
    r.kind = Kind::Tube;
    r.eps = eps;
    r.far_radius = far_radius;
    return r;
}

Region Region::all() { return {}; }

Region Region::all_except(std::vector<Sphere> poles, double exclusion_radius) {
    Region r;
    r.excluded = std::move(poles);
    r.excluded_radius.assign(r.excluded.size(), exclusion_radius);
    return r;
}

void Region::merge_exclusions(const Region& other) {
    excluded.insert(excluded.end(), other.excluded.begin(), other.excluded.end());
    excluded_radius.insert(excluded_radius.end(), other.excluded_radius.begin(),
                           other.excluded_radius.end());
}

bool Region::contains(double x0, double x1) const {
    // Boundary points count as inside (within kRegionSlack): the calculus
    // integrates over curves that may coincide with region boundaries.
    for (size_t i = 0; i < excluded.size(); ++i)
        if (std::hypot(x0 - excluded[i].s0, x1 - excluded[i].s1) <= excluded_radius[i])
            return false;
    switch (kind) {
        case Kind::Disk:
            return std::hypot(x0 - c0, x1) <= rout + kRegionSlack;
        case Kind::SphereShell: {
            const double d = std::hypot(x0 - c0, x1 - c1);
            return (rin == 0.0 || d >= rin - kRegionSlack) && d <= rout + kRegionSlack;
        }
        case Kind::Rect:
            return x0 >= a0 - kRegionSlack && x0 <= b0 + kRegionSlack && x1 <= h + kRegionSlack;
        case Kind::DiskComplement:
            return std::hypot(x0 - c0, x1) >= rout - kRegionSlack;
        case Kind::Tube:
            return x1 <= eps + kRegionSlack ||
                   (far_radius > 0.0 && std::hypot(x0, x1) >= far_radius - kRegionSlack);
        case Kind::All:
            return true;
    }
    return false;
}

bool Region::unbounded() const {
    switch (kind) {
        case Kind::Disk:
        case Kind::SphereShell:
        case Kind::Rect:
            return false;
        default:
            return true;
    }
}

Sphere Region::probe_point() const {
    switch (kind) {
        case Kind::Disk:
            return {c0, rout * 0.5};
        case Kind::SphereShell:
            return rin == 0.0 ? Sphere{c0, c1} : Sphere{c0, c1 + 0.5 * (rin + rout)};
        case Kind::Rect:
            return {0.5 * (a0 + b0), 0.5 * h};
        case Kind::DiskComplement:
            return {c0 + 2.0 * rout, 0.0};
        case Kind::Tube:
            return {0.0, eps * 0.5};
        case Kind::All: {
            double far = 0.0;
            for (const Sphere& s : excluded) far = std::max(far, std::abs(s.s0) + s.s1 + 1.0);
            return {far, 0.0};
        }
    }
    return {0.0, 0.0};
}

void Region::sample_box(double& x0_min, double& x0_max, double& x1_max) const {
    switch (kind) {
        case Kind::Disk:
            x0_min = c0 - rout; x0_max = c0 + rout; x1_max = rout;
            return;
        case Kind::SphereShell:
            x0_min = c0 - rout; x0_max = c0 + rout; x1_max = c1 + rout;
            return;
        case Kind::Rect:
            x0_min = a0; x0_max = b0; x1_max = h;
            return;
        case Kind::DiskComplement:
            x0_min = c0 - 3.0 * rout; x0_max = c0 + 3.0 * rout; x1_max = 3.0 * rout;
            return;
        case Kind::Tube:
            x0_min = -10.0; x0_max = 10.0; x1_max = eps;
            return;
        case Kind::All: {
            double far = 3.0;
            for (const Sphere& s : excluded) far = std::max(far, std::abs(s.s0) + s.s1 + 2.0);
            x0_min = -far; x0_max = far; x1_max = far;
            return;
        }
    }
}

bool region_contains(const RegionList& rs, double x0, double x1) {
    return std::any_of(rs.begin(), rs.end(),
                       [&](const Region& r) { return r.contains(x0, x1); });
}

bool region_contains(const RegionList& rs, const Quaternion& x) {
    const Sphere s = sphere_of(x);
    return region_contains(rs, s.s0, s.s1);
}

bool region_unbounded(const RegionList& rs) {
    return std::any_of(rs.begin(), rs.end(), [](const Region& r) { return r.unbounded(); });
}

} // namespace sfcalc
