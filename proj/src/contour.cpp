#include "sfcalc/contour.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace sfcalc {

namespace {
constexpr double kPi = std::numbers::pi;
}

Curve Curve::circle(double c0, double c1, double r, bool ccw) {
    Curve c;
    c.kind = Kind::Circle;
    c.c0 = c0;
    c.c1 = c1;
    c.r = r;
    c.th0 = 0.0;
    c.th1 = ccw ? 2.0 * kPi : -2.0 * kPi;
    return c;
}

Curve Curve::arc(double c0, double c1, double r, double th_from, double th_to) {
    Curve c;
    c.kind = Kind::Arc;
    c.c0 = c0;
    c.c1 = c1;
    c.r = r;
    c.th0 = th_from;
    c.th1 = th_to;
    return c;
}

Curve Curve::segment(double from0, double from1, double to0, double to1) {
    Curve c;
    c.kind = Kind::Segment;
    c.a0 = from0;
    c.a1 = from1;
    c.b0 = to0;
    c.b1 = to1;
    return c;
}

Curve Curve::truncated_line(double from0, double to0, double height) {
    Curve c = segment(from0, height, to0, height);
    c.kind = Kind::TruncatedLine;
    return c;
}

std::pair<double, double> Curve::point(double t) const {
    switch (kind) {
        case Kind::Circle:
        case Kind::Arc: {
            const double th = th0 + (th1 - th0) * t;
            return {c0 + r * std::cos(th), c1 + r * std::sin(th)};
        }
        case Kind::Segment:
        case Kind::TruncatedLine:
            return {a0 + (b0 - a0) * t, a1 + (b1 - a1) * t};
    }
    return {0.0, 0.0};
}

std::pair<double, double> Curve::derivative(double t) const {
    switch (kind) {
        case Kind::Circle:
        case Kind::Arc: {
            const double th = th0 + (th1 - th0) * t;
            const double sp = th1 - th0;
            return {-r * sp * std::sin(th), r * sp * std::cos(th)};
        }
        case Kind::Segment:
        case Kind::TruncatedLine:
            return {b0 - a0, b1 - a1};
    }
    return {0.0, 0.0};
}

Curve Curve::reversed() const {
    Curve c = *this;
    switch (kind) {
        case Kind::Circle:
        case Kind::Arc:
            std::swap(c.th0, c.th1);
            break;
        case Kind::Segment:
        case Kind::TruncatedLine:
            std::swap(c.a0, c.b0);
            std::swap(c.a1, c.b1);
            break;
    }
    return c;
}

std::string SliceCauchyDomain::describe() const {
    std::ostringstream os;
    for (size_t i = 0; i < components.size(); ++i) {
        if (i) os << "; ";
        os << components[i].desc;
    }
    return os.str();
}

bool contains(const SliceCauchyDomain& d, double x0, double x1) {
    return std::any_of(d.components.begin(), d.components.end(),
                       [&](const DomainComponent& c) { return region_contains(c.region, x0, x1); });
}

bool contains(const SliceCauchyDomain& d, const Quaternion& x) {
    const Sphere s = sphere_of(x);
    return contains(d, s.s0, s.s1);
}

namespace {

void curve_nodes(const Curve& c, int n, std::vector<QuadratureNode>& out) {
    if (c.closed()) {
        const double dt = 1.0 / n;
        for (int k = 0; k < n; ++k) {
            const double t = k * dt;
            const auto [x0, x1] = c.point(t);
            const auto [d0, d1] = c.derivative(t);
            out.push_back({cd{x0, x1}, cd{0.0, -1.0} * cd{d0, d1} * dt, c.far_closure});
        }
        return;
    }
    const double dt = 1.0 / (n - 1);
    for (int k = 0; k < n; ++k) {
        const double t = k * dt;
        const double coef = (k == 0 || k == n - 1) ? 0.5 * dt : dt;
        const auto [x0, x1] = c.point(t);
        const auto [d0, d1] = c.derivative(t);
        out.push_back({cd{x0, x1}, cd{0.0, -1.0} * cd{d0, d1} * coef, c.far_closure});
    }
}

} // namespace

QuadratureRule quadrature(const SliceCauchyDomain& d, const ImaginaryUnit& unit,
                          int nodes_per_curve) {
    if (nodes_per_curve < kMinNodesPerCurve)
        throw PreconditionError("nodes_per_curve must be at least 16");
    QuadratureRule rule;
    rule.unit = unit;
    rule.nodes_per_curve = nodes_per_curve;
    rule.contour_desc = d.describe();
    for (const DomainComponent& comp : d.components)
        for (const Curve& c : comp.upper) curve_nodes(c, nodes_per_curve, rule.nodes);
    return rule;
}

double winding_number(const QuadratureRule& rule, cd p) {
    cd acc = 0.0;
    for (const QuadratureNode& n : rule.nodes) {
        acc += n.w / (n.z - p);
        acc += std::conj(n.w) / (std::conj(n.z) - p);
    }
    return (acc / (2.0 * kPi)).real();
}

double winding_number(const std::vector<Curve>& curves, cd p, int nodes_per_curve) {
    std::vector<QuadratureNode> nodes;
    for (const Curve& c : curves) curve_nodes(c, nodes_per_curve, nodes);
    cd acc = 0.0;
    for (const QuadratureNode& n : nodes) {
        acc += n.w / (n.z - p);
        acc += std::conj(n.w) / (std::conj(n.z) - p);
    }
    return (acc / (2.0 * kPi)).real();
}

namespace {

void orient_component(DomainComponent& comp) {
    const cd probe{comp.winding_probe.s0, comp.winding_probe.s1};
    const double w = winding_number(comp.upper, probe, 192);
    if (std::abs(w - comp.expected_winding) < 0.2) return;
    if (std::abs(w + comp.expected_winding) < 0.2) {
        for (Curve& c : comp.upper) c = c.reversed();
        return;
    }
    std::ostringstream msg;
    msg << "orientation probe failed for component '" << comp.desc << "': winding " << w;
    throw ConstructionError(msg.str());
}

} // namespace

DomainComponent disk_component(double center, double radius) {
    DomainComponent c;
    c.region = {Region::disk(center, radius)};
    c.upper = {Curve::arc(center, 0.0, radius, 0.0, kPi)};
    c.winding_probe = {center, radius * 0.5};
    c.expected_winding = 1.0;
    std::ostringstream os;
    os << "disk(c=" << center << ",r=" << radius << ")";
    c.desc = os.str();
    return c;
}

DomainComponent shell_component(Sphere s, double rin, double rout) {
    DomainComponent c;
    c.region = {Region::sphere_shell(s, rin, rout)};
    if (s.s1 == 0.0) {
        // classical annulus centered on the real axis: two semicircles
        c.upper = {Curve::arc(s.s0, 0.0, rout, 0.0, kPi)};
        if (rin > 0.0) c.upper.push_back(Curve::arc(s.s0, 0.0, rin, kPi, 0.0));
        c.winding_probe = {s.s0 + 0.5 * (rin + rout), 0.0};
    } else if (s.s1 > rout) {
        // floating ring around a sphere: full circles
        c.upper = {Curve::circle(s.s0, s.s1, rout, true)};
        if (rin > 0.0) c.upper.push_back(Curve::circle(s.s0, s.s1, rin, false));
        c.winding_probe = rin == 0.0 ? s : Sphere{s.s0, s.s1 + 0.5 * (rin + rout)};
    } else {
        throw ConstructionError("shell component must float above the axis or be centered on it");
    }
    c.expected_winding = 1.0;
    std::ostringstream os;
    os << "shell(c=(" << s.s0 << ',' << s.s1 << "),rin=" << rin << ",rout=" << rout << ")";
    c.desc = os.str();
    return c;
}

DomainComponent complement_component(double center, double radius) {
    DomainComponent c;
    c.region = {Region::disk_complement(center, radius)};
    // boundary of the unbounded component: the circle traversed clockwise
    c.upper = {Curve::arc(center, 0.0, radius, kPi, 0.0)};
    c.upper[0].far_closure = true;
    c.unbounded = true;
    c.winding_probe = {center, 0.8 * radius};
    c.expected_winding = -1.0;
    std::ostringstream os;
    os << "complement(c=" << center << ",r=" << radius << ")";
    c.desc = os.str();
    return c;
}

DomainComponent tube_component(double eps, double far_radius) {
    if (!(far_radius > 2.0 * eps))
        throw ConstructionError("tube closure radius must exceed the tube height");
    DomainComponent c;
    c.region = {Region::tube(eps, far_radius)};
    const double hx = std::sqrt(far_radius * far_radius - eps * eps);
    const double th = std::asin(eps / far_radius);
    c.upper = {Curve::truncated_line(hx, -hx, eps)};
    Curve closing = Curve::arc(0.0, 0.0, far_radius, kPi - th, th);
    closing.far_closure = true;
    c.upper.push_back(closing);
    c.unbounded = true;
    // probe sits in the closure lens between the line and the far arc,
    // where the winding of the positively oriented boundary is -1
    c.winding_probe = {0.0, 0.5 * (eps + far_radius)};
    c.expected_winding = -1.0;
    std::ostringstream os;
    os << "tube(eps=" << eps << ",L=" << far_radius << ")";
    c.desc = os.str();
    return c;
}

SliceCauchyDomain domain_from(std::vector<DomainComponent> comps) {
    SliceCauchyDomain d;
    d.components = std::move(comps);
    for (DomainComponent& c : d.components) {
        orient_component(c);
        if (c.unbounded) d.unbounded = true;
    }
    return d;
}

SliceCauchyDomain enclose(const SSpectrum& spec, double clearance, const EncloseOptions& opts) {
    if (!(clearance > 0.0)) throw ConstructionError("clearance must be positive");
    const bool tube = spec.includes_infinity || spec.real_line;
    if (!tube && spec.spheres.empty())
        throw ConstructionError("empty spectrum: nothing to enclose");

    std::vector<Sphere> spheres;
    double max_abs_re = 0.0;
    for (const Sphere& s : spec.spheres) {
        max_abs_re = std::max(max_abs_re, std::abs(s.s0));
        if (tube && s.s1 <= clearance) continue; // already inside the tube
        if (tube && s.s1 <= 1.5 * clearance)
            throw ConstructionError("sphere too close to the tube boundary");
        spheres.push_back(s);
    }

    // group spheres whose target enclosures would overlap
    const size_t m = spheres.size();
    std::vector<size_t> group(m);
    for (size_t i = 0; i < m; ++i) group[i] = i;
    const auto find = [&](size_t i) {
        while (group[i] != i) i = group[i] = group[group[i]];
        return i;
    };
    for (size_t i = 0; i < m; ++i)
        for (size_t j = i + 1; j < m; ++j)
            if (sphere_dist(spheres[i], spheres[j]) < 2.0 * clearance) group[find(i)] = find(j);

    std::vector<std::vector<Sphere>> groups;
    std::vector<size_t> root_of;
    for (size_t i = 0; i < m; ++i) {
        const size_t r = find(i);
        size_t gi = root_of.size();
        for (size_t g = 0; g < root_of.size(); ++g)
            if (root_of[g] == r) { gi = g; break; }
        if (gi == root_of.size()) {
            root_of.push_back(r);
            groups.emplace_back();
        }
        groups[gi].push_back(spheres[i]);
    }

    for (const Sphere& a : opts.avoid)
        for (const Sphere& s : spec.spheres)
            if (sphere_dist(a, s) < 2.0 * clearance)
                throw ConstructionError("avoid region closer than 2*clearance to the spectrum");

    std::vector<DomainComponent> comps;
    double max_extent = 0.0;
    for (size_t g = 0; g < groups.size(); ++g) {
        double gap = std::numeric_limits<double>::infinity();
        for (size_t h = 0; h < groups.size(); ++h) {
            if (h == g) continue;
            for (const Sphere& a : groups[g])
                for (const Sphere& b : groups[h]) gap = std::min(gap, sphere_dist(a, b));
        }
        for (const Sphere& a : groups[g])
            for (const Sphere& v : opts.avoid) gap = std::min(gap, sphere_dist(a, v));
        const double radius = std::min(clearance, 0.4 * gap);

        // smallest practical enclosure of the group
        double c0 = 0.0, c1 = 0.0;
        for (const Sphere& s : groups[g]) { c0 += s.s0; c1 += s.s1; }
        c0 /= static_cast<double>(groups[g].size());
        c1 /= static_cast<double>(groups[g].size());
        double spread = 0.0;
        for (const Sphere& s : groups[g])
            spread = std::max(spread, std::hypot(s.s0 - c0, s.s1 - c1));
        double rc = spread + radius;

        if (c1 > 1.05 * rc && (!tube || c1 - rc > clearance)) {
            comps.push_back(shell_component({c0, c1}, 0.0, rc));
        } else {
            // snap to an on-axis disk covering the whole group
            double rd = 0.0;
            for (const Sphere& s : groups[g])
                rd = std::max(rd, std::hypot(s.s0 - c0, s.s1));
            rd += radius;
            if (tube) throw ConstructionError("sphere group collides with the tube boundary");
            comps.push_back(disk_component(c0, rd));
        }
        max_extent = std::max(max_extent, std::hypot(c0, c1) + rc);
    }

    std::optional<double> far;
    if (tube) {
        far = opts.truncation.value_or(std::max(10.0, 5.0 * max_abs_re));
        if (*far < 1.2 * max_extent || *far <= 2.0 * clearance)
            throw ConstructionError("tube closure radius too small for the enclosed spectrum");
        comps.push_back(tube_component(clearance, *far));
    }
    SliceCauchyDomain d = domain_from(std::move(comps));
    d.truncation = far;
    return d;
}

} // namespace sfcalc
