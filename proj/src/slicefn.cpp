#include "sfcalc/slicefn.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "sfcalc/linalg.hpp"

namespace sfcalc {

namespace {

constexpr double kPi = std::numbers::pi;

double frac(double v) { return v - std::floor(v); }

// Additive-recurrence low-discrepancy points; deterministic across runs.
struct Quasi2D {
    size_t k = 0;
    std::pair<double, double> next() {
        ++k;
        return {frac(0.7548776662466927 * static_cast<double>(k)),
                frac(0.5698402909980532 * static_cast<double>(k))};
    }
};

ImaginaryUnit quasi_unit(size_t k) {
    // Fibonacci-sphere direction
    const double g = 2.399963229728653; // golden angle
    const double z = 1.0 - 2.0 * frac(0.6180339887498949 * static_cast<double>(k + 1));
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double th = g * static_cast<double>(k + 1);
    if (r < 1e-12) return ImaginaryUnit::k();
    return {r * std::cos(th), r * std::sin(th), z};
}

// Interior samples of a region list (rejection from the sample boxes).
std::vector<std::pair<double, double>> sample_region(const RegionList& rs, int want) {
    std::vector<std::pair<double, double>> out;
    Quasi2D seq;
    for (const Region& r : rs) {
        double x0min, x0max, x1max;
        r.sample_box(x0min, x0max, x1max);
        int got = 0;
        for (int tries = 0; tries < 400 * want && got < want; ++tries) {
            auto [u, v] = seq.next();
            const double x0 = x0min + (x0max - x0min) * u;
            const double x1 = x1max * v;
            if (!r.contains(x0, x1)) continue;
            out.emplace_back(x0, x1);
            ++got;
        }
    }
    return out;
}

std::vector<double> trim_poly(std::vector<double> c) {
    double scale = 0.0;
    for (double v : c) scale = std::max(scale, std::abs(v));
    while (c.size() > 1 && std::abs(c.back()) <= 1e-14 * scale) c.pop_back();
    return c;
}

cd horner(const std::vector<double>& c, cd z) {
    cd acc = 0.0;
    for (size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
    return acc;
}

std::vector<cd> poly_roots(const std::vector<double>& coeffs) {
    const std::vector<double> c = trim_poly(coeffs);
    const int deg = static_cast<int>(c.size()) - 1;
    if (deg <= 0) return {};
    if (deg == 1) return {cd{-c[0] / c[1], 0.0}};
    linalg::CMatrix comp(deg, deg);
    for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -c[i] / c[deg];
    return linalg::eigenvalues(comp);
}

} // namespace

SliceFunction::SliceFunction(std::vector<Component> comps, Chirality chi,
                             std::optional<Quaternion> at_infinity)
    : comps_(std::move(comps)), chi_(chi), at_inf_(std::move(at_infinity)) {
    if (comps_.empty()) throw DomainError("slice function needs at least one component");
}

bool SliceFunction::defined_at(double x0, double x1) const {
    return std::any_of(comps_.begin(), comps_.end(),
                       [&](const Component& c) { return region_contains(c.region, x0, x1); });
}

bool SliceFunction::has_unbounded_region() const {
    return std::any_of(comps_.begin(), comps_.end(),
                       [&](const Component& c) { return region_unbounded(c.region); });
}

StemValue SliceFunction::stem_at(double x0, double x1) const {
    for (const Component& c : comps_)
        if (region_contains(c.region, x0, x1)) return c.stem(x0, x1);
    std::ostringstream os;
    os << "point (" << x0 << ',' << x1 << ") outside the domain of the slice function";
    throw DomainError(os.str());
}

Quaternion SliceFunction::eval(const Quaternion& x) const {
    const Sphere s = sphere_of(x);
    const StemValue v = stem_at(s.s0, s.s1);
    const Quaternion ix = axis_of(x).q();
    if (chi_ == Chirality::Right) return v.alpha + v.beta * ix;
    return v.alpha + ix * v.beta;
}

Quaternion SliceFunction::value_on_plane(cd z, const ImaginaryUnit& u) const {
    const double x1 = std::abs(z.imag());
    const StemValue v = stem_at(z.real(), x1);
    const double sgn = z.imag() < 0.0 ? -1.0 : 1.0;
    if (chi_ == Chirality::Right) return v.alpha + (v.beta * u.q()) * sgn;
    return v.alpha + (u.q() * v.beta) * sgn;
}

cd SliceFunction::complex_value(cd z) const {
    const double x1 = std::abs(z.imag());
    const StemValue v = stem_at(z.real(), x1);
    const double sgn = z.imag() < 0.0 ? -1.0 : 1.0;
    return {v.alpha.w, sgn * v.beta.w};
}

SliceFunction SliceFunction::polynomial(std::vector<double> coeffs) {
    std::vector<double> c = trim_poly(std::move(coeffs));
    std::optional<Quaternion> inf;
    if (c.size() == 1) inf = Quaternion{c[0]};
    Component comp{{Region::all()}, [c](double x0, double x1) {
                       const cd w = horner(c, {x0, x1});
                       return StemValue{Quaternion{w.real()}, Quaternion{w.imag()}};
                   }};
    return SliceFunction({std::move(comp)}, Chirality::Intrinsic, inf);
}

SliceFunction SliceFunction::rational(std::vector<double> num, std::vector<double> den) {
    std::vector<double> p = trim_poly(std::move(num));
    std::vector<double> q = trim_poly(std::move(den));
    if (q.size() == 1 && q[0] == 0.0) throw DomainError("rational function with zero denominator");

    std::vector<Sphere> poles;
    for (const cd& r : poly_roots(q)) {
        Sphere s{r.real(), std::abs(r.imag())};
        const bool dup = std::any_of(poles.begin(), poles.end(), [&](const Sphere& t) {
            return sphere_dist(s, t) <= 1e-10;
        });
        if (!dup) poles.push_back(s);
    }

    std::optional<Quaternion> inf;
    if (p.size() < q.size()) inf = Quaternion{0.0};
    else if (p.size() == q.size()) inf = Quaternion{p.back() / q.back()};

    Region reg = Region::all_except(poles, kPoleExclusion);
    Component comp{{reg}, [p, q](double x0, double x1) {
                       const cd z{x0, x1};
                       const cd qz = horner(q, z);
                       if (std::abs(qz) < 1e-280)
                           throw SingularityError("rational function evaluated at a pole", x0, x1);
                       const cd w = horner(p, z) / qz;
                       return StemValue{Quaternion{w.real()}, Quaternion{w.imag()}};
                   }};
    return SliceFunction({std::move(comp)}, Chirality::Intrinsic, inf);
}

SliceFunction SliceFunction::exponential() {
    Component comp{{Region::all()}, [](double x0, double x1) {
                       const cd w = std::exp(cd{x0, x1});
                       return StemValue{Quaternion{w.real()}, Quaternion{w.imag()}};
                   }};
    return SliceFunction({std::move(comp)}, Chirality::Intrinsic, std::nullopt);
}

SliceFunction SliceFunction::constant(const Quaternion& c) {
    const bool real = c.vec_norm() == 0.0;
    Component comp{{Region::all()},
                   [c](double, double) { return StemValue{c, Quaternion{}}; }};
    return SliceFunction({std::move(comp)}, real ? Chirality::Intrinsic : Chirality::TwoSided,
                         c);
}

SliceFunction SliceFunction::constants_on(const SliceCauchyDomain& d,
                                          std::vector<Quaternion> values) {
    if (values.size() != d.components.size())
        throw DomainError("one constant per domain component required");
    std::vector<Component> comps;
    bool all_real = true;
    Quaternion inf{};
    for (size_t i = 0; i < values.size(); ++i) {
        const Quaternion c = values[i];
        if (c.vec_norm() != 0.0) all_real = false;
        if (d.components[i].unbounded) inf = c;
        comps.push_back({d.components[i].region,
                         [c](double, double) { return StemValue{c, Quaternion{}}; }});
    }
    return SliceFunction(std::move(comps), all_real ? Chirality::Intrinsic : Chirality::TwoSided,
                         inf);
}

SliceFunction SliceFunction::characteristic(const SliceCauchyDomain& d,
                                            const std::vector<int>& selected) {
    std::vector<Quaternion> values(d.components.size(), Quaternion{});
    for (int idx : selected) {
        if (idx < 0 || idx >= static_cast<int>(d.components.size()))
            throw DomainError("selected component index out of range");
        values[static_cast<size_t>(idx)] = Quaternion::one();
    }
    // components must not overlap for the indicator to be well defined
    for (size_t i = 0; i < d.components.size(); ++i) {
        const Sphere p = d.components[i].region.front().probe_point();
        for (size_t j = 0; j < d.components.size(); ++j)
            if (j != i && region_contains(d.components[j].region, p.s0, p.s1))
                throw DomainError("overlapping components in characteristic function");
    }
    return constants_on(d, std::move(values));
}

SliceFunction extend_from_slice(const std::function<Quaternion(cd)>& h, const RegionList& region,
                                const ImaginaryUnit& u, Chirality chi) {
    // verify the slice Cauchy-Riemann condition of the requested side
    const double delta = 1e-5;
    double worst = 0.0;
    for (const auto& [x0, x1] : sample_region(region, 24)) {
        const cd z{x0, x1};
        const Quaternion d0 = (h(z + delta) - h(z - delta)) * (0.5 / delta);
        const Quaternion d1 = (h(z + cd{0.0, delta}) - h(z - cd{0.0, delta})) * (0.5 / delta);
        double res = 0.0;
        switch (chi) {
            case Chirality::Left:
                res = (d0 + u.q() * d1).norm();
                break;
            case Chirality::Right:
                res = (d0 + d1 * u.q()).norm();
                break;
            default:
                res = std::max((d0 + u.q() * d1).norm(), (d0 + d1 * u.q()).norm());
                break;
        }
        const double scale = 1.0 + d0.norm() + d1.norm();
        worst = std::max(worst, res / scale);
    }
    if (worst > 1e-6)
        throw DomainError("samples violate the slice Cauchy-Riemann condition for this chirality");

    SliceFunction::Component comp{
        region, [h, u, chi](double x0, double x1) {
            const cd z{x0, x1};
            const Quaternion sum = h(z) + h(std::conj(z));
            const Quaternion diff = h(z) - h(std::conj(z));
            StemValue v;
            v.alpha = sum * 0.5;
            if (chi == Chirality::Right)
                v.beta = (diff * u.q()) * -0.5; // beta = diff * u^{-1} / 2
            else
                v.beta = (u.q() * diff) * -0.5; // beta = u^{-1} * diff / 2
            return v;
        }};
    SliceFunction f({std::move(comp)}, chi);
    if (chi == Chirality::Intrinsic) {
        const IntrinsicCheck c = is_intrinsic(f, 64);
        if (!c.intrinsic)
            throw DomainError("slice extension is not intrinsic");
    }
    return f;
}

Quaternion cauchy_kernel_left(const Quaternion& s, const Quaternion& x) {
    const Quaternion den = x * x - x * (2.0 * s.re()) + Quaternion{s.norm_sq()};
    if (den.norm() < 1e-13) {
        const Sphere sp = sphere_of(s);
        throw SingularityError("left Cauchy kernel evaluated on [s]", sp.s0, sp.s1);
    }
    return -(inverse(den) * (x - s.conj()));
}

Quaternion cauchy_kernel_right(const Quaternion& s, const Quaternion& x) {
    const Quaternion den = x * x - x * (2.0 * s.re()) + Quaternion{s.norm_sq()};
    if (den.norm() < 1e-13) {
        const Sphere sp = sphere_of(s);
        throw SingularityError("right Cauchy kernel evaluated on [s]", sp.s0, sp.s1);
    }
    return -((x - s.conj()) * inverse(den));
}

IntrinsicCheck is_intrinsic(const SliceFunction& f, int samples) {
    double worst = 0.0;
    size_t k = 0;
    for (const auto& comp : f.components()) {
        const int per_comp =
            std::max(8, samples / static_cast<int>(f.components().size()));
        for (const auto& [x0, x1] : sample_region(comp.region, per_comp)) {
            const StemValue v = comp.stem(x0, x1);
            worst = std::max(worst, v.alpha.vec_norm());
            worst = std::max(worst, v.beta.vec_norm());
            const ImaginaryUnit u = quasi_unit(k++);
            const Quaternion x = embed_complex({x0, x1}, u);
            const Quaternion lhs = f.eval(x.conj());
            const Quaternion rhs = f.eval(x).conj();
            worst = std::max(worst, (lhs - rhs).norm());
        }
    }
    return {worst <= kIntrinsicTol, worst};
}

SplitResult split_left_right(const SliceFunction& f, int samples) {
    std::vector<SliceFunction::Component> c_comps, t_comps;
    for (const auto& comp : f.components()) {
        Quaternion c_val{};
        bool first = true;
        for (const auto& [x0, x1] : sample_region(comp.region, samples)) {
            const StemValue v = comp.stem(x0, x1);
            if (v.beta.vec_norm() > 1e-9)
                throw PreconditionError("split requires a real-valued beta stem");
            const Quaternion im_alpha = v.alpha.vec();
            if (first) {
                c_val = im_alpha;
                first = false;
            } else if ((im_alpha - c_val).norm() > 1e-8) {
                throw PreconditionError("Im(alpha) is not constant on a component");
            }
        }
        c_comps.push_back({comp.region,
                           [c_val](double, double) { return StemValue{c_val, Quaternion{}}; }});
        auto stem = comp.stem;
        t_comps.push_back({comp.region, [stem](double x0, double x1) {
                               const StemValue v = stem(x0, x1);
                               return StemValue{Quaternion{v.alpha.w}, Quaternion{v.beta.w}};
                           }});
    }
    std::optional<Quaternion> c_inf, t_inf;
    if (f.at_infinity()) {
        c_inf = f.at_infinity()->vec();
        t_inf = Quaternion{f.at_infinity()->w};
    }
    return {SliceFunction(std::move(c_comps), Chirality::TwoSided, c_inf),
            SliceFunction(std::move(t_comps), Chirality::Intrinsic, t_inf)};
}

namespace {

// The intrinsic factor must be defined wherever the other operand is; we
// support the global (All-kind, possibly punctured) single-component case
// the identity suites use.
const Region& global_region_of(const SliceFunction& f) {
    if (f.components().size() != 1 || f.components()[0].region.size() != 1 ||
        f.components()[0].region[0].kind != Region::Kind::All)
        throw PreconditionError("intrinsic factor must be globally defined");
    return f.components()[0].region[0];
}

} // namespace

SliceFunction multiply(const SliceFunction& f, const SliceFunction& g,
                       std::optional<Quaternion> at_infinity) {
    const bool f_intr = f.chirality() == Chirality::Intrinsic;
    const bool g_intr = g.chirality() == Chirality::Intrinsic;
    if (!f_intr && !g_intr)
        throw PreconditionError("product needs an intrinsic factor");

    // f intrinsic and g left-compatible, or g intrinsic and f right-compatible
    const SliceFunction& intr = f_intr ? f : g;
    const SliceFunction& other = f_intr ? g : f;
    if (f_intr && !g.left_compatible() && !g_intr)
        throw PreconditionError("left product requires a left slice hyperholomorphic factor");
    if (!f_intr && !f.right_compatible())
        throw PreconditionError("right product requires a right slice hyperholomorphic factor");

    const Region intr_region = global_region_of(intr);
    auto intr_stem = intr.components()[0].stem;

    std::vector<SliceFunction::Component> comps;
    for (const auto& comp : other.components()) {
        RegionList region = comp.region;
        for (Region& r : region) r.merge_exclusions(intr_region);
        auto stem = comp.stem;
        comps.push_back({std::move(region), [intr_stem, stem](double x0, double x1) {
                             const StemValue a = intr_stem(x0, x1);
                             const StemValue b = stem(x0, x1);
                             // real stems of the intrinsic factor commute
                             return StemValue{b.alpha * a.alpha.w - b.beta * a.beta.w,
                                              b.beta * a.alpha.w + b.alpha * a.beta.w};
                         }});
    }

    Chirality chi = g_intr && f_intr ? Chirality::Intrinsic
                    : f_intr         ? (g.chirality() == Chirality::TwoSided ? Chirality::Left
                                                                             : g.chirality())
                                     : (f.chirality() == Chirality::TwoSided ? Chirality::Right
                                                                             : f.chirality());
    std::optional<Quaternion> inf = at_infinity;
    if (!inf && f.at_infinity() && g.at_infinity())
        inf = (*f.at_infinity()) * (*g.at_infinity());
    return SliceFunction(std::move(comps), chi, inf);
}

SliceFunction compose(const SliceFunction& g, const SliceFunction& f) {
    if (f.chirality() != Chirality::Intrinsic)
        throw PreconditionError("composition requires an intrinsic inner function");
    std::vector<SliceFunction::Component> comps;
    for (const auto& comp : f.components()) {
        auto f_stem = comp.stem;
        comps.push_back({comp.region, [f_stem, g](double x0, double x1) {
                             const StemValue v = f_stem(x0, x1);
                             const double w0 = v.alpha.w;
                             const double w1 = v.beta.w;
                             const StemValue gw = g.stem_at(w0, std::abs(w1));
                             const double sgn = w1 < 0.0 ? -1.0 : 1.0;
                             return StemValue{gw.alpha, gw.beta * sgn};
                         }});
    }
    std::optional<Quaternion> inf;
    if (f.at_infinity())
        inf = g.eval(*f.at_infinity());
    else if (g.at_infinity())
        inf = g.at_infinity();
    return SliceFunction(std::move(comps), g.chirality(), inf);
}

SliceFunction reciprocal(const SliceFunction& f) {
    if (f.chirality() != Chirality::Intrinsic)
        throw PreconditionError("reciprocal requires an intrinsic function");
    std::vector<SliceFunction::Component> comps;
    for (const auto& comp : f.components()) {
        auto stem = comp.stem;
        comps.push_back({comp.region, [stem](double x0, double x1) {
                             const StemValue v = stem(x0, x1);
                             const cd w{v.alpha.w, v.beta.w};
                             if (std::abs(w) < 1e-280)
                                 throw SingularityError("reciprocal of a vanishing function", x0, x1);
                             const cd r = 1.0 / w;
                             return StemValue{Quaternion{r.real()}, Quaternion{r.imag()}};
                         }});
    }
    std::optional<Quaternion> inf;
    if (f.at_infinity() && f.at_infinity()->norm() > 0.0)
        inf = inverse(*f.at_infinity());
    return SliceFunction(std::move(comps), Chirality::Intrinsic, inf);
}

SliceFunction add(const SliceFunction& f, const SliceFunction& g) {
    if (f.components().size() != g.components().size())
        throw PreconditionError("sum requires componentwise-compatible functions");
    std::vector<SliceFunction::Component> comps;
    for (size_t i = 0; i < f.components().size(); ++i) {
        auto fs = f.components()[i].stem;
        auto gs = g.components()[i].stem;
        RegionList region = f.components()[i].region;
        comps.push_back({std::move(region), [fs, gs](double x0, double x1) {
                             const StemValue a = fs(x0, x1);
                             const StemValue b = gs(x0, x1);
                             return StemValue{a.alpha + b.alpha, a.beta + b.beta};
                         }});
    }
    const auto rank = [](Chirality c) {
        switch (c) {
            case Chirality::Intrinsic: return 0;
            case Chirality::TwoSided: return 1;
            default: return 2;
        }
    };
    if (rank(f.chirality()) == 2 && rank(g.chirality()) == 2 && f.chirality() != g.chirality())
        throw PreconditionError("cannot add left and right slice functions");
    const Chirality chi =
        rank(f.chirality()) >= rank(g.chirality()) ? f.chirality() : g.chirality();
    std::optional<Quaternion> inf;
    if (f.at_infinity() && g.at_infinity()) inf = *f.at_infinity() + *g.at_infinity();
    return SliceFunction(std::move(comps), chi, inf);
}

Quaternion cauchy_formula_left(const SliceFunction& f, const QuadratureRule& rule,
                               const Quaternion& x, bool domain_unbounded) {
    Quaternion acc{};
    for (const QuadratureNode& n : rule.nodes) {
        const Quaternion s = embed_complex(n.z, rule.unit);
        const Quaternion w = embed_complex(n.w, rule.unit);
        acc += cauchy_kernel_left(s, x) * w * f.value_on_plane(n.z, rule.unit);
        const Quaternion sb = embed_complex(std::conj(n.z), rule.unit);
        const Quaternion wb = embed_complex(std::conj(n.w), rule.unit);
        acc += cauchy_kernel_left(sb, x) * wb * f.value_on_plane(std::conj(n.z), rule.unit);
    }
    acc *= 1.0 / (2.0 * kPi);
    if (domain_unbounded) {
        if (!f.at_infinity())
            throw PreconditionError("value at infinity required on unbounded domains");
        acc += *f.at_infinity();
    }
    return acc;
}

Quaternion cauchy_formula_right(const SliceFunction& f, const QuadratureRule& rule,
                                const Quaternion& x, bool domain_unbounded) {
    Quaternion acc{};
    for (const QuadratureNode& n : rule.nodes) {
        const Quaternion s = embed_complex(n.z, rule.unit);
        const Quaternion w = embed_complex(n.w, rule.unit);
        acc += f.value_on_plane(n.z, rule.unit) * w * cauchy_kernel_right(s, x);
        const Quaternion sb = embed_complex(std::conj(n.z), rule.unit);
        const Quaternion wb = embed_complex(std::conj(n.w), rule.unit);
        acc += f.value_on_plane(std::conj(n.z), rule.unit) * wb * cauchy_kernel_right(sb, x);
    }
    acc *= 1.0 / (2.0 * kPi);
    if (domain_unbounded) {
        if (!f.at_infinity())
            throw PreconditionError("value at infinity required on unbounded domains");
        acc += *f.at_infinity();
    }
    return acc;
}

double cauchy_riemann_residual(const SliceFunction& f, int samples) {
    const double delta = 1e-5;
    double worst = 0.0;
    for (const auto& comp : f.components()) {
        for (const auto& [x0, x1] : sample_region(comp.region, samples)) {
            if (x1 < delta) continue;
            const bool interior = region_contains(comp.region, x0 - delta, x1) &&
                                  region_contains(comp.region, x0 + delta, x1) &&
                                  region_contains(comp.region, x0, x1 - delta) &&
                                  region_contains(comp.region, x0, x1 + delta);
            if (!interior) continue;
            const StemValue vxp = comp.stem(x0 + delta, x1);
            const StemValue vxm = comp.stem(x0 - delta, x1);
            const StemValue vyp = comp.stem(x0, x1 + delta);
            const StemValue vym = comp.stem(x0, x1 - delta);
            const Quaternion da0 = (vxp.alpha - vxm.alpha) * (0.5 / delta);
            const Quaternion db0 = (vxp.beta - vxm.beta) * (0.5 / delta);
            const Quaternion da1 = (vyp.alpha - vym.alpha) * (0.5 / delta);
            const Quaternion db1 = (vyp.beta - vym.beta) * (0.5 / delta);
            const double scale = 1.0 + da0.norm() + da1.norm() + db0.norm() + db1.norm();
            worst = std::max(worst, (da0 - db1).norm() / scale);
            worst = std::max(worst, (db0 + da1).norm() / scale);
        }
    }
    return worst;
}

} // namespace sfcalc
