#include "sfcalc/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "sfcalc/simd/kernels.hpp"

namespace sfcalc {

namespace {

constexpr double kPi = std::numbers::pi;

struct NodePair {
    Quaternion s;      // upper node embedded in C_I
    Quaternion sbar;   // its reflection
    Quaternion w;      // ds_I weight embedded in C_I
    Quaternion wbar;
};

NodePair embed_node(const QuadratureNode& n, const ImaginaryUnit& u) {
    return {embed_complex(n.z, u), embed_complex(std::conj(n.z), u), embed_complex(n.w, u),
            embed_complex(std::conj(n.w), u)};
}

struct Integrated {
    QMatrix value;
    double tail = 0.0;
    bool warn = false;
};

// (1/2pi) sum over nodes (and reflections) of S_L^{-1}(s,T) ds_I f(s)
Integrated integrate_left(const SliceFunction& f, const QMatrix& t, const QuadratureRule& rule) {
    const int n = t.dim();
    QMatrix acc(n), tail(n);
    bool warn = false;
    for (const QuadratureNode& node : rule.nodes) {
        const NodePair np = embed_node(node, rule.unit);
        const PseudoResolvent pr = pseudo_resolvent(t, np.s);
        warn = warn || pr.ill_conditioned;
        const QMatrix tqi = t * pr.inv;
        const QMatrix sl_up = pr.inv.scaled_right(np.sbar) - tqi;
        const QMatrix sl_dn = pr.inv.scaled_right(np.s) - tqi; // conj of sbar is s
        QMatrix contrib = sl_up.scaled_right(np.w * f.value_on_plane(node.z, rule.unit));
        contrib += sl_dn.scaled_right(np.wbar * f.value_on_plane(std::conj(node.z), rule.unit));
        acc += contrib;
        if (node.far_closure) tail += contrib;
    }
    return {acc * (1.0 / (2.0 * kPi)), tail.max_norm() / (2.0 * kPi), warn};
}

// (1/2pi) sum of f(s) ds_I S_R^{-1}(s,T)
Integrated integrate_right(const SliceFunction& f, const QMatrix& t, const QuadratureRule& rule) {
    const int n = t.dim();
    QMatrix acc(n), tail(n);
    bool warn = false;
    for (const QuadratureNode& node : rule.nodes) {
        const NodePair np = embed_node(node, rule.unit);
        const PseudoResolvent pr = pseudo_resolvent(t, np.s);
        warn = warn || pr.ill_conditioned;
        const QMatrix tqi = t * pr.inv;
        const QMatrix sr_up = pr.inv.scaled_left(np.sbar) - tqi;
        const QMatrix sr_dn = pr.inv.scaled_left(np.s) - tqi;
        QMatrix contrib = sr_up.scaled_left(f.value_on_plane(node.z, rule.unit) * np.w);
        contrib += sr_dn.scaled_left(f.value_on_plane(std::conj(node.z), rule.unit) * np.wbar);
        acc += contrib;
        if (node.far_closure) tail += contrib;
    }
    return {acc * (1.0 / (2.0 * kPi)), tail.max_norm() / (2.0 * kPi), warn};
}

// Folded intrinsic form: only upper nodes, real weights
// 2 Re(f(s) w conj(s)) Q^{-1} - 2 Re(f(s) w) T Q^{-1}.
Integrated integrate_intrinsic(const SliceFunction& f, const QMatrix& t,
                               const QuadratureRule& rule) {
    const int n = t.dim();
    QMatrix acc(n), tail(n);
    bool warn = false;
    for (const QuadratureNode& node : rule.nodes) {
        const cd fz = f.complex_value(node.z);
        const double a = 2.0 * (fz * node.w * std::conj(node.z)).real();
        const double b = 2.0 * (fz * node.w).real();
        const Quaternion s = embed_complex(node.z, rule.unit);
        const PseudoResolvent pr = pseudo_resolvent(t, s);
        warn = warn || pr.ill_conditioned;
        const QMatrix tqi = t * pr.inv;
        acc.add_scaled(a, pr.inv);
        acc.add_scaled(-b, tqi);
        if (node.far_closure) {
            tail.add_scaled(a, pr.inv);
            tail.add_scaled(-b, tqi);
        }
    }
    return {acc * (1.0 / (2.0 * kPi)), tail.max_norm() / (2.0 * kPi), warn};
}

void validate_apply(const SliceFunction& f, const QMatrix& t, const SliceCauchyDomain& domain,
                    const QuadratureRule& rule) {
    const SSpectrum spec = s_spectrum(t);
    for (const Sphere& s : spec.spheres)
        if (!contains(domain, s.s0, s.s1))
            throw PreconditionError("S-spectrum is not enclosed by the integration domain");
    if (domain.unbounded && !f.at_infinity())
        throw PreconditionError("value at infinity required for an unbounded domain");
    for (const QuadratureNode& node : rule.nodes)
        if (!f.defined_at(node.z.real(), std::abs(node.z.imag())))
            throw PreconditionError("integration contour leaves the domain of the function");
}

Diagnostics make_diag(const QuadratureRule& rule, const Integrated& coarse,
                      const Integrated& fine) {
    Diagnostics d;
    d.nodes = rule.nodes_per_curve;
    d.est_error = (coarse.value - fine.value).max_norm();
    d.tail_bound = std::max(coarse.tail, fine.tail);
    d.contour = rule.contour_desc;
    d.unit = rule.unit;
    d.resolvent_warning = coarse.warn || fine.warn;
    return d;
}

using Integrator = Integrated (*)(const SliceFunction&, const QMatrix&, const QuadratureRule&);

CalcResult apply_route(Integrator route, const SliceFunction& f, const QMatrix& t,
                       const SliceCauchyDomain& domain, const ImaginaryUnit& unit, int nodes) {
    const QuadratureRule rule = quadrature(domain, unit, nodes);
    validate_apply(f, t, domain, rule);
    const QuadratureRule rule2 = quadrature(domain, unit, 2 * nodes);
    const Integrated coarse = route(f, t, rule);
    const Integrated fine = route(f, t, rule2);
    CalcResult res{coarse.value, make_diag(rule, coarse, fine)};
    if (domain.unbounded) res.op += QMatrix::identity(t.dim()).scaled_right(*f.at_infinity());
    return res;
}

} // namespace

CalcResult apply_left(const SliceFunction& f, const QMatrix& t, const SliceCauchyDomain& domain,
                      const ImaginaryUnit& unit, int nodes) {
    if (!f.left_compatible())
        throw PreconditionError("apply_left needs a left slice hyperholomorphic function");
    return apply_route(integrate_left, f, t, domain, unit, nodes);
}

CalcResult apply_right(const SliceFunction& f, const QMatrix& t, const SliceCauchyDomain& domain,
                       const ImaginaryUnit& unit, int nodes) {
    if (!f.right_compatible())
        throw PreconditionError("apply_right needs a right slice hyperholomorphic function");
    return apply_route(integrate_right, f, t, domain, unit, nodes);
}

CalcResult apply_intrinsic(const SliceFunction& f, const QMatrix& t,
                           const SliceCauchyDomain& domain, const ImaginaryUnit& unit,
                           int nodes) {
    if (f.chirality() != Chirality::Intrinsic)
        throw PreconditionError("apply_intrinsic needs an intrinsic function");
    CalcResult res = apply_route(integrate_intrinsic, f, t, domain, unit, nodes);

    // The left and right routes must reproduce the same operator.
    const QuadratureRule rule = quadrature(domain, unit, nodes);
    QMatrix left = integrate_left(f, t, rule).value;
    QMatrix right = integrate_right(f, t, rule).value;
    if (domain.unbounded) {
        const QMatrix inf_term = QMatrix::identity(t.dim()).scaled_right(*f.at_infinity());
        left += inf_term;
        right += inf_term;
    }
    const double tol = verify_tolerance(res.diag);
    if ((res.op - left).max_norm() > tol || (res.op - right).max_norm() > tol)
        throw Error("intrinsic calculus disagrees with the left/right routes");
    return res;
}

DiagCalcResult apply_intrinsic(const SliceFunction& f, const DiagonalOperator& d,
                               const SliceCauchyDomain& domain, const ImaginaryUnit& unit,
                               int nodes) {
    if (f.chirality() != Chirality::Intrinsic)
        throw PreconditionError("apply_intrinsic needs an intrinsic function");
    for (const Sphere& s : d.closure.spheres)
        if (!contains(domain, s.s0, s.s1))
            throw PreconditionError("declared spectrum closure is not enclosed");
    if (d.closure.real_line) {
        for (double x : {-0.9, -0.3, 0.0, 0.4, 0.8})
            if (!contains(domain, x * (domain.truncation.value_or(10.0)), 0.0))
                throw PreconditionError("declared real-axis closure is not enclosed");
    }
    if (domain.unbounded && !f.at_infinity())
        throw PreconditionError("value at infinity required for an unbounded domain");

    const size_t m = d.symbols.size();
    const bool all_real = std::all_of(d.symbols.begin(), d.symbols.end(),
                                      [](const Quaternion& q) { return q.vec_norm() == 0.0; });
    std::vector<double> real_syms;
    if (all_real) {
        real_syms.reserve(m);
        for (const Quaternion& q : d.symbols) real_syms.push_back(q.w);
    }

    const auto run = [&](int per_curve, double* tail_out) {
        const QuadratureRule rule = quadrature(domain, unit, per_curve);
        for (const QuadratureNode& node : rule.nodes)
            if (!f.defined_at(node.z.real(), std::abs(node.z.imag())))
                throw PreconditionError("integration contour leaves the domain of the function");
        std::vector<double> acc(m, 0.0), tail(m, 0.0);
        QVector qacc(m), qtail(m);
        for (const QuadratureNode& node : rule.nodes) {
            const cd fz = f.complex_value(node.z);
            const double a = 2.0 * (fz * node.w * std::conj(node.z)).real();
            const double b = 2.0 * (fz * node.w).real();
            const double s0 = node.z.real();
            const double r2 = std::norm(node.z);
            if (all_real) {
                simd::active().diag_fold(real_syms.data(), m, s0, r2, a, b, acc.data());
                if (node.far_closure)
                    simd::active().diag_fold(real_syms.data(), m, s0, r2, a, b, tail.data());
            } else {
                const Quaternion s = embed_complex(node.z, unit);
                const QVector qinv = diag_pseudo_resolvent(d, s);
                for (size_t j = 0; j < m; ++j) {
                    const Quaternion c = qinv[j] * a - d.symbols[j] * qinv[j] * b;
                    qacc[j] += c;
                    if (node.far_closure) qtail[j] += c;
                }
            }
        }
        QVector out(m);
        double tailmax = 0.0;
        for (size_t j = 0; j < m; ++j) {
            out[j] = all_real ? Quaternion{acc[j] / (2.0 * kPi)} : qacc[j] * (1.0 / (2.0 * kPi));
            const double tb = all_real ? std::abs(tail[j]) / (2.0 * kPi)
                                       : qtail[j].norm() / (2.0 * kPi);
            tailmax = std::max(tailmax, tb);
            if (domain.unbounded) out[j] += *f.at_infinity();
        }
        if (tail_out) *tail_out = tailmax;
        return out;
    };

    double tail1 = 0.0, tail2 = 0.0;
    const QVector coarse = run(nodes, &tail1);
    const QVector fine = run(2 * nodes, &tail2);
    Diagnostics diag;
    diag.nodes = nodes;
    diag.est_error = max_norm(coarse - fine);
    diag.tail_bound = std::max(tail1, tail2);
    diag.contour = domain.describe();
    diag.unit = unit;
    return {coarse, diag};
}

ProjectionResult spectral_projection(const QMatrix& t, const std::vector<Sphere>& selected,
                                     double clearance, const ImaginaryUnit& unit, int nodes) {
    const SSpectrum spec = s_spectrum(t);
    std::vector<bool> is_selected(spec.spheres.size(), false);
    for (const Sphere& sel : selected) {
        bool found = false;
        for (size_t i = 0; i < spec.spheres.size(); ++i)
            if (sphere_dist(sel, spec.spheres[i]) <= 1e-6) {
                is_selected[i] = true;
                found = true;
                break;
            }
        if (!found)
            throw PreconditionError("selected sphere is not part of the S-spectrum");
    }
    double separation = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < spec.spheres.size(); ++i)
        for (size_t j = 0; j < spec.spheres.size(); ++j)
            if (is_selected[i] && !is_selected[j])
                separation = std::min(separation, sphere_dist(spec.spheres[i], spec.spheres[j]));
    if (separation < 2.0 * clearance - kSphereMergeTol)
        throw ConstructionError("selected spheres are not separated by 2*clearance");

    const SliceCauchyDomain domain = enclose(spec, clearance);
    std::vector<int> sel_comps;
    for (size_t c = 0; c < domain.components.size(); ++c) {
        bool has_sel = false, has_unsel = false;
        for (size_t i = 0; i < spec.spheres.size(); ++i) {
            if (!region_contains(domain.components[c].region, spec.spheres[i].s0,
                                 spec.spheres[i].s1))
                continue;
            (is_selected[i] ? has_sel : has_unsel) = true;
        }
        if (has_sel && has_unsel)
            throw ConstructionError("selected and unselected spheres share a component");
        if (has_sel) sel_comps.push_back(static_cast<int>(c));
    }

    const SliceFunction chi = SliceFunction::characteristic(domain, sel_comps);
    CalcResult res = apply_intrinsic(chi, t, domain, unit, nodes);

    const double tol = 100.0 * verify_tolerance(res.diag);
    const QMatrix& e = res.op;
    if ((e * e - e).max_norm() > tol || (e * t - t * e).max_norm() > tol)
        throw Error("spectral projection failed the idempotency/commutation check");
    return {res.op, res.diag, domain, sel_comps};
}

RestrictResult restrict_to_range(const QMatrix& t, const QMatrix& e, double tol) {
    const int n = t.dim();
    const double scale = std::max(1.0, e.max_norm());
    if ((e * e - e).max_norm() > tol * scale)
        throw PreconditionError("restriction requires an idempotent operator");
    if ((e * t - t * e).max_norm() > tol * std::max(1.0, t.max_norm()) * scale)
        throw PreconditionError("restriction requires a projection commuting with T");

    // column-pivoted elimination over H; pivot columns of E span ran E
    constexpr double kPivotTol = 1e-10;
    QMatrix a = e;
    std::vector<int> pivot_cols;
    std::vector<bool> used_col(n, false);
    int row = 0;
    while (row < n) {
        int pi = -1, pj = -1;
        double best = 0.0;
        for (int i = row; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (used_col[j]) continue;
                const double v = a(i, j).norm();
                if (v > best) { best = v; pi = i; pj = j; }
            }
        if (best <= kPivotTol) break;
        used_col[pj] = true;
        pivot_cols.push_back(pj);
        if (pi != row)
            for (int j = 0; j < n; ++j) std::swap(a(row, j), a(pi, j));
        const Quaternion inv_piv = inverse(a(row, pj));
        for (int i = row + 1; i < n; ++i) {
            const Quaternion m = a(i, pj) * inv_piv;
            for (int j = 0; j < n; ++j) a(i, j) -= m * a(row, j);
        }
        ++row;
    }
    const int rank = static_cast<int>(pivot_cols.size());
    if (rank == 0) throw PreconditionError("projection has numerically zero range");
    std::sort(pivot_cols.begin(), pivot_cols.end());

    std::vector<QVector> basis;
    for (int j : pivot_cols) {
        QVector b(n);
        for (int i = 0; i < n; ++i) b[i] = e(i, j);
        basis.push_back(std::move(b));
    }

    // coordinates: solve B c = T b_j through the complex embedding
    linalg::CMatrix bc(2 * n, 2 * rank);
    for (int j = 0; j < rank; ++j)
        for (int i = 0; i < n; ++i) {
            const Quaternion& q = basis[j][i];
            const cd qa{q.w, q.x}, qb{q.y, q.z};
            bc(i, j) = qa;
            bc(i, j + rank) = qb;
            bc(i + n, j) = -std::conj(qb);
            bc(i + n, j + rank) = std::conj(qa);
        }
    QMatrix t_sigma(rank);
    for (int j = 0; j < rank; ++j) {
        const QVector w = mat_vec(t, basis[j]);
        std::vector<cd> rhs(2 * n);
        for (int i = 0; i < n; ++i) {
            rhs[i] = cd{w[i].w, w[i].x};
            rhs[i + n] = -std::conj(cd{w[i].y, w[i].z});
        }
        const std::vector<cd> u = linalg::qr_least_squares(bc, rhs);
        for (int i = 0; i < rank; ++i) {
            const cd ca = u[i];
            const cd cb = -std::conj(u[i + rank]);
            t_sigma(i, j) = {ca.real(), ca.imag(), cb.real(), cb.imag()};
        }
    }
    return {t_sigma, basis};
}

QMatrix poly_apply(const std::vector<double>& coeffs, const QMatrix& t) {
    const int n = t.dim();
    if (coeffs.empty()) return QMatrix(n);
    QMatrix acc = QMatrix::identity(n) * coeffs.back();
    for (size_t k = coeffs.size() - 1; k-- > 0;) {
        acc = acc * t;
        acc.add_scaled(coeffs[k], QMatrix::identity(n));
    }
    return acc;
}

std::vector<Sphere> map_spheres(const SliceFunction& f, const std::vector<Sphere>& spheres) {
    std::vector<Sphere> out;
    for (const Sphere& s : spheres) {
        const cd w = f.complex_value({s.s0, s.s1});
        Sphere img{w.real(), std::abs(w.imag())};
        const bool dup = std::any_of(out.begin(), out.end(), [&](const Sphere& t) {
            return sphere_dist(img, t) <= 1e-12;
        });
        if (!dup) out.push_back(img);
    }
    return out;
}

double sphere_hausdorff(const std::vector<Sphere>& a, const std::vector<Sphere>& b) {
    const auto one_sided = [](const std::vector<Sphere>& p, const std::vector<Sphere>& q) {
        double worst = 0.0;
        for (const Sphere& s : p) {
            double best = std::numeric_limits<double>::infinity();
            for (const Sphere& t : q) best = std::min(best, sphere_dist(s, t));
            worst = std::max(worst, best);
        }
        return worst;
    };
    if (a.empty() || b.empty()) return a.size() == b.size() ? 0.0 : std::numeric_limits<double>::infinity();
    return std::max(one_sided(a, b), one_sided(b, a));
}

bool IdentityReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckLine& c) { return c.pass; });
}

CheckLine& IdentityReport::add(const std::string& name, double residual, double tolerance) {
    checks.push_back({name, residual, tolerance, residual <= tolerance});
    return checks.back();
}

namespace {

Quaternion random_quaternion(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    return {u(rng), u(rng), u(rng), u(rng)};
}

QVector random_vector(int n, std::mt19937_64& rng) {
    QVector v(n);
    for (Quaternion& q : v) q = random_quaternion(rng);
    return v;
}

// random resolvent-set point at a safe distance from the spectrum
Quaternion random_resolvent_point(const SSpectrum& spec, std::mt19937_64& rng, double min_dist) {
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int tries = 0; tries < 1000; ++tries) {
        Quaternion s = random_quaternion(rng) * 2.0;
        s.w = u(rng);
        const Sphere sp = sphere_of(s);
        bool ok = true;
        for (const Sphere& t : spec.spheres)
            if (sphere_dist(sp, t) < min_dist) ok = false;
        if (ok) return s;
    }
    throw Error("could not sample a resolvent point");
}

} // namespace

IdentityReport verify_identities(const QMatrix& t, const VerifyConfig& cfg) {
    IdentityReport rep;
    std::mt19937_64 rng(cfg.seed);
    const int n = t.dim();
    const SSpectrum spec = s_spectrum(t);
    const QMatrix id = QMatrix::identity(n);

    // enclose() merges spheres closer than 2*clearance, so the base
    // clearance needs no shrinking; the sphere gap only gates projections
    double min_gap = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < spec.spheres.size(); ++i)
        for (size_t j = i + 1; j < spec.spheres.size(); ++j)
            min_gap = std::min(min_gap, sphere_dist(spec.spheres[i], spec.spheres[j]));
    const double clearance = cfg.clearance;

    double max_reach = 0.0;
    for (const Sphere& s : spec.spheres) max_reach = std::max(max_reach, s.s0 + s.s1);
    const double pole_a = max_reach + std::max(1.0, 4.0 * cfg.clearance);

    // --- S-resolvent equations ---
    {
        double rl = 0.0, rr = 0.0, r2 = 0.0;
        for (int k = 0; k < 5; ++k) {
            const Quaternion s = random_resolvent_point(spec, rng, 0.2);
            const QVector v = random_vector(n, rng);
            const double vn = std::max(1.0, max_norm(v));
            const QMatrix sl = s_resolvent_left(t, s);
            const QMatrix sr = s_resolvent_right(t, s);
            rl = std::max(rl, max_norm(mat_vec(sl, s * v) - mat_vec(t, mat_vec(sl, v)) - v) / vn);
            rr = std::max(rr, max_norm(s * mat_vec(sr, v) - mat_vec(sr, mat_vec(t, v)) - v) / vn);

            Quaternion p = random_resolvent_point(spec, rng, 0.2);
            while (sphere_dist(sphere_of(p), sphere_of(s)) < 0.1)
                p = random_resolvent_point(spec, rng, 0.2);
            const QMatrix slp = s_resolvent_left(t, p);
            const QMatrix lhs = sr * slp;
            const Quaternion den = p * p - p * (2.0 * s.re()) + Quaternion{s.norm_sq()};
            const QMatrix diff = sr - slp;
            const QMatrix rhs =
                (diff.scaled_right(p) - diff.scaled_left(s.conj())).scaled_right(inverse(den));
            r2 = std::max(r2, (lhs - rhs).max_norm());
        }
        rep.add("left S-resolvent equation", rl, 1e-9);
        rep.add("right S-resolvent equation", rr, 1e-9);
        rep.add("two-variable S-resolvent equation", r2, 1e-9);
    }

    const EncloseOptions avoid_pole{{Sphere{pole_a, 0.0}}, std::nullopt};
    const SliceCauchyDomain dom1 = enclose(spec, clearance, avoid_pole);
    const SliceCauchyDomain dom2 = enclose(spec, 0.7 * clearance, avoid_pole);

    // --- product rule for intrinsic f, g ---
    {
        const std::vector<std::pair<std::string, SliceFunction>> funcs = {
            {"s^2", SliceFunction::polynomial({0, 0, 1})},
            {"s^3", SliceFunction::polynomial({0, 0, 0, 1})},
            {"(s-a)^-1", SliceFunction::rational({1}, {-pole_a, 1})},
        };
        for (const auto& [fname, f] : funcs)
            for (const auto& [gname, g] : funcs) {
                const SliceFunction fg = multiply(f, g);
                const QMatrix lhs = apply_intrinsic(fg, t, dom1, cfg.unit, cfg.nodes).op;
                const QMatrix rhs = apply_intrinsic(f, t, dom2, cfg.unit, cfg.nodes).op *
                                    apply_intrinsic(g, t, dom1, cfg.unit, cfg.nodes).op;
                rep.add("product rule " + fname + " * " + gname, (lhs - rhs).max_norm(), 1e-8);
            }
    }

    // --- intrinsic left = right ---
    {
        const SliceFunction f = SliceFunction::polynomial({0, 0, 1});
        const QMatrix l = apply_left(f, t, dom1, cfg.unit, cfg.nodes).op;
        const QMatrix r = apply_right(f, t, dom1, cfg.unit, cfg.nodes).op;
        rep.add("intrinsic left=right (s^2)", (l - r).max_norm(), 1e-9);
    }

    // --- contour and unit independence ---
    {
        const SliceFunction f = SliceFunction::rational({1}, {-pole_a, 1});
        const CalcResult a = apply_left(f, t, dom1, cfg.unit, cfg.nodes);
        const CalcResult b = apply_left(f, t, dom2, cfg.unit_alt, cfg.nodes);
        const double tol = 10.0 * std::max({a.diag.est_error, b.diag.est_error, 1e-13});
        rep.add("contour/unit independence", (a.op - b.op).max_norm(), tol);
    }

    // --- spectral mapping for intrinsic polynomials ---
    {
        for (const auto& [pname, coeffs] :
             std::vector<std::pair<std::string, std::vector<double>>>{
                 {"s^2", {0, 0, 1}}, {"s^3-2s", {0, -2, 0, 1}}}) {
            const SliceFunction p = SliceFunction::polynomial(coeffs);
            const QMatrix pt = poly_apply(coeffs, t);
            const double dist =
                sphere_hausdorff(s_spectrum(pt).spheres, map_spheres(p, spec.spheres));
            rep.add("spectral mapping " + pname, dist, 1e-8);
        }
    }

    // --- composition (g o f)(T) = g(f(T)) ---
    {
        const SliceFunction f = SliceFunction::polynomial({0, 0, 1});
        const QMatrix ft = poly_apply({0, 0, 1}, t);
        const SSpectrum fspec = s_spectrum(ft);
        double freach = 0.0;
        for (const Sphere& s : fspec.spheres) freach = std::max(freach, s.s0 + s.s1);
        double reach = 0.0;
        for (const Sphere& s : spec.spheres) reach = std::max(reach, std::hypot(s.s0, s.s1));
        // the pole of g at a real point whose preimages +- sqrt(a) under
        // s^2 stay clear of the spectrum of T as well
        const double ga =
            std::max(freach + 2.0, std::pow(reach + 2.5 * clearance, 2));
        const double root = std::sqrt(ga);
        const SliceFunction g = SliceFunction::rational({1}, {-ga, 1});
        const SliceFunction gof = compose(g, f);
        const SliceCauchyDomain gdom =
            enclose(spec, clearance, {{Sphere{root, 0.0}, Sphere{-root, 0.0}}, {}});
        const QMatrix lhs = apply_intrinsic(gof, t, gdom, cfg.unit, cfg.nodes).op;
        const SliceCauchyDomain fdom = enclose(fspec, cfg.clearance, {{Sphere{ga, 0.0}}, {}});
        const QMatrix rhs = apply_intrinsic(g, ft, fdom, cfg.unit, cfg.nodes).op;
        rep.add("composition (g o f)(T) = g(f(T))", (lhs - rhs).max_norm(), 1e-8);
    }

    // --- polynomial consistency ---
    {
        const SliceFunction f = SliceFunction::polynomial({0, 0, 1});
        const QMatrix a = apply_intrinsic(f, t, dom1, cfg.unit, cfg.nodes).op;
        rep.add("calculus vs direct T^2", (a - t * t).max_norm(), 1e-9);
    }

    // --- projection algebra (when the spectrum splits) ---
    if (spec.spheres.size() >= 2 && min_gap > 0.15) {
        const double pc = std::min(0.45 * min_gap, cfg.clearance);
        const std::vector<Sphere> first{spec.spheres.front()};
        std::vector<Sphere> rest(spec.spheres.begin() + 1, spec.spheres.end());
        const ProjectionResult p1 = spectral_projection(t, first, pc, cfg.unit, cfg.nodes);
        const ProjectionResult p2 = spectral_projection(t, rest, pc, cfg.unit, cfg.nodes);
        const QMatrix& e1 = p1.projection;
        const QMatrix& e2 = p2.projection;
        rep.add("projection idempotent", (e1 * e1 - e1).max_norm(), 1e-9);
        rep.add("projection partition of identity", (e1 + e2 - id).max_norm(), 1e-9);
        rep.add("projection orthogonality", std::max((e1 * e2).max_norm(), (e2 * e1).max_norm()),
                1e-9);
        rep.add("projection commutes with T", (e1 * t - t * e1).max_norm(), 1e-9);
        const RestrictResult r1 = restrict_to_range(t, e1);
        const RestrictResult r2 = restrict_to_range(t, e2);
        std::vector<Sphere> joined = s_spectrum(r1.op).spheres;
        for (const Sphere& s : s_spectrum(r2.op).spheres) joined.push_back(s);
        rep.add("restricted spectra partition sigma_S",
                sphere_hausdorff(joined, spec.spheres), 1e-7);
    }

    return rep;
}

IdentityReport verify_diagonal(const DiagonalOperator& d, const VerifyConfig& cfg) {
    IdentityReport rep;
    const SliceCauchyDomain dom =
        enclose(d.closure, cfg.diag_eps, {{}, cfg.diag_truncation});
    const SliceFunction f = SliceFunction::rational({1}, {1, 0, 1});

    const DiagCalcResult res = apply_intrinsic(f, d, dom, cfg.unit, cfg.diag_nodes);
    double worst = 0.0;
    for (size_t j = 0; j < d.symbols.size(); ++j) {
        const Quaternion q = d.symbols[j];
        const Quaternion expected = inverse(q * q + Quaternion::one());
        worst = std::max(worst, (res.values[j] - expected).norm());
    }
    rep.add("diagonal intrinsic calculus vs direct evaluation", worst, 1e-6);

    // polynomial product rule P(s) = s against the entrywise oracle
    const SliceFunction pf = multiply(SliceFunction::polynomial({0, 1}), f, Quaternion{0.0});
    const DiagCalcResult pf_res = apply_intrinsic(pf, d, dom, cfg.unit, cfg.diag_nodes);
    double worst2 = 0.0;
    for (size_t j = 0; j < d.symbols.size(); ++j) {
        const Quaternion q = d.symbols[j];
        worst2 = std::max(worst2, (pf_res.values[j] - q * res.values[j]).norm());
    }
    rep.add("diagonal product rule P(T) f(T) = (Pf)(T)", worst2, 1e-5);
    return rep;
}

} // namespace sfcalc
