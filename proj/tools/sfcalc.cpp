// Batch front end: loads a job description, runs the requested task and
// writes paired human/machine reports.
#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <variant>

#include "sfcalc/calculus.hpp"
#include "sfcalc/jobspec.hpp"
#include "sfcalc/model2d.hpp"
#include "sfcalc/random.hpp"
#include "sfcalc/report.hpp"

namespace {

using namespace sfcalc;

QMatrix build_dense(const JobSpec::Operator& op, std::uint64_t seed) {
    if (op.type == "random") {
        auto rng = seeded_rng(seed);
        return random_qmatrix(op.dim, rng);
    }
    QMatrix t(static_cast<int>(op.rows.size()));
    for (int i = 0; i < t.dim(); ++i)
        for (int j = 0; j < t.dim(); ++j) t(i, j) = op.rows[i][j];
    return t;
}

DiagonalOperator build_diagonal(const JobSpec::Operator& op) {
    SSpectrum closure;
    closure.real_line = op.closure_real_line;
    closure.includes_infinity = op.closure_infinity;
    closure.spheres = op.closure_spheres;
    if (closure.spheres.empty() && !closure.real_line)
        for (const Quaternion& q : op.symbols) closure.spheres.push_back(sphere_of(q));
    return {op.symbols, closure};
}

bool needs_domain_first(const JobSpec::Function& fn) {
    return fn.name == "const" || fn.name == "char";
}

SliceFunction build_global_function(const JobSpec::Function& fn) {
    std::optional<SliceFunction> f;
    if (fn.name == "polynomial") f = SliceFunction::polynomial(fn.coeffs);
    else if (fn.name == "rational") f = SliceFunction::rational(fn.num, fn.den);
    else if (fn.name == "exp") f = SliceFunction::exponential();
    else throw ParseError("unknown function '" + fn.name + "'");
    if (fn.infinity)
        return SliceFunction(f->components(), f->chirality(), fn.infinity);
    return *f;
}

SliceFunction build_domain_function(const JobSpec::Function& fn, const SliceCauchyDomain& d) {
    if (fn.name == "const") {
        SliceFunction f = SliceFunction::constants_on(d, fn.values);
        if (fn.infinity) return SliceFunction(f.components(), f.chirality(), fn.infinity);
        return f;
    }
    return SliceFunction::characteristic(d, fn.select);
}

std::vector<Sphere> pole_spheres(const SliceFunction& f) {
    std::vector<Sphere> out;
    for (const auto& comp : f.components())
        for (const Region& r : comp.region)
            out.insert(out.end(), r.excluded.begin(), r.excluded.end());
    return out;
}

ojson operator_json(const JobSpec::Operator& op, const JobSpec& spec) {
    ojson j{{"type", op.type}};
    if (op.type == "diagonal") {
        j["symbols"] = to_json(op.symbols);
        ojson clo = ojson::object();
        if (op.closure_real_line) clo["real_line"] = true;
        if (op.closure_infinity) clo["infinity"] = true;
        ojson sph = ojson::array();
        for (const Sphere& s : op.closure_spheres) sph.push_back(to_json(s));
        clo["spheres"] = sph;
        j["closure"] = clo;
    } else {
        const QMatrix t = build_dense(op, spec.seed);
        j["matrix"] = to_json(t);
    }
    return j;
}

ojson function_json(const JobSpec::Function& fn) {
    ojson j{{"name", fn.name}};
    if (!fn.coeffs.empty()) j["coeffs"] = fn.coeffs;
    if (!fn.num.empty()) j["num"] = fn.num;
    if (!fn.den.empty()) j["den"] = fn.den;
    if (!fn.values.empty()) j["values"] = to_json(fn.values);
    if (!fn.select.empty()) j["select"] = fn.select;
    if (fn.infinity) j["infinity"] = to_json(*fn.infinity);
    return j;
}

void echo_inputs(Report& rep, const JobSpec& spec) {
    rep.inputs["seed"] = spec.seed;
    rep.inputs["unit"] = spec.unit;
    rep.inputs["tolerance"] = spec.tolerance;
    rep.inputs["clearance"] = spec.contour.clearance;
    rep.inputs["nodes"] = spec.contour.nodes;
    if (spec.contour.truncation) rep.inputs["truncation"] = *spec.contour.truncation;
    if (spec.op) rep.inputs["operator"] = operator_json(*spec.op, spec);
    if (spec.fn) rep.inputs["function"] = function_json(*spec.fn);
}

void run_spectrum(const JobSpec& spec, Report& rep) {
    if (!spec.op) throw ParseError("task 'spectrum' needs an operator");
    if (spec.op->type == "diagonal") {
        const DiagonalOperator d = build_diagonal(*spec.op);
        ojson sph = ojson::array();
        for (const Quaternion& q : d.symbols) sph.push_back(to_json(sphere_of(q)));
        rep.results["symbol_spheres"] = sph;
        rep.results["declared_closure"] = to_json(d.closure);
        return;
    }
    const QMatrix t = build_dense(*spec.op, spec.seed);
    rep.results["spectrum"] = to_json(s_spectrum(t));
}

void run_apply(const JobSpec& spec, Report& rep) {
    if (!spec.op) throw ParseError("apply tasks need an operator");
    if (!spec.fn) throw ParseError("apply tasks need a function");
    const ImaginaryUnit unit = parse_unit(spec.unit);

    if (spec.op->type == "diagonal") {
        if (spec.task != "apply-intrinsic")
            throw ParseError("diagonal operators support only apply-intrinsic");
        const DiagonalOperator d = build_diagonal(*spec.op);
        SliceCauchyDomain domain =
            enclose(d.closure, spec.contour.clearance, {{}, spec.contour.truncation});
        if (needs_domain_first(*spec.fn))
            throw ParseError("diagonal apply needs a globally defined function");
        const SliceFunction f = build_global_function(*spec.fn);
        const DiagCalcResult res = apply_intrinsic(f, d, domain, unit, spec.contour.nodes);
        rep.results["entries"] = to_json(res.values);
        rep.results["diagnostics"] = to_json(res.diag);
        return;
    }

    const QMatrix t = build_dense(*spec.op, spec.seed);
    const SSpectrum sp = s_spectrum(t);
    SliceCauchyDomain domain;
    std::optional<SliceFunction> f;
    if (needs_domain_first(*spec.fn)) {
        domain = enclose(sp, spec.contour.clearance, {{}, spec.contour.truncation});
        f = build_domain_function(*spec.fn, domain);
    } else {
        f = build_global_function(*spec.fn);
        domain = enclose(sp, spec.contour.clearance, {pole_spheres(*f), spec.contour.truncation});
    }
    CalcResult res;
    if (spec.task == "apply-left") res = apply_left(*f, t, domain, unit, spec.contour.nodes);
    else if (spec.task == "apply-right") res = apply_right(*f, t, domain, unit, spec.contour.nodes);
    else res = apply_intrinsic(*f, t, domain, unit, spec.contour.nodes);
    rep.results["spectrum"] = to_json(sp);
    rep.results["operator"] = to_json(res.op);
    rep.results["diagnostics"] = to_json(res.diag);
}

void run_project(const JobSpec& spec, Report& rep) {
    if (!spec.op || spec.op->type == "diagonal")
        throw ParseError("task 'project' needs a dense or random operator");
    if (spec.project.empty()) throw ParseError("task 'project' needs a project section");
    const QMatrix t = build_dense(*spec.op, spec.seed);
    const ImaginaryUnit unit = parse_unit(spec.unit);
    const ProjectionResult res =
        spectral_projection(t, spec.project, spec.contour.clearance, unit, spec.contour.nodes);
    rep.results["spectrum"] = to_json(s_spectrum(t));
    rep.results["projection"] = to_json(res.projection);
    rep.results["diagnostics"] = to_json(res.diag);

    const double tol = std::max(spec.tolerance, verify_tolerance(res.diag));
    const QMatrix& e = res.projection;
    IdentityReport checks;
    checks.add("projection idempotent", (e * e - e).max_norm(), tol);
    checks.add("projection commutes with T", (e * t - t * e).max_norm(), tol);
    const RestrictResult restricted = restrict_to_range(t, e);
    rep.results["restricted"] = to_json(restricted.op);
    rep.results["restricted_spectrum"] = to_json(s_spectrum(restricted.op));
    checks.add("restricted spectrum matches the selection",
               sphere_hausdorff(s_spectrum(restricted.op).spheres, spec.project), 1e-6);
    rep.add_checks(checks);
}

void run_verify(const JobSpec& spec, Report& rep) {
    if (!spec.op) throw ParseError("task 'verify' needs an operator");
    VerifyConfig cfg;
    cfg.clearance = spec.contour.clearance;
    cfg.nodes = spec.contour.nodes;
    cfg.unit = parse_unit(spec.unit);
    cfg.unit_alt = spec.unit == "j" ? ImaginaryUnit::k() : ImaginaryUnit::j();
    cfg.seed = spec.seed;
    if (spec.contour.truncation) cfg.diag_truncation = *spec.contour.truncation;
    if (spec.op->type == "diagonal") {
        rep.add_checks(verify_diagonal(build_diagonal(*spec.op), cfg));
    } else {
        rep.add_checks(verify_identities(build_dense(*spec.op, spec.seed), cfg));
    }
}

void run_reproduce(const JobSpec& spec, Report& rep) {
    const double tol = spec.tolerance;
    const ImaginaryUnit unit = parse_unit(spec.unit);
    const QMatrix t = model2d::op();
    const QMatrix id = QMatrix::identity(2);
    IdentityReport checks;

    const SSpectrum sp = s_spectrum(t);
    rep.results["spectrum"] = to_json(sp);
    checks.add("S-spectrum equals {0} u S",
               sphere_hausdorff(sp.spheres, model2d::spectrum()), tol);

    const double clearance = std::min(spec.contour.clearance, 0.45);
    const ProjectionResult e0 =
        spectral_projection(t, {{0.0, 0.0}}, clearance, unit, spec.contour.nodes);
    const ProjectionResult es =
        spectral_projection(t, {{0.0, 1.0}}, clearance, unit, spec.contour.nodes);
    rep.results["projection_zero"] = to_json(e0.projection);
    rep.results["projection_sphere"] = to_json(es.projection);
    rep.results["diagnostics"] = to_json(e0.diag);
    checks.add("E_0 matches the reference",
               (e0.projection - model2d::projection_zero()).max_norm(), tol);
    checks.add("E_S matches the reference",
               (es.projection - model2d::projection_sphere()).max_norm(), tol);
    checks.add("E_0^2 = E_0", (e0.projection * e0.projection - e0.projection).max_norm(),
               std::max(tol, 1e-9));
    checks.add("E_0 + E_S = I", (e0.projection + es.projection - id).max_norm(),
               std::max(tol, 1e-9));
    checks.add("E_0 E_S = 0", (e0.projection * es.projection).max_norm(), std::max(tol, 1e-9));
    checks.add("T E_0 = E_0 T", (t * e0.projection - e0.projection * t).max_norm(),
               std::max(tol, 1e-9));

    // locally constant J indicator of U_0: the two calculi disagree
    const SliceCauchyDomain& domain = e0.domain;
    std::vector<Quaternion> values(domain.components.size(), Quaternion{});
    for (int c : e0.selected_components) values[static_cast<size_t>(c)] = ImaginaryUnit::j().q();
    const SliceFunction jchi = SliceFunction::constants_on(domain, values);
    const QMatrix left = apply_left(jchi, t, domain, unit, spec.contour.nodes).op;
    const QMatrix right = apply_right(jchi, t, domain, unit, spec.contour.nodes).op;
    rep.results["left_indicator"] = to_json(left);
    rep.results["right_indicator"] = to_json(right);
    checks.add("left calculus of J chi_{U0}", (left - model2d::left_indicator_j()).max_norm(),
               tol);
    checks.add("right calculus of J chi_{U0}",
               (right - model2d::right_indicator_j()).max_norm(), tol);
    const QMatrix diff = left - right;
    double smallest_nonzero = 1e300;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const double n = diff(i, j).norm();
            if (n > 1e-6) smallest_nonzero = std::min(smallest_nonzero, n);
        }
    checks.add("left/right discrepancy entries have magnitude 1",
               std::abs(smallest_nonzero - 1.0), std::max(tol, 1e-9));

    const RestrictResult r0 = restrict_to_range(t, e0.projection);
    const RestrictResult rs = restrict_to_range(t, es.projection);
    checks.add("restricted spectrum of E_0 V",
               sphere_hausdorff(s_spectrum(r0.op).spheres, {{0.0, 0.0}}), 1e-8);
    checks.add("restricted spectrum of E_S V",
               sphere_hausdorff(s_spectrum(rs.op).spheres, {{0.0, 1.0}}), 1e-8);
    rep.add_checks(checks);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"S-functional calculus for quaternionic matrices"};
    std::string task;
    std::string in_path;
    std::string out_stem;
    std::optional<int> nodes;
    std::optional<double> clearance, tolerance;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> unit;

    app.add_option("task", task,
                   "spectrum | apply-left | apply-right | apply-intrinsic | project | verify | "
                   "reproduce-example (overrides the job file)");
    app.add_option("--in", in_path, "job specification file");
    app.add_option("--out", out_stem, "report stem (writes <stem>.txt and <stem>.json)");
    app.add_option("--nodes", nodes, "quadrature nodes per curve");
    app.add_option("--clearance", clearance, "contour clearance around the spectrum");
    app.add_option("--tolerance", tolerance, "check tolerance");
    app.add_option("--seed", seed, "seed for generated operators");
    app.add_option("--unit", unit, "imaginary unit of the integration plane (i, j, k or a,b,c)");
    CLI11_PARSE(app, argc, argv);

    try {
        JobSpec spec;
        if (!in_path.empty()) spec = parse_jobspec_file(in_path);
        if (!task.empty()) spec.task = task;
        if (nodes) spec.contour.nodes = *nodes;
        if (clearance) spec.contour.clearance = *clearance;
        if (tolerance) spec.tolerance = *tolerance;
        if (seed) spec.seed = *seed;
        if (unit) spec.unit = *unit;
        if (!out_stem.empty()) spec.output = out_stem;
        if (spec.output.empty()) spec.output = "report";
        if (spec.task.empty()) throw ParseError("no task given");

        Report rep;
        rep.task = spec.task;
        echo_inputs(rep, spec);

        if (spec.task == "spectrum") run_spectrum(spec, rep);
        else if (spec.task == "apply-left" || spec.task == "apply-right" ||
                 spec.task == "apply-intrinsic")
            run_apply(spec, rep);
        else if (spec.task == "project") run_project(spec, rep);
        else if (spec.task == "verify") run_verify(spec, rep);
        else if (spec.task == "reproduce-example") run_reproduce(spec, rep);
        else throw ParseError("unknown task '" + spec.task + "'");

        rep.write(spec.output);
        std::cout << rep.text();
        return rep.pass() ? 0 : 2;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
