#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sfcalc/calculus.hpp"
#include "sfcalc/model2d.hpp"
#include "sfcalc/random.hpp"

using namespace sfcalc;

namespace {

const Quaternion I = ImaginaryUnit::i().q();
const Quaternion J = ImaginaryUnit::j().q();

SliceCauchyDomain model_domain() {
    // the classical enclosure of {0} u S: B_{1/2}(0) and the ring 2/3..2
    return domain_from({disk_component(0.0, 0.5), shell_component({0, 0}, 2.0 / 3.0, 2.0)});
}

QMatrix inverse_via_adjoint(const QMatrix& m) {
    return from_complex_adjoint(linalg::inverse(linalg::lu_factor(complex_adjoint(m))));
}

} // namespace

TEST_CASE("constant functions produce a I") {
    const QMatrix t = model2d::op();
    SSpectrum line;
    line.real_line = true;
    line.includes_infinity = true;
    // bounded domain: the integral alone must reproduce a I ... use constant on all of H
    const SliceCauchyDomain d = model_domain();
    const Quaternion a{0.7, -0.3, 0.4, 1.1};
    const SliceFunction f = SliceFunction::constant(a);
    const CalcResult left = apply_left(f, t, d, ImaginaryUnit::i());
    CHECK((left.op - QMatrix::identity(2).scaled_right(a)).max_norm() < 1e-10);
    const CalcResult right = apply_right(f, t, d, ImaginaryUnit::i());
    CHECK((right.op - QMatrix::identity(2).scaled_left(a)).max_norm() < 1e-10);
    // scaled_right and scaled_left of the identity agree: a I = I a
    CHECK((left.op - right.op).max_norm() < 1e-10);
}

TEST_CASE("spectral projections of the model operator") {
    const QMatrix t = model2d::op();
    const ProjectionResult e0 = spectral_projection(t, {{0.0, 0.0}}, 0.45);
    const ProjectionResult es = spectral_projection(t, {{0.0, 1.0}}, 0.45);
    CHECK((e0.projection - model2d::projection_zero()).max_norm() < 1e-10);
    CHECK((es.projection - model2d::projection_sphere()).max_norm() < 1e-10);

    // projection algebra
    const QMatrix id = QMatrix::identity(2);
    CHECK((e0.projection * e0.projection - e0.projection).max_norm() < 1e-9);
    CHECK((e0.projection + es.projection - id).max_norm() < 1e-9);
    CHECK((e0.projection * es.projection).max_norm() < 1e-9);
    CHECK((es.projection * e0.projection).max_norm() < 1e-9);
    CHECK((e0.projection * t - t * e0.projection).max_norm() < 1e-9);

    // eigenvector actions: E0 keeps (1, I)^T, kills (J, -K)^T
    const QVector v1{Quaternion::one(), I};
    const QVector v2{J, -ImaginaryUnit::k().q()};
    CHECK(max_norm(mat_vec(e0.projection, v1) - v1) < 1e-9);
    CHECK(max_norm(mat_vec(e0.projection, v2)) < 1e-9);
    CHECK(max_norm(mat_vec(es.projection, v2) - v2) < 1e-9);
}

TEST_CASE("projection via the hand-built classical contour") {
    // integrate chi_{B_1/2(0)} over the disk+ring domain directly
    const QMatrix t = model2d::op();
    const SliceCauchyDomain d = model_domain();
    const SliceFunction chi = SliceFunction::characteristic(d, {0});
    const CalcResult res = apply_intrinsic(chi, t, d, ImaginaryUnit::i());
    CHECK((res.op - model2d::projection_zero()).max_norm() < 1e-10);
    CHECK(res.diag.est_error < 1e-10);
}

TEST_CASE("left/right discrepancy for the locally constant J indicator") {
    const QMatrix t = model2d::op();
    const SliceCauchyDomain d = model_domain();
    const SliceFunction f = SliceFunction::constants_on(d, {J, Quaternion{}});

    const QMatrix left = apply_left(f, t, d, ImaginaryUnit::i()).op;
    const QMatrix right = apply_right(f, t, d, ImaginaryUnit::i()).op;
    CHECK((left - model2d::left_indicator_j()).max_norm() < 1e-10);
    CHECK((right - model2d::right_indicator_j()).max_norm() < 1e-10);

    // the two calculi genuinely disagree; the difference has entries +-K
    const QMatrix diff = left - right;
    CHECK(diff.max_norm() >= 1.0 - 1e-10);
    CHECK(diff(0, 0).norm() < 1e-9);
    CHECK(approx_equal(diff(0, 1), ImaginaryUnit::k().q() * -1.0, 1e-9));
    CHECK(approx_equal(diff(1, 0), ImaginaryUnit::k().q(), 1e-9));

    // split off the locally constant part: f = c + f_tilde with f_tilde = 0 here;
    // apply_left(f) = E0 J and apply_right(f) = J E0
    const QMatrix e0 = model2d::projection_zero();
    CHECK((left - e0.scaled_right(J)).max_norm() < 1e-10);
    CHECK((right - e0.scaled_left(J)).max_norm() < 1e-10);
}

TEST_CASE("split-based decomposition under both calculi") {
    // f = J chi_{U0} + s^2 chi_{US}: apply_left(f) = E0 J + f_tilde(T),
    // apply_right(f) = J E0 + f_tilde(T)
    const QMatrix t = model2d::op();
    const SliceCauchyDomain d = model_domain();
    const SliceFunction sq = SliceFunction::polynomial({0, 0, 1});
    std::vector<SliceFunction::Component> comps;
    comps.push_back(
        {d.components[0].region, [](double, double) { return StemValue{J, Quaternion{}}; }});
    comps.push_back({d.components[1].region, sq.components()[0].stem});
    const SliceFunction f(comps, Chirality::TwoSided);

    const SplitResult sp = split_left_right(f);
    const QMatrix left = apply_left(f, t, d, ImaginaryUnit::i()).op;
    const QMatrix right = apply_right(f, t, d, ImaginaryUnit::i()).op;
    const QMatrix ft = apply_intrinsic(sp.intrinsic_part, t, d, ImaginaryUnit::i()).op;
    const QMatrix e0 = model2d::projection_zero();
    CHECK((left - (e0.scaled_right(J) + ft)).max_norm() < 1e-9);
    CHECK((right - (e0.scaled_left(J) + ft)).max_norm() < 1e-9);
}

TEST_CASE("intrinsic s^2 equals T^2 and rational inverse equals the solve") {
    auto rng = seeded_rng(81);
    const QMatrix t = random_qmatrix(3, rng);
    const SSpectrum spec = s_spectrum(t);
    const SliceCauchyDomain d = enclose(spec, 0.3, {{Sphere{9.0, 0.0}}, {}});

    const SliceFunction sq = SliceFunction::polynomial({0, 0, 1});
    const CalcResult r = apply_right(sq, t, d, ImaginaryUnit::i());
    CHECK((r.op - t * t).max_norm() < 1e-9);

    // f(s) = (9-s)^{-1} -> (9 I - T)^{-1} for a domain avoiding s = 9
    const SliceFunction f = SliceFunction::rational({1}, {9, -1});
    const CalcResult g = apply_left(f, t, d, ImaginaryUnit::i());
    const QMatrix expect = inverse_via_adjoint(QMatrix::identity(3) * 9.0 - t);
    CHECK((g.op - expect).max_norm() < 1e-9);
}

TEST_CASE("well-definedness: different units and domains agree") {
    auto rng = seeded_rng(82);
    const QMatrix t = random_qmatrix(2, rng);
    const SSpectrum spec = s_spectrum(t);
    const SliceFunction f = SliceFunction::rational({1}, {5, -1});
    const SliceCauchyDomain d1 = enclose(spec, 0.35, {{Sphere{5.0, 0.0}}, {}});
    const SliceCauchyDomain d2 = enclose(spec, 0.22, {{Sphere{5.0, 0.0}}, {}});
    const CalcResult a = apply_left(f, t, d1, ImaginaryUnit::i());
    const CalcResult b = apply_left(f, t, d2, ImaginaryUnit::j());
    const CalcResult c = apply_left(f, t, d2, ImaginaryUnit(1, 1, 1));
    const double tol = 10.0 * std::max({a.diag.est_error, b.diag.est_error, c.diag.est_error,
                                        1e-13});
    CHECK((a.op - b.op).max_norm() < tol);
    CHECK((a.op - c.op).max_norm() < tol);
}

TEST_CASE("bounded operator through an unbounded domain (constant extension)") {
    // extending f by a constant near infinity and adding the f(inf) I term
    // reproduces the bounded-domain computation
    const QMatrix t = model2d::op();
    const SliceFunction f = SliceFunction::rational({1}, {5, -1});

    const SliceCauchyDomain bounded = model_domain();
    const QMatrix a = apply_left(f, t, bounded, ImaginaryUnit::i()).op;

    // piecewise: f itself near the spectrum, the constant c on |s| > 2.8
    const Quaternion c{0.25, 0, 1, 0};
    std::vector<SliceFunction::Component> comps;
    comps.push_back({{Region::disk(0.0, 2.5)}, f.components()[0].stem});
    comps.push_back({{Region::disk_complement(0.0, 2.8)},
                     [c](double, double) { return StemValue{c, Quaternion{}}; }});
    const SliceFunction fext(comps, Chirality::Left, c);

    SliceCauchyDomain unbounded = domain_from({disk_component(0.0, 0.5),
                                               shell_component({0, 0}, 2.0 / 3.0, 2.0),
                                               complement_component(0.0, 3.0)});
    REQUIRE(unbounded.unbounded);
    const QMatrix b = apply_left(fext, t, unbounded, ImaginaryUnit::i(), 512).op;
    CHECK((a - b).max_norm() < 1e-9);
}

TEST_CASE("inverse property: f zero-free on the spectrum with finite f(inf)") {
    auto rng = seeded_rng(83);
    const QMatrix t = random_qmatrix(3, rng);
    const SSpectrum spec = s_spectrum(t);
    double reach = 0.0;
    for (const Sphere& s : spec.spheres) reach = std::max(reach, s.s0 + s.s1);
    const double a = reach + 3.0;
    // f(s) = (s^2 + a^2)^{-1} ... wait: needs zero-free on spectrum and
    // nonzero at infinity: use f = (s - a)^{-1} * ... simplest:
    // f(s) = (s^2 + c)/(s^2 + d) with c,d > reach^2: zero-free, f(inf) = 1
    const double c = a * a + 1.0, dd = a * a + 2.0;
    const SliceFunction f = SliceFunction::rational({c, 0, 1}, {dd, 0, 1});
    const SliceCauchyDomain dom = enclose(spec, 0.3);
    const QMatrix ft = apply_intrinsic(f, t, dom, ImaginaryUnit::i()).op;
    const SliceFunction finv = reciprocal(f);
    const QMatrix ftinv = apply_intrinsic(finv, t, dom, ImaginaryUnit::i()).op;
    CHECK((ft * ftinv - QMatrix::identity(3)).max_norm() < 1e-8);
    CHECK((ftinv - inverse_via_adjoint(ft)).max_norm() < 1e-8);
}

TEST_CASE("restrict to invariant subspaces of the model operator") {
    const QMatrix t = model2d::op();
    const QMatrix e0 = model2d::projection_zero();
    const QMatrix es = model2d::projection_sphere();

    const RestrictResult r0 = restrict_to_range(t, e0);
    REQUIRE(r0.op.dim() == 1);
    CHECK(r0.op(0, 0).norm() < 1e-9); // T v1 = 0
    const SSpectrum s0 = s_spectrum(r0.op);
    REQUIRE(s0.spheres.size() == 1);
    CHECK(sphere_dist(s0.spheres[0], {0, 0}) < 1e-9);

    const RestrictResult rs = restrict_to_range(t, es);
    REQUIRE(rs.op.dim() == 1);
    const SSpectrum ss = s_spectrum(rs.op);
    REQUIRE(ss.spheres.size() == 1);
    CHECK(sphere_dist(ss.spheres[0], {0, 1}) < 1e-9);

    // E = identity restricts to T itself up to basis permutation
    const RestrictResult rid = restrict_to_range(t, QMatrix::identity(2));
    CHECK(rid.op.dim() == 2);
    CHECK(sphere_hausdorff(s_spectrum(rid.op).spheres, s_spectrum(t).spheres) < 1e-9);

    CHECK_THROWS_AS(restrict_to_range(t, model2d::op()), PreconditionError);
}

TEST_CASE("projection of a diagonal operator spectrum subset") {
    const QMatrix t = QMatrix::diagonal({Quaternion{1}, I, Quaternion{3, 0, 2, 0}});
    const ProjectionResult p = spectral_projection(t, {{1.0, 0.0}}, 0.4);
    QMatrix expect(3);
    expect(0, 0) = Quaternion::one();
    CHECK((p.projection - expect).max_norm() < 1e-9);
}

TEST_CASE("poly_apply") {
    const QMatrix t = model2d::op();
    CHECK((poly_apply({1}, t) - QMatrix::identity(2)).max_norm() == 0.0);
    // T^2 = 1/2 [[-1, -I], [I, -1]]
    QMatrix t2(2);
    t2(0, 0) = {-0.5, 0, 0, 0};
    t2(0, 1) = {0, -0.5, 0, 0};
    t2(1, 0) = {0, 0.5, 0, 0};
    t2(1, 1) = {-0.5, 0, 0, 0};
    CHECK((poly_apply({0, 0, 1}, t) - t2).max_norm() < 1e-15);

    auto rng = seeded_rng(84);
    const QMatrix r = random_qmatrix(3, rng);
    const std::vector<double> coeffs{0.3, -1.2, 0.0, 2.0};
    const SliceCauchyDomain d = enclose(s_spectrum(r), 0.3);
    const QMatrix via_calc =
        apply_intrinsic(SliceFunction::polynomial(coeffs), r, d, ImaginaryUnit::i()).op;
    CHECK((poly_apply(coeffs, r) - via_calc).max_norm() < 1e-9);
}

TEST_CASE("diagonal operator: entrywise calculus on a tube against direct evaluation") {
    SSpectrum line;
    line.real_line = true;
    line.includes_infinity = true;
    QVector syms;
    for (int k = 0; k < 12; ++k) syms.push_back(Quaternion{-5.0 + 10.0 * k / 11.0});
    const DiagonalOperator d(syms, line);
    const SliceCauchyDomain dom = enclose(line, 0.5, {{}, 40.0});
    const SliceFunction f = SliceFunction::rational({1}, {1, 0, 1});
    const DiagCalcResult res = apply_intrinsic(f, d, dom, ImaginaryUnit::i(), 2048);
    for (size_t j = 0; j < syms.size(); ++j) {
        const Quaternion expect = inverse(syms[j] * syms[j] + Quaternion::one());
        CHECK((res.values[j] - expect).norm() < 1e-6);
    }
    CHECK(res.diag.tail_bound < 1e-4);
}

TEST_CASE("diagonal operator with quaternionic symbols") {
    SSpectrum clo;
    clo.spheres = {{0.5, 1.0}, {-1.0, 0.5}};
    const QVector syms{Quaternion{0.5, 0, 1, 0}, Quaternion{-1, 0.3, 0.4, 0}};
    const DiagonalOperator d(syms, clo);
    const SliceCauchyDomain dom = enclose(clo, 0.3, {{Sphere{3.0, 0.0}}, {}});
    const SliceFunction f = SliceFunction::rational({1}, {3, -1}); // (3-s)^{-1}
    const DiagCalcResult res = apply_intrinsic(f, d, dom, ImaginaryUnit::i(), 512);
    for (size_t j = 0; j < syms.size(); ++j) {
        const Quaternion expect = inverse(Quaternion{3} - syms[j]);
        CHECK((res.values[j] - expect).norm() < 1e-9);
    }
}

TEST_CASE("verify_identities on seeded random matrices") {
    auto rng = seeded_rng(85);
    for (int n : {2, 3}) {
        const QMatrix t = random_qmatrix(n, rng);
        VerifyConfig cfg;
        cfg.seed = 1000 + n;
        cfg.nodes = 128;
        const IdentityReport rep = verify_identities(t, cfg);
        for (const CheckLine& c : rep.checks) {
            INFO(c.name, " residual=", c.residual, " tol=", c.tolerance);
            CHECK(c.pass);
        }
    }
}

TEST_CASE("precondition failures") {
    const QMatrix t = model2d::op();
    // domain not containing the spectrum
    const SliceCauchyDomain small = domain_from({disk_component(0.0, 0.5)});
    CHECK_THROWS_AS(apply_left(SliceFunction::polynomial({0, 1}), t, small, ImaginaryUnit::i()),
                    PreconditionError);
    // chirality mismatch
    const SliceCauchyDomain d = model_domain();
    const RegionList reg{Region::disk(0.0, 3.0)};
    const auto h = [](cd z) { return J * embed_complex(z, ImaginaryUnit::i()); };
    const SliceFunction right_only = extend_from_slice(h, reg, ImaginaryUnit::i(), Chirality::Right);
    CHECK_THROWS_AS(apply_left(right_only, t, d, ImaginaryUnit::i()), PreconditionError);
    // missing value at infinity on an unbounded domain
    SSpectrum line;
    line.real_line = true;
    line.includes_infinity = true;
    QVector syms{Quaternion{0}};
    const DiagonalOperator diag(syms, line);
    const SliceCauchyDomain tube = enclose(line, 0.5, {{}, 10.0});
    const SliceFunction poly = SliceFunction::polynomial({0, 1});
    CHECK_THROWS_AS(apply_intrinsic(poly, diag, tube, ImaginaryUnit::i(), 64),
                    PreconditionError);
    // function domain not covering the contour
    const SliceFunction chi_small = SliceFunction::characteristic(small, {0});
    CHECK_THROWS_AS(apply_intrinsic(chi_small, t, d, ImaginaryUnit::i()), PreconditionError);
    // non-intrinsic function in apply_intrinsic
    const SliceFunction jc = SliceFunction::constant(J);
    CHECK_THROWS_AS(apply_intrinsic(jc, t, d, ImaginaryUnit::i()), PreconditionError);
    // projection of a sphere that is not in the spectrum
    CHECK_THROWS_AS(spectral_projection(t, {{7.0, 0.0}}, 0.4), PreconditionError);
    // insufficient separation
    CHECK_THROWS_AS(spectral_projection(t, {{0.0, 0.0}}, 0.6), ConstructionError);
}

TEST_CASE("connected domain: left and right calculi agree for two-sided f") {
    // on a single-component domain the locally constant part is constant,
    // so both calculi give the same operator even for non-intrinsic f
    const QMatrix t = model2d::op();
    const SliceCauchyDomain d = domain_from({disk_component(0.0, 2.5)});
    const SliceFunction f = add(SliceFunction::polynomial({0, 1}), SliceFunction::constant(J));
    const CalcResult left = apply_left(f, t, d, ImaginaryUnit::i());
    const CalcResult right = apply_right(f, t, d, ImaginaryUnit::i());
    CHECK((left.op - right.op).max_norm() < 1e-10);
    // and the value is T + J I
    const QMatrix expect = t + QMatrix::identity(2).scaled_right(J);
    CHECK((left.op - expect).max_norm() < 1e-10);
}

TEST_CASE("characteristic function rejects overlapping components") {
    DomainComponent a = disk_component(0.0, 1.0);
    DomainComponent b = disk_component(0.5, 1.0);
    SliceCauchyDomain d;
    d.components = {a, b}; // deliberately overlapping, bypassing domain_from
    CHECK_THROWS_AS(SliceFunction::characteristic(d, {0}), DomainError);
}

TEST_CASE("constant over an unbounded domain gives a I exactly") {
    // the integral vanishes and only the value at infinity survives
    const QMatrix t = model2d::op();
    const SliceCauchyDomain d = domain_from(
        {disk_component(0.0, 0.5), shell_component({0, 0}, 2.0 / 3.0, 2.0),
         complement_component(0.0, 3.0)});
    const Quaternion a{0.3, -1.0, 2.0, 0.7};
    const CalcResult left = apply_left(SliceFunction::constant(a), t, d, ImaginaryUnit::j());
    CHECK((left.op - QMatrix::identity(2).scaled_right(a)).max_norm() < 1e-10);
    const CalcResult right = apply_right(SliceFunction::constant(a), t, d, ImaginaryUnit::j());
    CHECK((right.op - QMatrix::identity(2).scaled_left(a)).max_norm() < 1e-10);
}
