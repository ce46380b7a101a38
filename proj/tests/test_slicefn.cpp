#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sfcalc/random.hpp"
#include "sfcalc/slicefn.hpp"

using namespace sfcalc;

namespace {

const Quaternion I = ImaginaryUnit::i().q();
const Quaternion J = ImaginaryUnit::j().q();
const Quaternion K = ImaginaryUnit::k().q();

// power series oracle: exp of a quaternion summed termwise
Quaternion exp_series(const Quaternion& q) {
    Quaternion term = Quaternion::one();
    Quaternion acc = term;
    for (int k = 1; k < 60; ++k) {
        term = term * q * (1.0 / k);
        acc += term;
    }
    return acc;
}

} // namespace

TEST_CASE("polynomial stems evaluate as quaternion polynomials") {
    const SliceFunction sq = SliceFunction::polynomial({0, 0, 1});
    CHECK(approx_equal(sq.eval(J), Quaternion{-1.0}));
    CHECK(approx_equal(sq.eval(Quaternion{1, 2, 0, 0}),
                       Quaternion{1, 2, 0, 0} * Quaternion{1, 2, 0, 0}, 1e-13));

    auto rng = seeded_rng(61);
    const SliceFunction cube = SliceFunction::polynomial({0, 0, 0, 1});
    for (int k = 0; k < 30; ++k) {
        const Quaternion x = random_quaternion(rng);
        CHECK(approx_equal(cube.eval(x), x * x * x, 1e-12));
    }
}

TEST_CASE("constant function") {
    const SliceFunction c = SliceFunction::constant(Quaternion{0.5, 1, 2, 3});
    CHECK(approx_equal(c.eval(Quaternion{7, -1, 4, 2}), Quaternion{0.5, 1, 2, 3}));
    CHECK(c.chirality() == Chirality::TwoSided);
    CHECK(SliceFunction::constant(Quaternion{2}).chirality() == Chirality::Intrinsic);
}

TEST_CASE("rational stem matches the direct quaternionic inverse") {
    // f(s) = 1/(s-2) evaluated at 1+I equals (1+I-2)^{-1}
    const SliceFunction f = SliceFunction::rational({1}, {-2, 1});
    const Quaternion x{1, 1, 0, 0};
    CHECK(approx_equal(f.eval(x), inverse(x - Quaternion{2}), 1e-13));
    REQUIRE(f.at_infinity().has_value());
    CHECK(approx_equal(*f.at_infinity(), Quaternion{0.0}));

    auto rng = seeded_rng(62);
    for (int k = 0; k < 30; ++k) {
        const Quaternion q = random_quaternion(rng) * 2.0;
        if ((q - Quaternion{2}).norm() < 0.1) continue;
        CHECK(approx_equal(f.eval(q), inverse(q - Quaternion{2}), 1e-12));
    }
}

TEST_CASE("rational functions know their poles") {
    const SliceFunction f = SliceFunction::rational({1}, {1, 0, 1}); // 1/(s^2+1)
    CHECK(!f.defined_at(0.0, 1.0));
    CHECK(f.defined_at(0.0, 0.5));
    CHECK(f.defined_at(2.0, 0.0));
    CHECK_THROWS_AS((void)SliceFunction::rational({1}, {0}), DomainError);
}

TEST_CASE("evaluation outside the region raises a domain error") {
    const SliceCauchyDomain d = domain_from({disk_component(0.0, 1.0)});
    const SliceFunction f = SliceFunction::constants_on(d, {J});
    CHECK_THROWS_AS((void)f.eval(Quaternion{5.0}), DomainError);
}

TEST_CASE("extension of the identity slice map") {
    const auto h = [](cd z) { return embed_complex(z, ImaginaryUnit::i()); };
    const SliceFunction f =
        extend_from_slice(h, {Region::disk(0.0, 3.0)}, ImaginaryUnit::i(), Chirality::Intrinsic);
    CHECK(approx_equal(f.eval(K), K, 1e-12));
    CHECK(approx_equal(f.eval(Quaternion{0.5, 0.3, -0.7, 0.1}), Quaternion{0.5, 0.3, -0.7, 0.1},
                       1e-12));
}

TEST_CASE("left and right extensions of b z with b in the plane differ") {
    // h(z) = I z satisfies both slice Cauchy-Riemann conditions; its left
    // extension is x -> x I and its right extension is x -> I x.
    const auto h = [](cd z) { return I * embed_complex(z, ImaginaryUnit::i()); };
    const RegionList reg{Region::disk(0.0, 3.0)};
    const SliceFunction fl = extend_from_slice(h, reg, ImaginaryUnit::i(), Chirality::Left);
    const SliceFunction fr = extend_from_slice(h, reg, ImaginaryUnit::i(), Chirality::Right);
    auto rng = seeded_rng(63);
    for (int k = 0; k < 20; ++k) {
        const Quaternion x = random_quaternion(rng) * 1.4;
        CHECK(approx_equal(fl.eval(x), x * I, 1e-11));
        CHECK(approx_equal(fr.eval(x), I * x, 1e-11));
    }
    // restriction back to the plane C_I reproduces the samples
    for (int k = 0; k < 20; ++k) {
        const cd z{0.3 * k / 10.0 - 0.3, 0.2 + 0.05 * k};
        CHECK(approx_equal(fl.eval(embed_complex(z, ImaginaryUnit::i())), h(z), 1e-11));
        CHECK(approx_equal(fr.eval(embed_complex(z, ImaginaryUnit::i())), h(z), 1e-11));
    }
}

TEST_CASE("off-plane coefficients extend on one side only") {
    // z -> z J is left-extendable (to x J); z -> J z is right-extendable
    // (to J x); the opposite wirings violate the slice CR condition.
    const RegionList reg{Region::disk(0.0, 2.0)};
    const auto hzj = [](cd z) { return embed_complex(z, ImaginaryUnit::i()) * J; };
    const auto hjz = [](cd z) { return J * embed_complex(z, ImaginaryUnit::i()); };

    const SliceFunction fl = extend_from_slice(hzj, reg, ImaginaryUnit::i(), Chirality::Left);
    const SliceFunction fr = extend_from_slice(hjz, reg, ImaginaryUnit::i(), Chirality::Right);
    auto rng = seeded_rng(64);
    for (int k = 0; k < 20; ++k) {
        const Quaternion x = random_quaternion(rng);
        CHECK(approx_equal(fl.eval(x), x * J, 1e-11));
        CHECK(approx_equal(fr.eval(x), J * x, 1e-11));
    }
    CHECK_THROWS_AS(extend_from_slice(hjz, reg, ImaginaryUnit::i(), Chirality::Left),
                    DomainError);
    CHECK_THROWS_AS(extend_from_slice(hzj, reg, ImaginaryUnit::i(), Chirality::Right),
                    DomainError);
}

TEST_CASE("exponential extension against the power series oracle") {
    const SliceFunction f = SliceFunction::exponential();
    const Quaternion x = J * 2.0;
    CHECK(approx_equal(f.eval(x), Quaternion{std::cos(2.0)} + J * std::sin(2.0), 1e-13));
    CHECK(approx_equal(f.eval(x), exp_series(x), 1e-12));

    // extension built from samples on C_I agrees with the built-in
    const auto h = [](cd z) { return embed_complex(std::exp(z), ImaginaryUnit::i()); };
    const SliceFunction g =
        extend_from_slice(h, {Region::disk(0.0, 3.0)}, ImaginaryUnit::i(), Chirality::Intrinsic);
    auto rng = seeded_rng(65);
    for (int k = 0; k < 20; ++k) {
        const Quaternion q = random_quaternion(rng) * 1.5;
        CHECK(approx_equal(g.eval(q), exp_series(q), 1e-10));
    }
}

TEST_CASE("Cauchy kernels") {
    // same plane: classical kernel 1/(s-x)
    const Quaternion s{0.4, 0, 1.7, 0};
    const Quaternion x{-0.2, 0, 0.6, 0};
    CHECK(approx_equal(cauchy_kernel_left(s, x), inverse(s - x), 1e-12));
    CHECK(approx_equal(cauchy_kernel_right(s, x), inverse(s - x), 1e-12));

    // s = 2, x = J: -(J^2 - 4J + 4)^{-1}(J - 2) = (2 - J)^{-1} = (2+J)/5
    CHECK(approx_equal(cauchy_kernel_left(Quaternion{2}, J), (Quaternion{2} + J) * 0.2, 1e-13));
    CHECK(approx_equal(cauchy_kernel_right(Quaternion{2}, J), (Quaternion{2} + J) * 0.2, 1e-13));

    // kernel relation S_R^{-1}(s,x) = -S_L^{-1}(x,s)
    auto rng = seeded_rng(66);
    for (int k = 0; k < 100; ++k) {
        const Quaternion a = random_quaternion(rng) * 2.0;
        const Quaternion b = random_quaternion(rng) * 2.0;
        if (sphere_dist(sphere_of(a), sphere_of(b)) < 0.05) continue;
        CHECK(approx_equal(cauchy_kernel_right(a, b), -cauchy_kernel_left(b, a), 1e-10));
    }

    CHECK_THROWS_AS(cauchy_kernel_left(Quaternion{0, 1, 0, 0}, J), SingularityError);
}

TEST_CASE("is_intrinsic") {
    CHECK(is_intrinsic(SliceFunction::polynomial({0, 0, 1})).intrinsic);
    CHECK(is_intrinsic(SliceFunction::rational({1}, {1, 0, 1})).intrinsic);

    const IntrinsicCheck c = is_intrinsic(SliceFunction::constant(J));
    CHECK(!c.intrinsic);
    CHECK(c.max_violation > 0.5);

    SSpectrum spec;
    spec.spheres = {{0.0, 0.0}, {0.0, 1.0}};
    const SliceCauchyDomain d = enclose(spec, 0.5);
    const SliceFunction chi = SliceFunction::characteristic(d, {0});
    CHECK(is_intrinsic(chi).intrinsic);
}

TEST_CASE("characteristic function values") {
    SSpectrum spec;
    spec.spheres = {{0.0, 0.0}, {0.0, 1.0}};
    const SliceCauchyDomain d = enclose(spec, 0.5);

    SUBCASE("select one component") {
        const int zero_comp = region_contains(d.components[0].region, 0.0, 0.0) ? 0 : 1;
        const SliceFunction chi = SliceFunction::characteristic(d, {zero_comp});
        CHECK(approx_equal(chi.eval(Quaternion{0.1, 0, 0, 0}), Quaternion::one()));
        CHECK(approx_equal(chi.eval(slice_embed({0, 1}, ImaginaryUnit::j())), Quaternion{}));
        REQUIRE(chi.at_infinity().has_value());
        CHECK(approx_equal(*chi.at_infinity(), Quaternion{}));
    }
    SUBCASE("select all / none") {
        const SliceFunction all = SliceFunction::characteristic(d, {0, 1});
        CHECK(approx_equal(all.eval(Quaternion{0.1, 0, 0, 0}), Quaternion::one()));
        CHECK(approx_equal(all.eval(slice_embed({0, 1}, ImaginaryUnit::k())), Quaternion::one()));
        const SliceFunction none = SliceFunction::characteristic(d, {});
        CHECK(approx_equal(none.eval(Quaternion{0.1, 0, 0, 0}), Quaternion{}));
    }
    SUBCASE("unbounded component selected sets the value at infinity") {
        SSpectrum line;
        line.real_line = true;
        line.includes_infinity = true;
        const SliceCauchyDomain tube = enclose(line, 0.5, {{}, 10.0});
        const SliceFunction chi = SliceFunction::characteristic(tube, {0});
        REQUIRE(chi.at_infinity().has_value());
        CHECK(approx_equal(*chi.at_infinity(), Quaternion::one()));
    }
}

TEST_CASE("split of a locally constant plus intrinsic function") {
    SSpectrum spec;
    spec.spheres = {{0.0, 0.0}, {0.0, 1.0}};
    const SliceCauchyDomain d = enclose(spec, 0.5);

    SUBCASE("purely locally constant") {
        const SliceFunction f = SliceFunction::constants_on(d, {J, Quaternion{}});
        const SplitResult sp = split_left_right(f);
        CHECK(approx_equal(sp.locally_constant.eval(Quaternion{0.1}), J));
        CHECK(approx_equal(sp.intrinsic_part.eval(Quaternion{0.1}), Quaternion{}));
    }
    SUBCASE("f(x) = x + J") {
        const SliceFunction f =
            add(SliceFunction::polynomial({0, 1}), SliceFunction::constant(J));
        const SplitResult sp = split_left_right(f);
        auto rng = seeded_rng(67);
        for (int k = 0; k < 20; ++k) {
            const Quaternion x = random_quaternion(rng);
            CHECK(approx_equal(sp.locally_constant.eval(x), J, 1e-12));
            CHECK(approx_equal(sp.intrinsic_part.eval(x), x, 1e-12));
            CHECK(approx_equal(sp.locally_constant.eval(x) + sp.intrinsic_part.eval(x),
                               f.eval(x), 1e-12));
        }
        CHECK(sp.intrinsic_part.chirality() == Chirality::Intrinsic);
    }
    SUBCASE("piecewise J and s^2 recombine") {
        const int zero_comp = region_contains(d.components[0].region, 0.0, 0.0) ? 0 : 1;
        std::vector<SliceFunction::Component> comps;
        const SliceFunction sq = SliceFunction::polynomial({0, 0, 1});
        for (size_t c = 0; c < d.components.size(); ++c) {
            if (static_cast<int>(c) == zero_comp)
                comps.push_back({d.components[c].region,
                                 [](double, double) { return StemValue{J, Quaternion{}}; }});
            else
                comps.push_back({d.components[c].region, sq.components()[0].stem});
        }
        const SliceFunction f(comps, Chirality::TwoSided);
        const SplitResult sp = split_left_right(f);
        auto rng = seeded_rng(68);
        int hits = 0;
        while (hits < 50) {
            const Quaternion x = random_quaternion(rng) * 1.6;
            const Sphere s = sphere_of(x);
            if (!f.defined_at(s.s0, s.s1)) continue;
            ++hits;
            CHECK((sp.locally_constant.eval(x) + sp.intrinsic_part.eval(x) - f.eval(x)).norm() <
                  1e-12);
        }
    }
    SUBCASE("non-real beta is rejected") {
        // x J is left slice hyperholomorphic with beta = x1 J, not real
        const RegionList reg{Region::disk(0.0, 2.0)};
        const auto h = [](cd z) { return embed_complex(z, ImaginaryUnit::i()) * J; };
        const SliceFunction f = extend_from_slice(h, reg, ImaginaryUnit::i(), Chirality::Left);
        CHECK_THROWS_AS(split_left_right(f), PreconditionError);
    }
}

TEST_CASE("scalar Cauchy formula reproduces intrinsic rational functions") {
    const SliceFunction f = SliceFunction::rational({1}, {4, 0, 1}); // 1/(s^2+4)
    const SliceCauchyDomain d = domain_from({disk_component(0.0, 1.0)});
    auto rng = seeded_rng(69);
    for (const ImaginaryUnit& u : {ImaginaryUnit::i(), ImaginaryUnit(0.3, -0.4, 0.85)}) {
        const QuadratureRule rule = quadrature(d, u, 128);
        for (int k = 0; k < 10; ++k) {
            const Quaternion x = random_quaternion(rng) * 0.4;
            const Quaternion direct = f.eval(x);
            CHECK((cauchy_formula_left(f, rule, x) - direct).norm() < 1e-9);
            CHECK((cauchy_formula_right(f, rule, x) - direct).norm() < 1e-9);
        }
    }
}

TEST_CASE("Cauchy-Riemann residual of stored stems") {
    CHECK(cauchy_riemann_residual(SliceFunction::polynomial({1, 0, 2, 1})) < 1e-6);
    CHECK(cauchy_riemann_residual(SliceFunction::rational({1}, {4, 0, 1})) < 1e-6);
    CHECK(cauchy_riemann_residual(SliceFunction::exponential()) < 1e-6);
}

TEST_CASE("slice derivative equals the x0 derivative") {
    // for f = s^3 both difference quotients approximate 3 x^2
    const SliceFunction f = SliceFunction::polynomial({0, 0, 0, 1});
    auto rng = seeded_rng(70);
    const double h = 1e-6;
    for (int k = 0; k < 20; ++k) {
        const Quaternion x = random_quaternion(rng);
        const Quaternion fd = (f.eval(x + Quaternion{h}) - f.eval(x - Quaternion{h})) * (0.5 / h);
        CHECK((fd - x * x * 3.0).norm() < 1e-7);
        const Quaternion step = axis_of(x).q() * h;
        const Quaternion fd_slice =
            inverse(axis_of(x).q()) * ((f.eval(x + step) - f.eval(x - step)) * (0.5 / h));
        CHECK((fd_slice - x * x * 3.0).norm() < 1e-6);
    }
}

TEST_CASE("stem algebra: products, composition, reciprocal") {
    auto rng = seeded_rng(71);
    const SliceFunction sq = SliceFunction::polynomial({0, 0, 1});
    const SliceFunction cube = SliceFunction::polynomial({0, 0, 0, 1});
    const SliceFunction prod = multiply(sq, cube);
    const SliceFunction inv2 = SliceFunction::rational({1}, {-2, 1});
    const SliceFunction comp = compose(inv2, sq); // (s^2 - 2)^{-1}
    const SliceFunction rec = reciprocal(SliceFunction::polynomial({2, 0, 1})); // 1/(s^2+2)
    for (int k = 0; k < 30; ++k) {
        const Quaternion x = random_quaternion(rng) * 1.3;
        CHECK(approx_equal(prod.eval(x), x * x * x * x * x, 1e-10));
        const Quaternion x2 = x * x;
        if ((x2 - Quaternion{2}).norm() > 0.2)
            CHECK(approx_equal(comp.eval(x), inverse(x2 - Quaternion{2}), 1e-10));
        CHECK(approx_equal(rec.eval(x), inverse(x2 + Quaternion{2}), 1e-11));
    }
    // left product with a nonreal factor: (s^2) * J
    const SliceFunction jconst = SliceFunction::constant(J);
    const SliceFunction mixed = multiply(sq, jconst);
    CHECK(mixed.chirality() == Chirality::Left);
    for (int k = 0; k < 10; ++k) {
        const Quaternion x = random_quaternion(rng);
        CHECK(approx_equal(mixed.eval(x), sq.eval(x) * J, 1e-12));
    }
}
