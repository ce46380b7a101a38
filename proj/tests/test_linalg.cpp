#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <complex>
#include <random>

#include "sfcalc/linalg.hpp"

using namespace sfcalc::linalg;

namespace {

CMatrix random_cmatrix(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = {u(rng), u(rng)};
    return m;
}

// sorted by (re, im) for set comparison
std::vector<cd> sorted(std::vector<cd> v) {
    std::sort(v.begin(), v.end(), [](cd a, cd b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return v;
}

double eig_set_dist(std::vector<cd> a, std::vector<cd> b) {
    a = sorted(std::move(a));
    b = sorted(std::move(b));
    REQUIRE(a.size() == b.size());
    double worst = 0.0;
    // greedy match: for well separated sets this is enough
    for (const cd& x : a) {
        double best = 1e300;
        for (const cd& y : b) best = std::min(best, std::abs(x - y));
        worst = std::max(worst, best);
    }
    return worst;
}

} // namespace

TEST_CASE("LU solve residual") {
    std::mt19937_64 rng(21);
    for (int n : {1, 2, 3, 5, 8, 12}) {
        const CMatrix a = random_cmatrix(n, rng);
        const CMatrix b = random_cmatrix(n, rng);
        const LU f = lu_factor(a);
        const CMatrix x = lu_solve(f, b);
        CHECK((a * x - b).max_abs() < 1e-11);
        const CMatrix inv = inverse(f);
        CHECK((a * inv - CMatrix::identity(n)).max_abs() < 1e-11);
    }
}

TEST_CASE("LU determinant on known matrix") {
    CMatrix a(2, 2);
    a(0, 0) = {1, 0}; a(0, 1) = {2, 0};
    a(1, 0) = {3, 0}; a(1, 1) = {4, 0};
    CHECK(std::abs(lu_factor(a).det() - cd{-2.0, 0.0}) < 1e-14);
}

TEST_CASE("singular matrix is reported") {
    CMatrix a(2, 2);
    a(0, 0) = {1, 0}; a(0, 1) = {2, 0};
    a(1, 0) = {2, 0}; a(1, 1) = {4, 0};
    const LU f = lu_factor(a);
    CHECK(f.pivot_ratio() < 1e-14);
    CHECK_THROWS(lu_solve(f, CMatrix::identity(2)));
}

TEST_CASE("least squares solves consistent overdetermined systems") {
    std::mt19937_64 rng(22);
    const int m = 7, n = 3;
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    CMatrix a(m, n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = {u(rng), u(rng)};
    std::vector<cd> x0(n);
    for (cd& v : x0) v = {u(rng), u(rng)};
    std::vector<cd> b(m);
    for (int i = 0; i < m; ++i) {
        b[i] = 0.0;
        for (int j = 0; j < n; ++j) b[i] += a(i, j) * x0[j];
    }
    const std::vector<cd> x = qr_least_squares(a, b);
    for (int j = 0; j < n; ++j) CHECK(std::abs(x[j] - x0[j]) < 1e-12);
}

TEST_CASE("eigenvalues of diagonal and triangular matrices") {
    CMatrix a(3, 3);
    a(0, 0) = {1, 2}; a(0, 1) = {5, -1}; a(0, 2) = {0, 3};
    a(1, 1) = {-2, 0.5}; a(1, 2) = {1, 1};
    a(2, 2) = {4, -4};
    const std::vector<cd> expect{{1, 2}, {-2, 0.5}, {4, -4}};
    CHECK(eig_set_dist(eigenvalues(a), expect) < 1e-12);
}

TEST_CASE("eigenvalues of a rotation block") {
    CMatrix a(2, 2);
    a(0, 1) = {1, 0};
    a(1, 0) = {-1, 0};
    const std::vector<cd> expect{{0, 1}, {0, -1}};
    CHECK(eig_set_dist(eigenvalues(a), expect) < 1e-13);
}

TEST_CASE("companion matrix roots") {
    // p(z) = z^3 - 6 z^2 + 11 z - 6 = (z-1)(z-2)(z-3)
    CMatrix c(3, 3);
    c(1, 0) = 1.0;
    c(2, 1) = 1.0;
    c(0, 2) = cd{6, 0};
    c(1, 2) = cd{-11, 0};
    c(2, 2) = cd{6, 0};
    const std::vector<cd> expect{{1, 0}, {2, 0}, {3, 0}};
    CHECK(eig_set_dist(eigenvalues(c), expect) < 1e-10);
}

TEST_CASE("eigenvalue sum and product match trace and determinant") {
    std::mt19937_64 rng(23);
    for (int n : {2, 3, 4, 6, 9}) {
        const CMatrix a = random_cmatrix(n, rng);
        const std::vector<cd> eig = eigenvalues(a);
        REQUIRE(static_cast<int>(eig.size()) == n);
        cd sum = 0.0, prod = 1.0;
        for (const cd& l : eig) { sum += l; prod *= l; }
        cd tr = 0.0;
        for (int i = 0; i < n; ++i) tr += a(i, i);
        CHECK(std::abs(sum - tr) < 1e-10);
        CHECK(std::abs(prod - lu_factor(a).det()) < 1e-9);
    }
}

TEST_CASE("each eigenvalue renders A - lambda I singular") {
    std::mt19937_64 rng(24);
    const CMatrix a = random_cmatrix(5, rng);
    for (const cd& l : eigenvalues(a)) {
        CMatrix shifted = a;
        for (int i = 0; i < 5; ++i) shifted(i, i) -= l;
        CHECK(lu_factor(shifted).pivot_ratio() < 1e-10);
    }
}

TEST_CASE("repeated eigenvalues converge") {
    // Jordan-type block with eigenvalue 2 (multiplicity 3)
    CMatrix a(3, 3);
    for (int i = 0; i < 3; ++i) a(i, i) = {2, 0};
    a(0, 1) = {1, 0};
    a(1, 2) = {1, 0};
    const std::vector<cd> eig = eigenvalues(a);
    for (const cd& l : eig) CHECK(std::abs(l - cd{2, 0}) < 2e-5); // defective: O(eps^{1/3})
}
