#include "doctest.h"

#include <random>

#include "cmpoly/linalg.hpp"

using namespace cmpoly;

namespace {

IMat from_rows(std::initializer_list<std::initializer_list<long>> rows) {
    const int r = static_cast<int>(rows.size());
    const int c = static_cast<int>(rows.begin()->size());
    IMat m(r, c);
    int i = 0;
    for (auto& row : rows) {
        int j = 0;
        for (long x : row) m(i, j++) = x;
        ++i;
    }
    return m;
}

// random unimodular matrix as a product of elementary operations
IMat random_unimodular(int n, std::mt19937_64& rng) {
    IMat u = IMat::identity(n);
    std::uniform_int_distribution<int> idx(0, n - 1), coef(-3, 3);
    for (int it = 0; it < 4 * n; ++it) {
        int i = idx(rng), j = idx(rng);
        if (i == j) continue;
        long q = coef(rng);
        for (int c = 0; c < n; ++c) u(i, c) += q * u(j, c);
    }
    return u;
}

}  // namespace

TEST_CASE("hermite normal form of a small matrix") {
    IMat h = hnf(from_rows({{2, 4}, {1, 3}}));
    CHECK(h == from_rows({{1, 1}, {0, 2}}));
    CHECK(hnf(h) == h);
}

TEST_CASE("hermite normal form with transform and rank deficiency") {
    IMat m = from_rows({{2, 4, 6}, {1, 2, 3}, {0, 1, 5}});
    IMat u;
    IMat h = hnf_with_transform(m, u);
    CHECK(hnf(m).rows() == 2);
    CHECK(abs(determinant(u)) == 1);
    CHECK(u * m == h);
    for (int j = 0; j < 3; ++j) CHECK(h(2, j) == 0);
    CHECK(h.block(0, 0, 2, 3) == hnf(m));
}

TEST_CASE("hnf is idempotent on random lattices") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> d(-20, 20);
    for (int t = 0; t < 25; ++t) {
        IMat m(5, 4);
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 4; ++j) m(i, j) = d(rng);
        IMat h = hnf(m);
        CHECK(hnf(h) == h);
        CHECK(hnf(random_unimodular(5, rng) * m) == h);
    }
}

TEST_CASE("elementary divisors") {
    auto d = elementary_divisors(from_rows({{2, 0}, {0, 3}}));
    REQUIRE(d.size() == 2);
    CHECK(d[0] == 1);
    CHECK(d[1] == 6);
}

TEST_CASE("symplectic reduction of random unimodular alternating forms") {
    std::mt19937_64 rng(11);
    const IMat J = symplectic_J<Int>(3);
    for (int t = 0; t < 100; ++t) {
        IMat g = random_unimodular(6, rng);
        IMat e = g.transpose() * J * g;
        REQUIRE(is_alternating(e));
        IMat T = symplectic_reduce(e);
        CHECK(T.transpose() * e * T == J);
        CHECK(abs(determinant(T)) == 1);
    }
}

TEST_CASE("non unimodular alternating form is rejected with its divisors") {
    IMat e = symplectic_J<Int>(2);
    e(0, 2) = 2;
    e(2, 0) = -2;
    try {
        symplectic_reduce(e);
        FAIL("expected NonPrincipalForm");
    } catch (const NonPrincipalForm& ex) {
        REQUIRE(ex.elementary_divisors.size() == 4);
        CHECK(ex.elementary_divisors[3] == 2);
    }
}

TEST_CASE("LLL reduction satisfies the Lovasz condition") {
    IMat b = from_rows({{1, 1, 1}, {-1, 0, 2}, {3, 5, 6}});
    auto r = lll(b);
    CHECK(lovasz_holds(r.basis, Rat(99, 100)));
    CHECK(r.transform * b == r.basis);
    CHECK(abs(determinant(r.transform)) == 1);
    CHECK(abs(determinant(r.basis)) == 3);
    CHECK(r.basis == from_rows({{0, 1, 0}, {1, 0, 1}, {-1, 0, 2}}));
}

TEST_CASE("algebraic dependency recovers known minimal polynomials") {
    const long prec = 300;
    PrecScope ps(prec);
    Real cbrt2 = exp(log(Real(2L)) / Real(3L));
    auto p = algdep(Complex(cbrt2), 6, prec);
    CHECK(p == std::vector<Int>{-2, 0, 0, 1});
    Real phi = (Real(1L) + sqrt(Real(5L))) / Real(2L);
    auto q = algdep(Complex(phi), 6, prec);
    CHECK(q == std::vector<Int>{-1, -1, 1});
    Complex ii(Real(0L), Real(1L));
    CHECK(algdep(ii + Complex(Real(1L)), 4, prec) == std::vector<Int>{2, -2, 1});
}

TEST_CASE("algebraic dependency fails on a transcendental number") {
    const long prec = 200;
    PrecScope ps(prec);
    CHECK_THROWS_AS(algdep(Complex(pi()), 4, prec), RecognitionFailure);
}

TEST_CASE("rational recognition") {
    PrecScope ps(200);
    Rat out;
    CHECK(recognize_rational(Real(Rat(-355, 113)), 200, out));
    CHECK(out == Rat(-355, 113));
    CHECK_FALSE(recognize_rational(pi(), 200, out));
}
