#include "doctest.h"

#include <random>

#include "cmpoly/shioda.hpp"
#include "oracles.hpp"

using namespace cmpoly;

namespace {

using oracle::omega_transvectant;

BinaryForm<Rat> random_form(std::mt19937_64& rng, int d) {
    std::uniform_int_distribution<int> coef(-9, 9);
    BinaryForm<Rat> f{std::vector<Rat>(d + 1)};
    for (auto& x : f.c) x = Rat(coef(rng)) / (1 + std::abs(coef(rng)));
    if (f.c[d] == 0) f.c[d] = 1;
    return f;
}

std::vector<Rat> random_octavic(std::mt19937_64& rng) { return random_form(rng, 8).c; }

}  // namespace

TEST_CASE("J2 of x^8 + y^8") {
    BinaryForm<Rat> f{{1, 0, 0, 0, 0, 0, 0, 0, 1}};
    CHECK(transvectant(f, f, 8).c == std::vector<Rat>{2});
    CHECK(shioda_invariants(f).J[0] == 2);
}

TEST_CASE("invariants agree with the Omega process oracle") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 3; ++t) {
        auto f = random_form(rng, 8);
        CHECK(shioda_invariants(f).J == oracle::omega_shiodas(f));
    }
}

TEST_CASE("transvectants agree with the Omega process") {
    std::mt19937_64 rng(11);
    CHECK(transvectant(random_form(rng, 3), random_form(rng, 3), 0).c.size() == 7);
    for (int t = 0; t < 6; ++t) {
        auto f = random_form(rng, 8), g = random_form(rng, 4 + t % 5);
        for (int k = 0; k <= std::min(f.degree(), g.degree()); ++k)
            CHECK_MESSAGE(transvectant(f, g, k).c == omega_transvectant(f, g, k).c, "deg " << g.degree() << " k " << k);
    }
}

TEST_CASE("the zeroth transvectant is the product and odd self-transvectants vanish") {
    std::mt19937_64 rng(3);
    auto f = random_form(rng, 8), g = random_form(rng, 5);
    std::vector<Rat> prod(14);
    for (int i = 0; i <= 8; ++i)
        for (int j = 0; j <= 5; ++j) prod[i + j] += f.c[i] * g.c[j];
    CHECK(transvectant(f, g, 0).c == prod);
    for (int k = 1; k <= 7; k += 2)
        for (const auto& x : transvectant(f, f, k).c) CHECK(x == 0);
}

TEST_CASE("J_i is homogeneous of degree i") {
    std::mt19937_64 rng(5);
    BinaryForm<Rat> f{random_octavic(rng)}, cf = f;
    const Rat c(3, 2);
    for (auto& x : cf.c) x *= c;
    auto a = shioda_invariants(f), b = shioda_invariants(cf);
    Rat ci = c;
    for (int i = 0; i < 9; ++i) {
        ci *= c;
        CHECK(b.J[i] == ci * a.J[i]);
    }
    Rat c14 = 1;
    for (int i = 0; i < 14; ++i) c14 *= c;
    CHECK(b.Delta == c14 * a.Delta);
}

TEST_CASE("translation invariance and weight under x -> 2x, degrees 7 and 8") {
    std::mt19937_64 rng(7);
    for (int deg : {7, 8}) {
        std::vector<Rat> p = random_form(rng, deg).c;
        auto f = homogenize_octavic(p);
        auto v = shioda_invariants(f);
        auto vt = shioda_invariants(homogenize_octavic(substitute_affine(p, Rat(1), Rat(1))));
        CHECK(vt.J == v.J);
        CHECK(vt.Delta == v.Delta);
        auto vs = shioda_invariants(homogenize_octavic(substitute_affine(p, Rat(2), Rat(0))));
        Rat w = 256;  // J_i has weight 4i
        for (int i = 0; i < 9; ++i) {
            CHECK(vs.J[i] == w * v.J[i]);
            w *= 16;
        }
        Rat w56 = 1;
        for (int i = 0; i < 56; ++i) w56 *= 2;
        CHECK(vs.Delta == w56 * v.Delta);
        CHECK(absolute_shiodas(vs) == absolute_shiodas(v));
    }
}

TEST_CASE("discriminant of forms with repeated roots") {
    auto f = homogenize_octavic(std::vector<Rat>{0, 0, 1, 0, 0, 0, 0, 0, 1});  // x^2 (x^6 + 1)
    auto v = shioda_invariants(f);
    CHECK(v.Delta == 0);
    CHECK_THROWS_AS(absolute_shiodas(v), SingularCurve);
    // x^6 only: double root at infinity
    CHECK(form_discriminant(BinaryForm<Rat>{{1, 0, 0, 0, 0, 0, 1, 0, 0}}) == 0);
    // x^2 - 1 as a quadratic form: disc = 4
    CHECK(form_discriminant(BinaryForm<Rat>{{-1, 0, 1}}) == 4);
    // x - 1 with a root at infinity: Y(X - Y), disc = 1
    CHECK(form_discriminant(BinaryForm<Rat>{{-1, 1, 0}}) == 1);
}

TEST_CASE("floating and exact invariants agree at 256 bits") {
    PrecScope ps(256);
    std::mt19937_64 rng(13);
    for (int t = 0; t < 3; ++t) {
        std::vector<Rat> p = random_octavic(rng);
        std::vector<Complex> pc;
        for (const auto& x : p) pc.emplace_back(x);
        auto ex = absolute_shiodas(shioda_invariants(homogenize_octavic(p)));
        auto fl = absolute_shiodas(shioda_invariants(homogenize_octavic(pc)));
        for (int i = 0; i < 9; ++i) {
            Complex e(ex[i]);
            if (ex[i] == 0) {
                CHECK(log2_abs(fl[i]) < -200);
                continue;
            }
            CHECK(log2_abs((fl[i] - e) / e) < -200);
        }
    }
}
