#include "doctest.h"

#include "cmpoly/numfield.hpp"

using namespace cmpoly;

namespace {

NumberField sextic() {
    QMat c(6, 6);
    for (int j = 0; j < 6; ++j) c(j, j) = (j % 2 == 0) ? 1 : -1;
    return NumberField({729, 0, 451, 0, 43, 0, 1}, c);
}

}  // namespace

TEST_CASE("multiplication reduces modulo the defining polynomial") {
    auto F = sextic();
    auto x = nf_gen(F);
    auto x6 = nf_pow(x, 6, F);
    // x^6 = -43 x^4 - 451 x^2 - 729
    CHECK(x6 == FieldElement{Rat(-729), 0, Rat(-451), 0, Rat(-43), 0});
    auto g = nf_add(nf_pow(x, 2, F), nf_one(F));
    auto lhs = nf_mul(g, g, F);
    auto rhs = nf_add(nf_add(nf_pow(x, 4, F), nf_scale(nf_pow(x, 2, F), 2)), nf_one(F));
    CHECK(lhs == rhs);
}

TEST_CASE("trace of a square of the generator") {
    auto F = sextic();
    auto x = nf_gen(F);
    CHECK(nf_trace(nf_one(F), F) == 6);
    CHECK(nf_trace(x, F) == 0);
    CHECK(nf_trace(nf_mul(x, x, F), F) == -86);
}

TEST_CASE("embeddings are ordered, accurate and purely imaginary for the sextic") {
    auto F = sextic();
    PrecScope ps(256);
    auto E = nf_embeddings(F, 256);
    REQUIRE(E.roots.size() == 6);
    std::vector<Complex> c;
    for (auto& a : F.minpoly) c.emplace_back(Real(a));
    for (int k = 0; k < 6; ++k) {
        CHECK(log2_abs(E.roots[k].re) < -200);
        CHECK(log2_abs(poly_eval(c, E.roots[k])) < -200);
        if (k > 0) CHECK(E.roots[k - 1].im < E.roots[k].im);
    }
}

TEST_CASE("complex conjugation is an involutive automorphism matching the embeddings") {
    auto F = sextic();
    CHECK(nf_conjugation_check(F));
    auto bad = F;
    (*bad.conjugation)(0, 0) = 2;
    CHECK_FALSE(nf_conjugation_check(bad));
}

TEST_CASE("small rational root detection") {
    CHECK(nf_no_small_rational_roots(sextic()));
    NumberField red({-6, 11, -6, 1});  // (x-1)(x-2)(x-3)
    CHECK_FALSE(nf_no_small_rational_roots(red));
}

TEST_CASE("roots of a cubic at high precision") {
    NumberField F({-2, 0, 0, 1});
    auto E = nf_embeddings(F, 1000);
    int real = 0;
    for (auto& r : E.roots)
        if (r.im.is_zero() || log2_abs(r.im) < -900) {
            ++real;
            PrecScope ps(1000);
            Real c = r.re * r.re * r.re - Real(2L);
            CHECK(log2_abs(c) < -980);
        }
    CHECK(real == 1);
}
