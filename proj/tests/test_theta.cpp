#include <random>

#include "doctest.h"

#include "cmpoly/bundle.hpp"
#include "cmpoly/cm.hpp"
#include "cmpoly/theta.hpp"

using namespace cmpoly;

namespace {

const ExchangeBundle& fixture() {
    static ExchangeBundle b = load_bundle(std::string(CMPOLY_TEST_DATA) + "/sextic_field_bundle.json");
    return b;
}

// 1-dimensional theta with characteristic (a/2, b/2) at tau, by a plain symmetric sum
Complex theta1(int a, int b, const Complex& tau, int n) {
    Complex s;
    for (int k = -n; k <= n; ++k) {
        Real m = Real(Rat(2 * k + a, 2));
        Complex w = tau * (m * m) + Complex(m * Real(Rat(b)));  // pi i w = pi i m^2 tau + pi i m b
        Real p = pi();
        s += exp(Complex(-(w.im * p), w.re * p));
    }
    return s;
}

CMat diag_z(const Complex& a, const Complex& b, const Complex& c) {
    CMat z(3, 3);
    z(0, 0) = a;
    z(1, 1) = b;
    z(2, 2) = c;
    return z;
}

// a generic reduced point of the Siegel space
CMat generic_z() {
    CMat z(3, 3);
    const double re[3][3] = {{0.13, -0.21, 0.05}, {-0.21, 0.32, 0.17}, {0.05, 0.17, -0.41}};
    const double im[3][3] = {{1.10, 0.23, -0.31}, {0.23, 1.35, 0.12}, {-0.31, 0.12, 1.62}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) z(i, j) = Complex(Real(re[i][j]), Real(im[i][j]));
    return z;
}

IMat random_symplectic(std::mt19937& rng, int steps) {
    const int g = 3;
    IMat m = IMat::identity(2 * g);
    std::uniform_int_distribution<int> kind(0, 2), idx(0, g - 1), val(-1, 1);
    for (int s = 0; s < steps; ++s) {
        IMat e = IMat::identity(2 * g);
        switch (kind(rng)) {
            case 0: {  // [[I, S], [0, I]]
                int i = idx(rng), j = idx(rng), v = val(rng);
                e(i, g + j) += v;
                if (i != j) e(j, g + i) += v;
                break;
            }
            case 1: {  // [[A, 0], [0, A^-T]] with A an elementary transvection
                int i = idx(rng), j = idx(rng);
                if (i == j) break;
                int v = val(rng);
                e(i, j) = v;
                e(g + j, g + i) = -v;
                break;
            }
            default: e = symplectic_J<Int>(g); break;
        }
        m = m * e;
    }
    return m;
}

bool same_mod1(const CharVec& a, const CharVec& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (Rat(a[i] - b[i]).get_den() != 1) return false;
    return true;
}

}  // namespace

TEST_CASE("characteristic indexing and parity") {
    CHECK(even_characteristics().size() == 36);
    for (int k = 0; k < 64; ++k) {
        CHECK(char_index(char_vector(k)) == k);
        CHECK(char_parity(char_vector(k)) == (char_is_even(k) ? 0 : 1));
    }
    CharVec c = char_vector(0b110101);
    CHECK(c[0] == Rat(1, 2));
    CHECK(c[2] == 0);
    CHECK(c[5] == Rat(1, 2));
}

TEST_CASE("theta null at i times identity") {
    PrecScope ps(256);
    CMat z = diag_z(Complex(Real(0L), Real(1L)), Complex(Real(0L), Real(1L)), Complex(Real(0L), Real(1L)));
    ThetaConstants t = theta_constants(z, 200);
    Complex one = theta1(0, 0, Complex(Real(0L), Real(1L)), 30);
    Complex ref = one * one * one;
    CHECK(log2_abs(t.values[0] - ref) < -190);
    CHECK(std::abs(t.values[0].re.to_double() - 1.2823631159) < 1e-9);
    CHECK(t.log2_error < -200);
}

TEST_CASE("diagonal period matrices factorize") {
    PrecScope ps(256);
    Complex z1(Real(0.3), Real(0.9)), z2(Real(-0.4), Real(1.3)), z3(Real(0.1), Real(2.1));
    ThetaConstants t = theta_constants(diag_z(z1, z2, z3), 160, {.jobs = 3, .force_odd = true});
    std::vector<Complex> tau{z1, z2, z3};
    for (int k = 0; k < 64; ++k) {
        int a = k >> 3, b = k & 7;
        Complex ref(1L);
        for (int i = 0; i < 3; ++i) ref = ref * theta1((a >> (2 - i)) & 1, (b >> (2 - i)) & 1, tau[i], 40);
        CHECK(log2_abs(t.values[k] - ref) < -150);
    }
}

TEST_CASE("odd constants are exact zeros and the forced sums vanish") {
    PrecScope ps(200);
    CMat z = generic_z();
    ThetaConstants t = theta_constants(z, 128);
    ThetaConstants f = theta_constants(z, 128, {.jobs = 2, .force_odd = true});
    for (int k = 0; k < 64; ++k) {
        if (char_is_even(k)) {
            CHECK(log2_abs(t.values[k] - f.values[k]) < -120);
        } else {
            CHECK(t.values[k].re.is_zero());
            CHECK(t.values[k].im.is_zero());
            CHECK(log2_abs(f.values[k]) < -120);
        }
    }
}

TEST_CASE("the error estimate covers the change in precision") {
    PrecScope ps(400);
    CMat z = generic_z();
    ThetaConstants lo = theta_constants(z, 100), hi = theta_constants(z, 300);
    for (int k : even_characteristics()) CHECK(log2_abs(lo.values[k] - hi.values[k]) < lo.log2_error + 1);
    CHECK(lo.log2_error < -100);
}

TEST_CASE("threading does not change the values") {
    PrecScope ps(200);
    CMat z = generic_z();
    ThetaConstants a = theta_constants(z, 128, {.jobs = 1}), b = theta_constants(z, 128, {.jobs = 4});
    for (int k = 0; k < 64; ++k) CHECK(log2_abs(a.values[k] - b.values[k]) < -128);
}

TEST_CASE("characteristic action") {
    const IMat I = IMat::identity(6), J = symplectic_J<Int>(3);
    for (int k = 0; k < 64; ++k) {
        CharVec c = char_vector(k);
        CHECK(char_action(I, c) == c);
        CharVec j = char_action(J, c);
        CharVec want{c[3], c[4], c[5], -c[0], -c[1], -c[2]};
        CHECK(same_mod1(j, want));
    }
    std::mt19937 rng(7);
    IMat gamma2 = IMat::identity(6);
    gamma2(0, 3) = 2;
    gamma2(4, 1) = -2;
    for (int trial = 0; trial < 50; ++trial) {
        IMat m1 = random_symplectic(rng, 6), m2 = random_symplectic(rng, 6);
        for (int k : {0, 5, 17, 33, 61, 63}) {
            CharVec c = char_vector(k);
            CHECK(same_mod1(char_action(m1 * m2, c), char_action(m1, char_action(m2, c))));
            CHECK(char_parity(char_action(m1, c)) == char_parity(c));
            CHECK(std::abs(abs(phi_phase(m1, c)).to_double() - 1) < 1e-30);
        }
    }
    for (int k = 0; k < 64; ++k) CHECK(char_action(gamma2, k) == k);
}

TEST_CASE("modulus of the transformation formula") {
    PrecScope ps(200);
    std::mt19937 rng(11);
    CMat z = generic_z();
    ThetaConstants t = theta_constants(z, 120);
    for (int trial = 0; trial < 4; ++trial) {
        IMat m = random_symplectic(rng, 4);
        CMat mz = act(m, z);
        ThetaConstants tm = theta_constants(mz, 120);
        CMat C(3, 3), D(3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                C(i, j) = Complex(m(3 + i, j));
                D(i, j) = Complex(m(3 + i, 3 + j));
            }
        const Real ad = abs(determinant(C * z + D));
        for (int k : even_characteristics()) {
            CharVec c = char_vector(k);
            Complex lhs = theta_at(tm, char_action(m, c));
            Real q = abs(lhs) / (sqrt(ad) * abs(t.values[k]));
            CHECK(log2_abs(q - Real(1L)) < -100);
        }
        Real ad9 = ad * ad * ad;
        ad9 = ad9 * ad9 * ad9;
        Real w = abs(chi18(tm)) / (ad9 * ad9 * abs(chi18(t)));
        CHECK(log2_abs(w - Real(1L)) < -95);
    }
}

TEST_CASE("theta_at shifts a characteristic by integers") {
    PrecScope ps(200);
    ThetaConstants t = theta_constants(generic_z(), 100, {.jobs = 1, .force_odd = true});
    // direct: theta[a0 + m, b0 + n] = exp(2 pi i a0 . n) theta[a0, b0]
    CharVec c = char_vector(0b101011);
    CharVec s = c;
    s[0] += 1;
    s[3] += 1;
    s[4] -= 3;
    CHECK(log2_abs(theta_at(t, s) + t.values[0b101011]) < -90);
    s[5] += 2;
    CHECK(log2_abs(theta_at(t, s) + t.values[0b101011]) < -90);
    s[3] += 1;
    CHECK(log2_abs(theta_at(t, s) - t.values[0b101011]) < -90);
}

TEST_CASE("CM points have one vanishing even constant") {
    const ExchangeBundle& b = fixture();
    // the thresholds scale with the precision while Sigma140 at these points is near 2^-267, so the
    // criterion is meaningful from roughly 1100 bits on, the range the pipeline works in
    const long prec = 1152;
    PrecScope ps(prec + 64);
    for (const auto& o : b.orbit) {
        CMTriple tr = shimura_act(b.base_triple, o);
        PeriodMatrix pm = period_matrix(tr, prec);
        ThetaConstants t = theta_constants(pm.Z, prec);
        CHECK(log2_abs(chi18(t)) < -prec / 2.0);
        CHECK(log2_abs(sigma140(t)) > -prec / 4.0);
        CHECK(find_vanishing(t, prec) >= 0);
    }
    CHECK(find_vanishing(theta_constants(generic_z(), 128), 128) == -1);
}
