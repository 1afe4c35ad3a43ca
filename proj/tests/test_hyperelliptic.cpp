#include "doctest.h"

#include "cmpoly/bundle.hpp"
#include "cmpoly/classpoly.hpp"
#include "cmpoly/hyperelliptic.hpp"

using namespace cmpoly;

namespace {

const ExchangeBundle& fixture() {
    static ExchangeBundle b = load_bundle(std::string(CMPOLY_TEST_DATA) + "/sextic_field_bundle.json");
    return b;
}

const std::vector<OrbitPoint>& fixture_orbit() {
    static std::vector<OrbitPoint> o = compute_orbit(fixture(), 256);
    return o;
}

}  // namespace

TEST_CASE("Weil pairing") {
    for (int a = 0; a < 64; ++a) {
        CHECK(weil_pairing_e2(a, a) == 1);
        CHECK(weil_pairing_e2(a, 0) == 1);
        CHECK(weil_pairing_e2(char_vector(a), char_vector(a)) == 1);
    }
    const AzygeticSystem e = standard_azygetic();
    for (int i : e.eta)
        for (int j : e.eta)
            for (int k : e.eta) CHECK(weil_pairing_e2(i ^ j, k) == weil_pairing_e2(i, k) * weil_pairing_e2(j, k));
    for (int a = 0; a < 64; a += 5)
        for (int b = 0; b < 64; b += 3) CHECK(weil_pairing_e2(char_vector(a), char_vector(b)) == weil_pairing_e2(a, b));
}

TEST_CASE("standard azygetic system") {
    const AzygeticSystem e = standard_azygetic();
    CHECK(is_azygetic(e));
    int s = 0;
    for (int i = 0; i < 7; ++i) s ^= e.eta[i];
    CHECK(s == 0);
    CHECK(e.U_set() == std::vector<int>{1, 3, 5, 7, 8});
    CHECK(e.vanishing() == 61);
    CHECK(char_is_even(e.vanishing()));
    AzygeticSystem bad = e;
    bad.eta[2] ^= 1;
    CHECK_FALSE(is_azygetic(bad));
}

TEST_CASE("transport reaches every even characteristic") {
    CHECK(transport_azygetic(61) == standard_azygetic());
    for (int k : even_characteristics()) {
        AzygeticSystem e = transport_azygetic(k);
        CHECK(is_azygetic(e));
        CHECK(e.vanishing() == k);
    }
    CHECK_THROWS(transport_azygetic(1 * 8 + 1));
}

TEST_CASE("relabeling and linear transport keep systems azygetic") {
    const AzygeticSystem e = transport_azygetic(0);
    std::array<int, 8> p{7, 2, 5, 0, 1, 3, 6, 4};
    CHECK(is_azygetic(relabel(e, p)));
    std::array<int, 8> id{0, 1, 2, 3, 4, 5, 6, 7};
    CHECK(relabel(e, id) == e);
    IMat j = symplectic_J<Int>(3);
    for (int i = 0; i < 6; ++i)
        for (int k = 0; k < 6; ++k) j(i, k) = ((j(i, k) % 2) + 2) % 2;
    AzygeticSystem t = linear_transport(j, e);
    CHECK(is_azygetic(t));
    CHECK(linear_transport(j, t) == e);
}

TEST_CASE("curve from Rosenhain invariants") {
    PrecScope ps(128);
    RosenhainTuple t{Complex(2L), Complex(3L), Complex(4L), Complex(5L), Complex(6L)};
    std::vector<Complex> c = curve_from_rosenhains(t);
    // x (x-1) ... (x-6): Stirling numbers of the first kind
    const long want[8] = {0, 720, -1764, 1624, -735, 175, -21, 1};
    REQUIRE(c.size() == 8);
    for (int i = 0; i < 8; ++i) CHECK(log2_abs(c[i] - Complex(want[i])) < -100);
    std::vector<Complex> roots = poly_roots(c, 128);
    for (long r : {0L, 1L, 2L, 3L, 4L, 5L, 6L}) {
        bool found = false;
        for (const auto& z : roots) found = found || log2_abs(z - Complex(r)) < -64;
        CHECK(found);
    }
}

TEST_CASE("Takase at the fixture base point") {
    const auto& orbit = fixture_orbit();
    const long prec = 256;
    for (const auto& p : orbit) CHECK(p.vanishing >= 0);
    const AzygeticSystem e = transport_azygetic(orbit[0].vanishing);
    RosenhainTuple l0 = takase_rosenhain(orbit[0].thetas, e, prec, 0);
    for (int d = 1; d < kDecompositions; ++d) {
        RosenhainTuple l = takase_rosenhain(orbit[0].thetas, e, prec, d);
        for (int i = 0; i < 5; ++i) CHECK(log2_abs(l[i] - l0[i]) < -prec / 2.0);
    }
    // the identity orbit element reproduces the base tuple through the reciprocity formula
    RosenhainTuple c = conjugate_rosenhains(orbit[0].thetas, IMat::identity(6), e, prec);
    for (int i = 0; i < 5; ++i) CHECK(log2_abs(c[i] - l0[i]) < -prec / 2.0);
}

TEST_CASE("conjugates agree with Takase in the transported marking") {
    const auto& b = fixture();
    const auto& orbit = fixture_orbit();
    const long prec = 256;
    REQUIRE(b.marking.has_value());
    Marking mk = base_marking(b, orbit[0]);
    std::vector<RosenhainTuple> ros = orbit_rosenhains(orbit, mk.base, prec);
    for (size_t s = 0; s < orbit.size(); ++s) {
        AzygeticSystem es = marking_at(b, mk, orbit[s]);
        CHECK(is_azygetic(es));
        CHECK(es.vanishing() == orbit[s].vanishing);
        RosenhainTuple direct = takase_rosenhain(orbit[s].thetas, es, prec);
        for (int i = 0; i < 5; ++i) CHECK(log2_abs(direct[i] - ros[s][i]) < -prec / 2.0);
        for (int l = 1; l <= 5; ++l) {
            Rat z = conjugate_phase(orbit[s].lift, mk.base, l, 0);
            CHECK((z == 0 || z == 1 || z == Rat(1, 2) || z == Rat(3, 2)));
        }
    }
}

TEST_CASE("frame lattice is shared by the orbit ideals") {
    const auto& orbit = fixture_orbit();
    QMat l0 = canonical_2adic_lattice(orbit[0].triple.ideal);
    for (const auto& p : orbit) CHECK(canonical_2adic_lattice(p.triple.ideal) == l0);
    IMat f = symplectic_frame_mod2(l0, orbit[0].triple.xi, fixture().field);
    for (const auto& p : orbit) CHECK(is_symplectic_mod2(frame_relation(l0, f, p.period.basis)));
}
