#include "doctest.h"

#include <random>

#include "cmpoly/bundle.hpp"
#include "cmpoly/cm.hpp"

using namespace cmpoly;

namespace {

const ExchangeBundle& fixture() {
    static ExchangeBundle b = load_bundle(std::string(CMPOLY_TEST_DATA) + "/sextic_field_bundle.json");
    return b;
}

NumberField gaussian() {
    QMat c(2, 2);
    c(0, 0) = 1;
    c(1, 1) = -1;
    return NumberField({1, 0, 1}, c);
}

IMat random_sp_mod2(std::mt19937_64& rng, int g) {
    // product of random transvections over F_2
    const int n = 2 * g;
    IMat m = IMat::identity(n);
    const IMat J = symplectic_J<Int>(g);
    std::uniform_int_distribution<int> bit(0, 1);
    for (int t = 0; t < 20; ++t) {
        std::vector<Int> v(n);
        for (auto& x : v) x = bit(rng);
        IMat tv = IMat::identity(n);
        for (int j = 0; j < n; ++j) {
            Int s = 0;
            for (int k = 0; k < n; ++k) s += J(j, k) * v[k];
            for (int i = 0; i < n; ++i) tv(i, j) += s * v[i];
        }
        m = tv * m;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = ((m(i, j) % 2) + 2) % 2;
    }
    return m;
}

}  // namespace

TEST_CASE("the sextic field is CM and the fixture type is primitive") {
    const auto& b = fixture();
    CHECK(is_cm_field(b.field));
    CHECK(is_primitive(b.type()));
}

TEST_CASE("exactly the two types induced from Q(i) are not primitive") {
    const auto& b = fixture();
    EmbeddingSet E = nf_embeddings(b.field, 256);
    auto pair = conjugate_pairing(E);
    int nonprim = 0, total = 0;
    for (int mask = 0; mask < 8; ++mask) {
        std::vector<int> phi;
        std::vector<bool> used(6, false);
        int bitpos = 0;
        for (int e = 0; e < 6; ++e) {
            if (used[e]) continue;
            used[e] = used[pair[e]] = true;
            phi.push_back(((mask >> bitpos++) & 1) ? pair[e] : e);
        }
        ++total;
        if (!is_primitive(CMType{b.field, phi})) ++nonprim;
    }
    CHECK(total == 8);
    CHECK(nonprim == 2);
}

TEST_CASE("reflex field of the fixture type") {
    const auto& b = fixture();
    ReflexData r = reflex(b.type());
    CHECK(r.minpoly == std::vector<Int>{225, 0, 6019, 0, 163, 0, 1});
    CHECK(r.reflex_type.size() == 3);
    REQUIRE(b.reflex_check);
    CHECK(same_field(*b.reflex_check, r.minpoly));
    CHECK_FALSE(same_field({2, 0, 0, 0, 0, 0, 1}, r.minpoly));
}

TEST_CASE("biduality: the reflex of the reflex is K") {
    const auto& b = fixture();
    ReflexData r = reflex(b.type());
    CMType rt{NumberField(r.minpoly), r.reflex_type};
    ReflexData rr = reflex(rt);
    CHECK(rr.minpoly.size() == 7);
    CHECK(same_field(rr.minpoly, b.field.minpoly));
}

TEST_CASE("reflex of an imaginary quadratic field is itself") {
    CMType t{gaussian(), {1}};
    ReflexData r = reflex(t);
    CHECK(same_field(r.minpoly, {1, 0, 1}));
}

TEST_CASE("reflex type norm of rationals and a half norm") {
    const auto& b = fixture();
    ReflexData r = reflex(b.type());
    FieldElement one(6), q(6);
    one[0] = 1;
    q[0] = Rat(3, 2);
    CHECK(typenorm_element(b.type(), r, one) == nf_one(b.field));
    CHECK(typenorm_element(b.type(), r, q) == nf_from_int(b.field, Rat(27, 8)));
    FieldElement x(6);
    x[0] = 1;
    x[1] = 1;  // 1 + t
    FieldElement y = typenorm_element(b.type(), r, x);
    FieldElement yy = nf_mul(y, nf_conj(y, b.field), b.field);
    // N(1 + t) = minpoly of t at -1 = 1 - 163 + 6019... evaluated: p(-1) with p(x) = x^6 + 163x^4 + 6019x^2 + 225
    CHECK(yy == nf_from_int(b.field, Rat(1 + 163 + 6019 + 225)));
}

TEST_CASE("Riemann form of Z[i] with xi = i/2") {
    CMTriple t{CMType{gaussian(), {1}}, {{1, 0}, {0, 1}}, {0, Rat(1, 2)}};
    IMat e = riemann_form(t);
    CHECK(e(0, 0) == 0);
    CHECK(e(0, 1) == -1);
    CHECK(e(1, 0) == 1);
    CHECK(e(1, 1) == 0);
}

TEST_CASE("period matrix of Z[i] reduces to i") {
    CMTriple t{CMType{gaussian(), {1}}, {{1, 0}, {0, 1}}, {0, Rat(1, 2)}};
    PeriodMatrix pm = period_matrix(t, 200);
    PrecScope ps(264);
    CHECK(log2_abs(pm.Z(0, 0).re) < -150);
    CHECK(log2_abs(pm.Z(0, 0).im - Real(1L)) < -150);
}

TEST_CASE("fixture base triple: unimodular form, symmetric Z with positive imaginary part") {
    const auto& b = fixture();
    IMat e = riemann_form(b.base_triple);
    CHECK(abs(determinant(e)) == 1);
    CHECK(e + e.transpose() == IMat(6, 6));
    PeriodMatrix pm = period_matrix(b.base_triple, 256);
    CHECK_FALSE(pm.flipped);
    IMat e2 = riemann_form(CMTriple{b.type(), pm.basis, b.base_triple.xi});
    CHECK(e2 == symplectic_J<Int>(3));
    PrecScope ps(320);
    CHECK(abs(pm.Z(0, 0)) >= Real(1.0 - 1e-12));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(abs(pm.Z(i, j).re) <= Real(0.5 + 1e-12));
}

TEST_CASE("fixture orbit: half norms, acted triples and relating matrices") {
    const auto& b = fixture();
    validate_bundle(b);
    REQUIRE(b.orbit.size() == 3);
    PeriodMatrix base = period_matrix(b.base_triple, 256);
    for (const auto& o : b.orbit) {
        CHECK(check_half_norm(o, b.field, b.orbit[0].ideal));
        CMTriple t = shimura_act(b.base_triple, o);
        IMat e = riemann_form(t);
        CHECK(is_alternating(e));
        CHECK(abs(determinant(e)) == 1);
        PeriodMatrix pm = period_matrix(t, 256);
        QMat m = relating_matrix(base.basis, pm.basis, o.norm);
        IMat u = inverse_mod2(reduce_mod2(m));
        CHECK(is_symplectic_mod2(u));
        IMat ut = lift_sp_mod2(u);
        CHECK(ut.transpose() * symplectic_J<Int>(3) * ut == symplectic_J<Int>(3));
    }
}

TEST_CASE("identity orbit element leaves the triple unchanged") {
    const auto& b = fixture();
    CMTriple t = shimura_act(b.base_triple, b.orbit[0]);
    CHECK(lattice_equal(t.ideal, b.base_triple.ideal));
    CHECK(t.xi == b.base_triple.xi);
}

TEST_CASE("relating matrix of a basis with itself is the identity") {
    const auto& b = fixture();
    PeriodMatrix pm = period_matrix(b.base_triple, 128);
    CHECK(relating_matrix(pm.basis, pm.basis, Rat(1)) == QMat::identity(6));
}

TEST_CASE("lifting Sp6(F2) elements") {
    const IMat J = symplectic_J<Int>(3);
    CHECK(lift_sp_mod2(IMat::identity(6)) == IMat::identity(6));
    IMat jm = J;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) jm(i, j) = ((J(i, j) % 2) + 2) % 2;
    CHECK(lift_sp_mod2(jm) == J);
    std::mt19937_64 rng(5);
    for (int t = 0; t < 50; ++t) {
        IMat u = random_sp_mod2(rng, 3);
        REQUIRE(is_symplectic_mod2(u));
        IMat l = lift_sp_mod2(u);
        CHECK(l.transpose() * J * l == J);
        bool congruent = true;
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j)
                if ((l(i, j) - u(i, j)) % 2 != 0) congruent = false;
        CHECK(congruent);
    }
    IMat bad = IMat::identity(6);
    bad(0, 1) = 1;
    CHECK_THROWS(lift_sp_mod2(bad));
}
