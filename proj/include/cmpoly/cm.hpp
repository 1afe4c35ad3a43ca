#pragma once

#include <stdexcept>
#include <vector>

#include "cmpoly/linalg.hpp"
#include "cmpoly/numfield.hpp"

namespace cmpoly {

struct OrientationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CMType {
    NumberField field;
    std::vector<int> phi;  // indices into the canonical embedding order, one per conjugate pair
    int genus() const { return static_cast<int>(phi.size()); }
};

using Lattice = std::vector<FieldElement>;  // Z-basis of a fractional ideal

struct CMTriple {
    CMType type;
    Lattice ideal;
    FieldElement xi;
};

// Generator of an ideal class appearing in the type norm image, with N = its half norm.
struct OrbitElement {
    Lattice ideal;
    Rat norm;
};

// index k' with root k' = conj(root k) in the canonical order
std::vector<int> conjugate_pairing(const EmbeddingSet& E);

bool is_cm_field(const NumberField& F, long prec = 256);
bool is_primitive(const CMType& t, long prec = 256);

struct ReflexData {
    std::vector<Int> minpoly;        // of the type trace generator, monic
    std::vector<int> reflex_type;    // indices into the canonical roots of minpoly
    std::vector<std::vector<int>> orbit_types;  // CM types of K in the Galois orbit, one per reflex root
    FieldElement generator;          // element of K whose type traces generate the reflex field
};

// Anchor embedding for the reflex type: phi[0].
ReflexData reflex(const CMType& t, long prec = 512);

// deg f == deg g and f has a root in Q(root of g)
bool same_field(const std::vector<Int>& f, const std::vector<Int>& g, long prec = 512);

// Reflex type norm of x (coordinates on the powers of the reflex generator) as an element of K.
FieldElement typenorm_element(const CMType& t, const ReflexData& r, const FieldElement& x, long prec = 512);

// Lattice arithmetic in K (coordinates on the power basis, canonical HNF bases).
Lattice lattice_canonical(const Lattice& gens);
Lattice lattice_mul(const Lattice& a, const Lattice& b, const NumberField& F);
Lattice lattice_conj(const Lattice& a, const NumberField& F);
Lattice lattice_scale(const Lattice& a, const Rat& s);
bool lattice_equal(const Lattice& a, const Lattice& b);
// true when every product of basis elements lies in the lattice and 1 is in it
bool lattice_is_order(const Lattice& a, const NumberField& F);
QMat lattice_matrix(const Lattice& a);  // rows are basis vectors

// E(u, v) = Tr(xi conj(u) v) on the ideal basis; throws when not integral
IMat riemann_form(const CMTriple& t);

struct PeriodMatrix {
    CMat Z;
    Lattice basis;      // symplectic basis c_1..c_2g after Siegel reduction
    IMat reduction;     // accumulated integral symplectic matrix of the reduction
    long precision = 0;
    bool flipped = false;
};

// Omega_k,j = phi_k(c_j), Z = Omega_2^{-1} Omega_1, then Siegel reduction folded into the basis.
PeriodMatrix period_matrix(const CMTriple& t, long prec);

// M.Z = (AZ+B)(CZ+D)^{-1}
CMat act(const IMat& m, const CMat& z);

// Integral symplectic M with M.Z in the Siegel fundamental domain (LLL of Im Z, translation, S).
IMat siegel_reduce(const CMat& z, CMat* reduced = nullptr);

// (conj(b) / N * a, N xi)
CMTriple shimura_act(const CMTriple& t, const OrbitElement& b);

// b conj(b) == N * maximal order
bool check_half_norm(const OrbitElement& b, const NumberField& F, const Lattice& maximal_order);

// M with (c' coords) = (c coords) M^T, that is c'_j = sum_i M_{j,i} c_i; checks M^T J M = J / N.
QMat relating_matrix(const Lattice& c, const Lattice& cprime, const Rat& n);

// reduction of a 2-integral rational matrix mod 2 (entries 0/1)
IMat reduce_mod2(const QMat& m);
IMat inverse_mod2(const IMat& m);
bool is_symplectic_mod2(const IMat& m);
// integral symplectic lift of U in Sp_2g(F_2) as a product of transvections
IMat lift_sp_mod2(const IMat& u);

}  // namespace cmpoly
