#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include "cmpoly/cm.hpp"
#include "cmpoly/theta.hpp"

namespace cmpoly {

struct DegenerateTheta : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PhaseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Characteristics as 6-bit indices (see theta.hpp); bit vectors over F_2 use the same encoding.
int char_omega(int x, int y);  // symplectic pairing over F_2: a(x).b(y) + b(x).a(y)
int weil_pairing_e2(int x, int y);  // (-1)^omega
int weil_pairing_e2(const CharVec& x, const CharVec& y);  // exp(4 pi i x^T J y), exactly

// eta[0..7] = eta_1 .. eta_8, eta_8 = eta_infinity
struct AzygeticSystem {
    std::array<int, 8> eta{};
    std::vector<int> U_set() const;  // 1-based indices with even eta_i
    int vanishing() const;           // eta_U = sum of eta_i over U, the vanishing even characteristic
    bool operator==(const AzygeticSystem& o) const { return eta == o.eta; }
};

// span = all of F_2^6, the seven finite characteristics sum to 0, pairwise e2 = -1, eta_8 = 0
bool is_azygetic(const AzygeticSystem& e);

AzygeticSystem standard_azygetic();
// An azygetic system with vanishing characteristic target, from a breadth-first search over
// transvections applied to the standard one (first hit in a fixed order; table built once).
AzygeticSystem transport_azygetic(int target);

// eta_i -> eta_{p(i)} + eta_{p(8)}; p is 0-based
AzygeticSystem relabel(const AzygeticSystem& e, const std::array<int, 8>& p);
// eta_i -> (M^{-1})^T eta_i over F_2 (the linear part of the characteristic action)
AzygeticSystem linear_transport(const IMat& m, const AzygeticSystem& e);

// Decompositions of {3..7} minus {l+2} into V, W: first pair, then the two fallbacks.
constexpr int kDecompositions = 3;

struct TakaseTerm {
    std::array<CharVec, 4> chars;  // numerator 1, 2, denominator 1, 2 (unreduced sums of eta)
    int sign = 1;
};
TakaseTerm takase_term(const AzygeticSystem& e, int l, int decomposition);

using RosenhainTuple = std::array<Complex, 5>;

// lambda_l = sign * (theta[c1] theta[c2] / (theta[c3] theta[c4]))^2 with branch points 1, 2 sent to 0, 1
RosenhainTuple takase_rosenhain(const ThetaConstants& t, const AzygeticSystem& e, long prec, int decomposition = -1);

// Conjugates at Z' = period matrix of the acted triple, given a lift Ut of the mod-2 inverse of the
// relating matrix: characteristics c' = Ut^T (c - delta0(Ut)/2) and the phase zeta4 from phi(Ut, c').
RosenhainTuple conjugate_rosenhains(const ThetaConstants& tp, const IMat& ut, const AzygeticSystem& e, long prec,
                                    int decomposition = -1);
// zeta4 for a given l as an exact rational r with zeta4 = exp(pi i r), r in {0, 1/2, 1, 3/2}
Rat conjugate_phase(const IMat& ut, const AzygeticSystem& e, int l, int decomposition);

// x (x - 1) prod (x - lambda_i), low to high, degree 7
std::vector<Complex> curve_from_rosenhains(const RosenhainTuple& t);

// Intrinsic marking of branch points.
// The 2-adic lattice (d a + 2^v Z^6) / 2^t of an ideal a (d its denominator, 2^t || d,
// 2^v || det(d a)), as HNF rows; equal for all ideals of odd norm.
QMat canonical_2adic_lattice(const Lattice& ideal);
// Symplectic basis of L/2L for Tr(xi conj(x) y) mod 2: columns e1 e2 e3 f1 f2 f3 in L-coordinates.
IMat symplectic_frame_mod2(const QMat& l, const FieldElement& xi, const NumberField& f);
// R (mod 2) with (L-coordinates of c) = F R^T mod 2
IMat frame_relation(const QMat& l, const IMat& frame, const Lattice& c);
// eta^c = (R^{-1})^T eta_F
AzygeticSystem marking_from_frame(const std::array<int, 8>& eta_frame, const IMat& r);

}  // namespace cmpoly
