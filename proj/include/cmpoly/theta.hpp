#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include "cmpoly/matrix.hpp"

namespace cmpoly {

struct PrecisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Characteristics of genus 3 are indexed by 6 bits a1 a2 a3 b1 b2 b3 (a1 most significant);
// index k stands for (xi1, xi2) = (a/2, b/2). Lexicographic order of (xi1, xi2) = integer order.
using CharVec = std::vector<Rat>;  // 2g entries, half-integers, not necessarily reduced

bool char_is_even(int k);
std::vector<int> even_characteristics();
CharVec char_vector(int k);
int char_index(const CharVec& c);  // reduces mod 1
int char_parity(const CharVec& c);  // 0 even, 1 odd: 4 xi1 . xi2 mod 2

// Igusa's action: M.xi = (M^{-1})^T xi + delta0 / 2, delta0 = (diag(C D^T), diag(A B^T)); unreduced.
CharVec char_action(const IMat& m, const CharVec& c);
int char_action(const IMat& m, int k);
// Rational r with phi(M, xi) = pi i r:
// phi = -pi i (xi1^T B^T D xi1 + xi2^T A^T C xi2 - 2 xi1^T B^T C xi2 - (D xi1 - C xi2)^T diag(A B^T))
Rat phi_coefficient(const IMat& m, const CharVec& c);
Complex phi_phase(const IMat& m, const CharVec& c);

struct ThetaConstants {
    std::array<Complex, 64> values;
    long precision = 0;
    double radius = 0;     // ellipsoid bound B on m^T Im(Z) m
    double log2_error = 0; // bound on the absolute error of every value
    long terms = 0;
};

struct ThetaOptions {
    int jobs = 1;
    bool force_odd = false;  // sum odd characteristics too instead of returning exact zeros
};

// All 64 theta constants theta[xi](Z) = sum_n exp(pi i (n+xi1)^T Z (n+xi1) + 2 pi i (n+xi1)^T xi2).
ThetaConstants theta_constants(const CMat& z, long prec, const ThetaOptions& opt = {});

// theta at an arbitrary half-integral characteristic from the reduced table
Complex theta_at(const ThetaConstants& t, const CharVec& c);

Complex chi18(const ThetaConstants& t);
Complex sigma140(const ThetaConstants& t);

// Index of the unique vanishing even theta constant (|theta| < 2^(-prec/2) with every other even
// constant above 2^(-prec/4)); -1 when none vanishes; throws PrecisionError when ambiguous.
int find_vanishing(const ThetaConstants& t, long prec);

}  // namespace cmpoly
