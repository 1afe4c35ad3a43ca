#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "cmpoly/matrix.hpp"

namespace cmpoly {

struct NonPrincipalForm : std::runtime_error {
    std::vector<Int> elementary_divisors;
    explicit NonPrincipalForm(std::vector<Int> d);
};

struct RecognitionFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Row Hermite normal form: rows generate the lattice; the result has rank many rows,
// upper echelon, positive pivots and entries above each pivot reduced into [0, pivot).
IMat hnf(const IMat& m);

// Same, also returning a unimodular U (rows(m) x rows(m)) with U*m = [H; 0].
IMat hnf_with_transform(const IMat& m, IMat& u);

// Smith normal form diagonal (nonzero invariant factors, ascending divisibility).
std::vector<Int> elementary_divisors(const IMat& m);

// T with T^T E T = J_g for an alternating unimodular E.
IMat symplectic_reduce(const IMat& e);

bool is_alternating(const IMat& e);

struct LLLResult {
    IMat basis;      // reduced rows
    IMat transform;  // transform * input = basis
};

// Integral LLL on the rows of an integer matrix with parameter delta = num/den.
LLLResult lll(const IMat& basis, const Rat& delta = Rat(99, 100));
// Rational input: scaled to a common denominator and back.
struct QLLLResult {
    QMat basis;
    IMat transform;
};
QLLLResult lll(const QMat& basis, const Rat& delta);
// LLL for the positive definite integer Gram matrix g; returns H with H g H^T reduced.
IMat lll_gram(const IMat& g, const Rat& delta = Rat(99, 100));

bool lovasz_holds(const IMat& basis, const Rat& delta);

// Integer polynomial p (low to high, content 1, positive leading coefficient) of degree
// at most maxdeg with |p(x)| < 2^(-prec/2); prefers the smallest degree that works.
std::vector<Int> algdep(const Complex& x, int maxdeg, long prec);

// Short integer relation sum p_k v_k ~ 0 (up to 2^(-prec/2) relative to max |v_k|).
std::vector<Int> lindep(const std::vector<Complex>& v, long prec);

// Best rational approximation with denominator at most 2^maxbits, if it matches to 2^-(prec/2).
bool recognize_rational(const Real& x, long prec, Rat& out);

}  // namespace cmpoly
