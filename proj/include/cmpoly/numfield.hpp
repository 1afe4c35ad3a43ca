#pragma once

#include <optional>
#include <vector>

#include "cmpoly/matrix.hpp"
#include "cmpoly/mp.hpp"

namespace cmpoly {

using FieldElement = std::vector<Rat>;  // coordinates on the power basis 1, x, ..., x^(n-1)

struct NumberField {
    std::vector<Int> minpoly;    // monic, low to high, length degree+1
    std::optional<QMat> conjugation;  // column j holds the coordinates of conj(x^j)

    NumberField() = default;
    NumberField(std::vector<Int> mp, std::optional<QMat> conj = std::nullopt);
    int degree() const { return static_cast<int>(minpoly.size()) - 1; }
};

FieldElement nf_one(const NumberField& F);
FieldElement nf_gen(const NumberField& F);
FieldElement nf_from_int(const NumberField& F, const Rat& q);
FieldElement nf_add(const FieldElement& a, const FieldElement& b);
FieldElement nf_sub(const FieldElement& a, const FieldElement& b);
FieldElement nf_scale(const FieldElement& a, const Rat& s);
FieldElement nf_mul(const FieldElement& a, const FieldElement& b, const NumberField& F);
FieldElement nf_pow(const FieldElement& a, unsigned e, const NumberField& F);
Rat nf_trace(const FieldElement& a, const NumberField& F);
FieldElement nf_conj(const FieldElement& a, const NumberField& F);
bool nf_is_zero(const FieldElement& a);

// Multiplication-by-a matrix acting on coordinate columns.
QMat nf_mul_matrix(const FieldElement& a, const NumberField& F);

struct EmbeddingSet {
    std::vector<Complex> roots;
    long precision = 0;
};

// All complex roots of the defining polynomial in canonical order at the given precision.
EmbeddingSet nf_embeddings(const NumberField& F, long prec);

Complex nf_embed(const FieldElement& a, const Complex& root);
Complex nf_embed(const FieldElement& a, const EmbeddingSet& E, int k);

bool nf_conjugation_check(const NumberField& F, long prec = 256);

// True when no rational root of small height exists (a cheap irreducibility spot check).
bool nf_no_small_rational_roots(const NumberField& F, long bound = 1000);

// A polynomial with complex coefficients, low to high; all roots by Aberth iteration
// followed by per-root Newton refinement to the given precision.
std::vector<Complex> poly_roots(const std::vector<Complex>& coeffs, long prec);
Complex poly_eval(const std::vector<Complex>& coeffs, const Complex& z);

}  // namespace cmpoly
