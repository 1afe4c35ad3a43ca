#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include "cmpoly/mp.hpp"

namespace cmpoly {

struct SingularCurve : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// sum_i c[i] X^i Y^(d - i), d = c.size() - 1. Instantiated for Rat (exact) and Complex.
template <class T>
struct BinaryForm {
    std::vector<T> c;
    int degree() const { return static_cast<int>(c.size()) - 1; }
};

// (f, g)_k = (m-k)! (n-k)! / (m! n!) sum_i (-1)^i binom(k, i) d^k f / dX^(k-i) dY^i * d^k g / dX^i dY^(k-i)
template <class T>
BinaryForm<T> transvectant(const BinaryForm<T>& f, const BinaryForm<T>& g, int k);

template <class T>
struct ShiodaVector {
    std::array<T, 9> J;  // J2 .. J10
    T Delta;             // discriminant of the octavic, degree 14
};

// g = (f,f)_4, k = (f,f)_6, h = (k,k)_2, m = (f,k)_4, n = (f,h)_4, p = (g,k)_4, q = (g,h)_4;
// J2 = (f,f)_8, J3 = (f,g)_8, J4 = (k,k)_4, J5 = (m,k)_4, J6 = (k,h)_4, J7 = (m,h)_4,
// J8 = (p,h)_4, J9 = (n,h)_4, J10 = (q,h)_4.
template <class T>
ShiodaVector<T> shioda_invariants(const BinaryForm<T>& f);

// (J2^7, J2^4 J3^2, J2^5 J4, J5 J9, J2^4 J6, J7^2, J2^3 J8, J2^5 J9^2 / Delta, J2^2 J10) / Delta
template <class T>
std::array<T, 9> absolute_shiodas(const ShiodaVector<T>& v);

// Octavic from a polynomial of degree 7 or 8 (low to high): a degree-7 input gets a root at infinity.
template <class T>
BinaryForm<T> homogenize_octavic(const std::vector<T>& poly);

// Discriminant of the binary form (for a8 = 0 this is a7^2 disc(f) of the affine part).
template <class T>
T form_discriminant(const BinaryForm<T>& f);

// f(x) -> f(a x + b) on a polynomial given low to high (for covariance checks)
template <class T>
std::vector<T> substitute_affine(const std::vector<T>& poly, const T& a, const T& b);

}  // namespace cmpoly
