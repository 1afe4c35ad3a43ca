#include "cmpoly/numfield.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cmpoly {

namespace {

constexpr long kGuard = 32;
constexpr long kRefPrec = 128;

Complex eval_deriv(const std::vector<Complex>& c, const Complex& z, Complex& dp) {
    Complex p = c.back();
    dp = Complex();
    for (int i = static_cast<int>(c.size()) - 2; i >= 0; --i) {
        dp = dp * z + p;
        p = p * z + c[i];
    }
    return p;
}

std::vector<Complex> aberth(const std::vector<Complex>& c) {
    const int n = static_cast<int>(c.size()) - 1;
    // Cauchy bound for the starting circle
    Real lead = abs(c.back());
    Real rad(1L);
    for (int i = 0; i < n; ++i) {
        Real t = abs(c[i]) / lead;
        if (t > rad) rad = t;
    }
    rad += Real(1L);
    std::vector<Complex> z(n);
    for (int k = 0; k < n; ++k) {
        // perturbed angles avoid symmetric stalls
        Real th = pi() * Real(2L) * Real(k) / Real(n) + Real(0.4);
        z[k] = polar(rad * Real(0.5 + 0.05 * k / n), th);
    }
    const double tol = -static_cast<double>(working_prec()) + 12;
    for (int it = 0; it < 2000; ++it) {
        double worst = -1e18;
        for (int k = 0; k < n; ++k) {
            Complex dp;
            Complex p = eval_deriv(c, z[k], dp);
            if (abs(p).is_zero()) continue;
            Complex w = p / dp;
            Complex s;
            for (int j = 0; j < n; ++j)
                if (j != k) s += Complex(1L) / (z[k] - z[j]);
            Complex step = w / (Complex(1L) - w * s);
            z[k] -= step;
            double rel = log2_abs(step) - std::max(0.0, log2_abs(z[k]));
            worst = std::max(worst, rel);
        }
        if (worst < tol) return z;
    }
    throw std::runtime_error("root isolation failed to converge");
}

void newton_refine(const std::vector<Complex>& c, Complex& z, long prec) {
    long p = kRefPrec;
    while (p < prec) {
        p = std::min(prec, 2 * p);
        PrecScope ps(p);
        z.re.set_prec_keep(p);
        z.im.set_prec_keep(p);
        std::vector<Complex> cp;
        cp.reserve(c.size());
        for (const auto& x : c) {
            Complex y = x;
            y.re.set_prec_keep(p);
            y.im.set_prec_keep(p);
            cp.push_back(y);
        }
        for (int it = 0; it < 3; ++it) {
            Complex dp;
            Complex v = eval_deriv(cp, z, dp);
            Complex step = v / dp;
            z -= step;
            if (log2_abs(step) - std::max(0.0, log2_abs(z)) < -static_cast<double>(p) + 8) break;
        }
    }
}

}  // namespace

NumberField::NumberField(std::vector<Int> mp, std::optional<QMat> conj)
    : minpoly(std::move(mp)), conjugation(std::move(conj)) {
    if (minpoly.size() < 2 || minpoly.back() != 1) throw std::invalid_argument("minpoly must be monic of degree >= 1");
    if (conjugation && (conjugation->rows() != degree() || conjugation->cols() != degree()))
        throw std::invalid_argument("conjugation matrix has wrong shape");
}

FieldElement nf_one(const NumberField& F) { return nf_from_int(F, Rat(1)); }

FieldElement nf_gen(const NumberField& F) {
    FieldElement g(F.degree());
    if (F.degree() == 1) {
        g[0] = -Rat(F.minpoly[0]);
    } else {
        g[1] = 1;
    }
    return g;
}

FieldElement nf_from_int(const NumberField& F, const Rat& q) {
    FieldElement e(F.degree());
    e[0] = q;
    return e;
}

FieldElement nf_add(const FieldElement& a, const FieldElement& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
    FieldElement r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

FieldElement nf_sub(const FieldElement& a, const FieldElement& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dimension mismatch");
    FieldElement r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

FieldElement nf_scale(const FieldElement& a, const Rat& s) {
    FieldElement r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
    return r;
}

FieldElement nf_mul(const FieldElement& a, const FieldElement& b, const NumberField& F) {
    const int n = F.degree();
    if (static_cast<int>(a.size()) != n || static_cast<int>(b.size()) != n)
        throw std::invalid_argument("dimension mismatch");
    std::vector<Rat> prod(2 * n - 1);
    for (int i = 0; i < n; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < n; ++j) prod[i + j] += a[i] * b[j];
    }
    for (int k = 2 * n - 2; k >= n; --k) {
        if (prod[k] == 0) continue;
        Rat t = prod[k];
        for (int i = 0; i < n; ++i) prod[k - n + i] -= t * Rat(F.minpoly[i]);
        prod[k] = 0;
    }
    prod.resize(n);
    return prod;
}

FieldElement nf_pow(const FieldElement& a, unsigned e, const NumberField& F) {
    FieldElement r = nf_one(F), b = a;
    while (e) {
        if (e & 1u) r = nf_mul(r, b, F);
        e >>= 1;
        if (e) b = nf_mul(b, b, F);
    }
    return r;
}

Rat nf_trace(const FieldElement& a, const NumberField& F) {
    // Newton power sums of the roots of the minpoly
    const int n = F.degree();
    std::vector<Rat> e(n + 1);  // elementary symmetric functions with signs from the minpoly
    for (int k = 1; k <= n; ++k) e[k] = Rat(F.minpoly[n - k]) * ((k % 2) ? -1 : 1);
    std::vector<Rat> p(n);
    p[0] = n;
    for (int k = 1; k < n; ++k) {
        Rat s = 0;
        for (int i = 1; i < k; ++i) s += ((i % 2) ? 1 : -1) * e[i] * p[k - i];
        s += ((k % 2) ? 1 : -1) * Rat(k) * e[k];
        p[k] = s;
    }
    Rat t = 0;
    for (int i = 0; i < n; ++i) t += a[i] * p[i];
    return t;
}

FieldElement nf_conj(const FieldElement& a, const NumberField& F) {
    if (!F.conjugation) throw std::logic_error("field has no conjugation");
    const QMat& C = *F.conjugation;
    const int n = F.degree();
    FieldElement r(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r[i] += C(i, j) * a[j];
    return r;
}

bool nf_is_zero(const FieldElement& a) {
    return std::all_of(a.begin(), a.end(), [](const Rat& q) { return q == 0; });
}

QMat nf_mul_matrix(const FieldElement& a, const NumberField& F) {
    const int n = F.degree();
    QMat m(n, n);
    FieldElement xj = nf_one(F), g = nf_gen(F);
    for (int j = 0; j < n; ++j) {
        FieldElement col = nf_mul(a, xj, F);
        for (int i = 0; i < n; ++i) m(i, j) = col[i];
        xj = nf_mul(xj, g, F);
    }
    return m;
}

Complex poly_eval(const std::vector<Complex>& c, const Complex& z) {
    Complex p = c.back();
    for (int i = static_cast<int>(c.size()) - 2; i >= 0; --i) p = p * z + c[i];
    return p;
}

std::vector<Complex> poly_roots(const std::vector<Complex>& coeffs, long prec) {
    std::vector<Complex> z;
    {
        PrecScope ps(kRefPrec);
        std::vector<Complex> c;
        for (const auto& x : coeffs) {
            Complex y = x;
            y.re.set_prec_keep(kRefPrec);
            y.im.set_prec_keep(kRefPrec);
            c.push_back(y);
        }
        z = aberth(c);
    }
    for (auto& r : z) newton_refine(coeffs, r, prec + kGuard);
    return z;
}

EmbeddingSet nf_embeddings(const NumberField& F, long prec) {
    if (prec < 64) throw std::invalid_argument("nf_embeddings: precision below 64 bits");
    const long wp = prec + kGuard;
    std::vector<Complex> c;
    {
        PrecScope ps(wp);
        for (const auto& a : F.minpoly) c.emplace_back(Real(a), Real(0L));
    }
    std::vector<Complex> ref;
    {
        PrecScope ps(kRefPrec);
        std::vector<Complex> cr;
        for (const auto& a : F.minpoly) cr.emplace_back(Real(a), Real(0L));
        ref = aberth(cr);
        for (auto& r : ref) newton_refine(cr, r, kRefPrec);
        // lexicographic on (re, im); real parts that agree to 2^-64 count as equal
        Real tol = pow2(-64);
        std::sort(ref.begin(), ref.end(), [&](const Complex& a, const Complex& b) {
            Real d = a.re - b.re;
            if (abs(d) > tol) return d.sign() < 0;
            return a.im < b.im;
        });
    }
    EmbeddingSet E;
    E.precision = prec;
    for (auto r : ref) {
        newton_refine(c, r, wp);
        E.roots.push_back(r);
    }
    // residual contract |p(r)| < 2^(1-prec) * ||p||_1 * max(1,|r|)^n
    PrecScope ps(wp);
    Real norm1(0L);
    for (const auto& a : F.minpoly) norm1 += abs(Real(a));
    for (const auto& r : E.roots) {
        Real m = abs(r);
        if (m < Real(1L)) m = Real(1L);
        Real bound = pow2(1 - prec) * norm1;
        for (int i = 0; i < F.degree(); ++i) bound *= m;
        if (abs(poly_eval(c, r)) > bound) throw std::runtime_error("root residual above contract bound");
    }
    for (size_t i = 0; i < E.roots.size(); ++i)
        for (size_t j = i + 1; j < E.roots.size(); ++j)
            if (log2_abs(E.roots[i] - E.roots[j]) < -static_cast<double>(prec) / 2)
                throw std::runtime_error("roots not separated at working precision");
    return E;
}

Complex nf_embed(const FieldElement& a, const Complex& root) {
    Complex s;
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) s = s * root + Complex(a[i]);
    return s;
}

Complex nf_embed(const FieldElement& a, const EmbeddingSet& E, int k) {
    PrecScope ps(E.precision + kGuard);
    return nf_embed(a, E.roots.at(k));
}

bool nf_conjugation_check(const NumberField& F, long prec) {
    if (!F.conjugation) return false;
    const QMat& C = *F.conjugation;
    const int n = F.degree();
    if (C * C != QMat::identity(n)) return false;
    // conj must be a ring map: conj(x^j) = conj(x)^j
    FieldElement cx = nf_conj(nf_gen(F), F);
    FieldElement pw = nf_one(F);
    for (int j = 0; j < n; ++j) {
        FieldElement xj = nf_pow(nf_gen(F), j, F);
        if (nf_conj(xj, F) != pw) return false;
        pw = nf_mul(pw, cx, F);
    }
    // minpoly(conj(x)) = 0
    FieldElement acc(n);
    for (int i = 0; i <= n; ++i) acc = nf_add(acc, nf_scale(nf_pow(cx, i, F), Rat(F.minpoly[i])));
    if (!nf_is_zero(acc)) return false;
    EmbeddingSet E = nf_embeddings(F, prec);
    PrecScope ps(prec + kGuard);
    for (int k = 0; k < n; ++k) {
        Complex v = nf_embed(cx, E.roots[k]);
        if (log2_abs(v - E.roots[k].conj()) > -static_cast<double>(prec) / 2) return false;
    }
    return true;
}

bool nf_no_small_rational_roots(const NumberField& F, long bound) {
    // monic integer polynomial: rational roots are integers dividing the constant term
    Int c0 = F.minpoly[0];
    for (long d = -bound; d <= bound; ++d) {
        if (d == 0) {
            if (c0 == 0) return false;
            continue;
        }
        if (c0 % d != 0) continue;
        Int v = 0;
        for (int i = F.degree(); i >= 0; --i) v = v * d + F.minpoly[i];
        if (v == 0) return false;
    }
    return true;
}

}  // namespace cmpoly
