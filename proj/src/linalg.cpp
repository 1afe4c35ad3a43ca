#include "cmpoly/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cmpoly {

namespace {

std::string ed_message(const std::vector<Int>& d) {
    std::ostringstream os;
    os << "alternating form is not unimodular; elementary divisors:";
    for (const auto& x : d) os << ' ' << x.get_str();
    return os.str();
}

void row_axpy(IMat& a, int dst, int src, const Int& q) {
    // row dst -= q * row src
    for (int j = 0; j < a.cols(); ++j) a(dst, j) -= q * a(src, j);
}

void row_swap(IMat& a, int i, int j) {
    if (i == j) return;
    for (int c = 0; c < a.cols(); ++c) std::swap(a(i, c), a(j, c));
}

void row_neg(IMat& a, int i) {
    for (int c = 0; c < a.cols(); ++c) a(i, c) = -a(i, c);
}

Int fdiv(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Int tdiv(const Int& a, const Int& b) {
    Int q;
    mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Int exact_div(const Int& a, const Int& b) {
    Int q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

// nearest integer to a/b for b > 0
Int round_div(const Int& a, const Int& b) { return fdiv(2 * a + b, 2 * b); }

Int dot(const std::vector<Int>& a, const IMat& e, const std::vector<Int>& b) {
    Int s = 0;
    const int n = static_cast<int>(a.size());
    for (int i = 0; i < n; ++i) {
        if (a[i] == 0) continue;
        Int t = 0;
        for (int j = 0; j < n; ++j) t += e(i, j) * b[j];
        s += a[i] * t;
    }
    return s;
}

}  // namespace

NonPrincipalForm::NonPrincipalForm(std::vector<Int> d)
    : std::runtime_error(ed_message(d)), elementary_divisors(std::move(d)) {}

IMat hnf_with_transform(const IMat& m, IMat& u) {
    IMat a = m;
    const int nr = a.rows(), nc = a.cols();
    u = IMat::identity(nr);
    int r = 0;
    for (int c = 0; c < nc && r < nr; ++c) {
        for (;;) {
            int p = -1;
            for (int i = r; i < nr; ++i) {
                if (a(i, c) == 0) continue;
                if (p < 0 || abs(a(i, c)) < abs(a(p, c))) p = i;
            }
            if (p < 0) break;
            row_swap(a, p, r);
            row_swap(u, p, r);
            bool clean = true;
            for (int i = r + 1; i < nr; ++i) {
                if (a(i, c) == 0) continue;
                Int q = tdiv(a(i, c), a(r, c));
                row_axpy(a, i, r, q);
                row_axpy(u, i, r, q);
                if (a(i, c) != 0) clean = false;
            }
            if (clean) break;
        }
        if (a(r, c) == 0) continue;
        if (a(r, c) < 0) {
            row_neg(a, r);
            row_neg(u, r);
        }
        for (int i = 0; i < r; ++i) {
            Int q = fdiv(a(i, c), a(r, c));
            if (q == 0) continue;
            row_axpy(a, i, r, q);
            row_axpy(u, i, r, q);
        }
        ++r;
    }
    return a;
}

IMat hnf(const IMat& m) {
    IMat u;
    IMat a = hnf_with_transform(m, u);
    int rank = 0;
    for (int i = 0; i < a.rows(); ++i) {
        bool nz = false;
        for (int j = 0; j < a.cols(); ++j)
            if (a(i, j) != 0) { nz = true; break; }
        if (nz) rank = i + 1;
    }
    return a.block(0, 0, rank, a.cols());
}

std::vector<Int> elementary_divisors(const IMat& m) {
    IMat a = m;
    // alternate row and column HNF until the matrix is diagonal
    for (int it = 0; it < 64; ++it) {
        a = hnf(a);
        a = hnf(a.transpose());
        bool diag = true;
        for (int i = 0; i < a.rows() && diag; ++i)
            for (int j = 0; j < a.cols(); ++j)
                if (i != j && a(i, j) != 0) { diag = false; break; }
        if (diag) break;
    }
    std::vector<Int> d;
    for (int i = 0; i < std::min(a.rows(), a.cols()); ++i)
        if (a(i, i) != 0) d.push_back(abs(a(i, i)));
    // enforce the divisibility chain
    for (size_t i = 0; i < d.size(); ++i)
        for (size_t j = i + 1; j < d.size(); ++j) {
            Int g = gcd(d[i], d[j]);
            Int l = d[i] / g * d[j];
            d[i] = g;
            d[j] = l;
        }
    return d;
}

bool is_alternating(const IMat& e) {
    if (e.rows() != e.cols()) return false;
    for (int i = 0; i < e.rows(); ++i) {
        if (e(i, i) != 0) return false;
        for (int j = i + 1; j < e.cols(); ++j)
            if (e(i, j) != -e(j, i)) return false;
    }
    return true;
}

IMat symplectic_reduce(const IMat& e) {
    if (!is_alternating(e) || e.rows() % 2) throw std::invalid_argument("symplectic_reduce: not alternating");
    const int n = e.rows(), g = n / 2;
    if (abs(determinant(e)) != 1) throw NonPrincipalForm(elementary_divisors(e));
    std::vector<std::vector<Int>> w;
    for (int j = 0; j < n; ++j) {
        std::vector<Int> v(n);
        v[j] = 1;
        w.push_back(v);
    }
    std::vector<std::vector<Int>> es, fs;
    while (!w.empty()) {
        const auto v = w[0];
        // w_vec with E(v, w_vec) = 1 as an integer combination of the remaining basis
        Int gg = 0;
        std::vector<Int> h(w.size());
        for (size_t j = 0; j < w.size(); ++j) {
            Int p = dot(v, e, w[j]);
            if (p == 0) continue;
            Int ng, s, t;
            mpz_gcdext(ng.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), gg.get_mpz_t(), p.get_mpz_t());
            for (auto& x : h) x *= s;
            h[j] += t;
            gg = ng;
        }
        if (gg != 1) throw NonPrincipalForm(elementary_divisors(e));
        std::vector<Int> wv(n);
        for (size_t j = 0; j < w.size(); ++j)
            for (int i = 0; i < n; ++i) wv[i] += h[j] * w[j][i];
        es.push_back(v);
        fs.push_back(wv);
        // project the remaining generators onto the orthogonal complement of <v, w>
        IMat proj(static_cast<int>(w.size()), n);
        for (size_t j = 0; j < w.size(); ++j) {
            Int a = dot(w[j], e, wv), b = dot(w[j], e, v);
            for (int i = 0; i < n; ++i) proj(static_cast<int>(j), i) = w[j][i] - a * v[i] + b * wv[i];
        }
        IMat hb = hnf(proj);
        w.clear();
        for (int r = 0; r < hb.rows(); ++r) w.push_back(hb.row(r));
    }
    IMat t(n, n);
    for (int i = 0; i < g; ++i)
        for (int r = 0; r < n; ++r) {
            t(r, i) = es[i][r];
            t(r, g + i) = fs[i][r];
        }
    if (t.transpose() * e * t != symplectic_J<Int>(g)) throw std::logic_error("symplectic_reduce: postcondition failed");
    return t;
}

IMat lll_gram(const IMat& gram, const Rat& delta) {
    const int n = gram.rows();
    if (delta <= Rat(1, 4) || delta >= 1) throw std::invalid_argument("lll: delta outside (1/4, 1)");
    const Int dn = delta.get_num(), dd = delta.get_den();
    IMat hm = IMat::identity(n);
    if (n <= 1) return hm;
    // 1-based indexing to follow the integral LLL recurrences
    std::vector<std::vector<Int>> H(n + 1, std::vector<Int>(n + 1));
    for (int i = 1; i <= n; ++i) H[i][i] = 1;
    auto ip = [&](int k, int j) {
        Int s = 0;
        for (int a = 1; a <= n; ++a) {
            if (H[k][a] == 0) continue;
            Int t = 0;
            for (int b = 1; b <= n; ++b) t += gram(a - 1, b - 1) * H[j][b];
            s += H[k][a] * t;
        }
        return s;
    };
    std::vector<Int> d(n + 1);
    std::vector<std::vector<Int>> lam(n + 1, std::vector<Int>(n + 1));
    d[0] = 1;
    d[1] = ip(1, 1);
    if (d[1] <= 0) throw std::invalid_argument("lll: dependent vectors");
    auto red = [&](int k, int l) {
        if (abs(2 * lam[k][l]) <= d[l]) return;
        Int q = round_div(lam[k][l], d[l]);
        for (int a = 1; a <= n; ++a) H[k][a] -= q * H[l][a];
        lam[k][l] -= q * d[l];
        for (int i = 1; i < l; ++i) lam[k][i] -= q * lam[l][i];
    };
    int k = 2, kmax = 1;
    while (k <= n) {
        if (k > kmax) {
            kmax = k;
            for (int j = 1; j <= k; ++j) {
                Int u = ip(k, j);
                for (int i = 1; i < j; ++i) u = exact_div(d[i] * u - lam[k][i] * lam[j][i], d[i - 1]);
                if (j < k) {
                    lam[k][j] = u;
                } else {
                    if (u <= 0) throw std::invalid_argument("lll: Gram matrix not positive definite");
                    d[k] = u;
                }
            }
        }
        red(k, k - 1);
        if (dd * d[k] * d[k - 2] < dn * d[k - 1] * d[k - 1] - dd * lam[k][k - 1] * lam[k][k - 1]) {
            std::swap(H[k], H[k - 1]);
            for (int j = 1; j <= k - 2; ++j) std::swap(lam[k][j], lam[k - 1][j]);
            Int l = lam[k][k - 1];
            Int b = exact_div(d[k - 2] * d[k] + l * l, d[k - 1]);
            for (int i = k + 1; i <= kmax; ++i) {
                Int t = lam[i][k];
                lam[i][k] = exact_div(d[k] * lam[i][k - 1] - l * t, d[k - 1]);
                lam[i][k - 1] = exact_div(b * t + l * lam[i][k], d[k]);
            }
            d[k - 1] = b;
            k = std::max(2, k - 1);
        } else {
            for (int l = k - 2; l >= 1; --l) red(k, l);
            ++k;
        }
    }
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) hm(i - 1, j - 1) = H[i][j];
    return hm;
}

LLLResult lll(const IMat& basis, const Rat& delta) {
    IMat g = basis * basis.transpose();
    IMat h = lll_gram(g, delta);
    return {h * basis, h};
}

QLLLResult lll(const QMat& basis, const Rat& delta) {
    Int den = 1;
    for (const auto& q : basis.data()) den = lcm(den, q.get_den());
    IMat ib(basis.rows(), basis.cols());
    for (int i = 0; i < basis.rows(); ++i)
        for (int j = 0; j < basis.cols(); ++j) {
            Rat t = basis(i, j) * Rat(den);
            ib(i, j) = t.get_num();
        }
    LLLResult r = lll(ib, delta);
    QMat out = convert<Int, Rat>(r.basis).scaled(Rat(1) / Rat(den));
    return {out, r.transform};
}

bool lovasz_holds(const IMat& basis, const Rat& delta) {
    const int n = basis.rows();
    QMat b = convert<Int, Rat>(basis);
    std::vector<std::vector<Rat>> bs(n), mu(n, std::vector<Rat>(n));
    std::vector<Rat> bn(n);
    for (int i = 0; i < n; ++i) {
        bs[i] = b.row(i);
        for (int j = 0; j < i; ++j) {
            Rat s = 0;
            for (int c = 0; c < b.cols(); ++c) s += b(i, c) * bs[j][c];
            mu[i][j] = s / bn[j];
            for (int c = 0; c < b.cols(); ++c) bs[i][c] -= mu[i][j] * bs[j][c];
        }
        bn[i] = 0;
        for (const auto& x : bs[i]) bn[i] += x * x;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j)
            if (abs(mu[i][j]) > Rat(1, 2)) return false;
    for (int k = 1; k < n; ++k)
        if (bn[k] < (delta - mu[k][k - 1] * mu[k][k - 1]) * bn[k - 1]) return false;
    return true;
}

std::vector<Int> algdep(const Complex& x, int maxdeg, long prec) {
    if (maxdeg < 1) throw std::invalid_argument("algdep: maxdeg < 1");
    PrecScope ps(prec + 64);
    const bool cplx = log2_abs(x.im) > -static_cast<double>(prec) / 2;
    const double lx = std::max(0.0, log2_abs(x));
    for (int d = 1; d <= maxdeg; ++d) {
        const long scale = prec - 16 - static_cast<long>(std::ceil(d * lx));
        if (scale < 16) break;
        Real C = pow2(scale);
        const int extra = cplx ? 2 : 1;
        IMat m(d + 1, d + 1 + extra);
        Complex pw(1L);
        for (int k = 0; k <= d; ++k) {
            m(k, k) = 1;
            m(k, d + 1) = (C * pw.re).round_to_int();
            if (cplx) m(k, d + 2) = (C * pw.im).round_to_int();
            pw = pw * x;
        }
        LLLResult r = lll(m, Rat(99, 100));
        std::vector<Int> p = r.basis.row(0);
        p.resize(d + 1);
        while (p.size() > 1 && p.back() == 0) p.pop_back();
        if (p.size() < 2) continue;
        Int c = 0;
        for (const auto& a : p) c = gcd(c, a);
        for (auto& a : p) a /= c;
        if (p.back() < 0)
            for (auto& a : p) a = -a;
        // significance: a genuine relation is far shorter than a generic lattice vector
        double h = 0;
        for (const auto& a : p) h = std::max(h, a == 0 ? 0.0 : std::log2(std::fabs(a.get_d())) + 1);
        const double generic = static_cast<double>(scale) * extra / (d + 1 + 0.0);
        Complex v;
        for (int k = static_cast<int>(p.size()) - 1; k >= 0; --k) v = v * x + Complex(Real(p[k]), Real(0L));
        const double res = log2_abs(v);
        if (res < -static_cast<double>(prec) / 2 && h < 0.75 * generic) return p;
    }
    throw RecognitionFailure("algdep: no relation of degree <= " + std::to_string(maxdeg) + " at " +
                             std::to_string(prec) + " bits");
}

std::vector<Int> lindep(const std::vector<Complex>& v, long prec) {
    const int n = static_cast<int>(v.size());
    if (n < 2) throw std::invalid_argument("lindep: need at least two values");
    PrecScope ps(prec + 64);
    double lmax = 0;
    bool cplx = false;
    for (const auto& z : v) {
        lmax = std::max(lmax, log2_abs(z));
        if (log2_abs(z.im) > -static_cast<double>(prec) / 2) cplx = true;
    }
    const long scale = prec - 16 - static_cast<long>(std::ceil(lmax));
    if (scale < 16) throw RecognitionFailure("lindep: values too large for the precision");
    Real C = pow2(scale);
    const int extra = cplx ? 2 : 1;
    IMat m(n, n + extra);
    for (int k = 0; k < n; ++k) {
        m(k, k) = 1;
        m(k, n) = (C * v[k].re).round_to_int();
        if (cplx) m(k, n + 1) = (C * v[k].im).round_to_int();
    }
    LLLResult r = lll(m, Rat(99, 100));
    std::vector<Int> p = r.basis.row(0);
    p.resize(n);
    Int c = 0;
    for (const auto& a : p) c = gcd(c, a);
    if (c == 0) throw RecognitionFailure("lindep: trivial relation");
    for (auto& a : p) a /= c;
    double h = 0;
    for (const auto& a : p) h = std::max(h, a == 0 ? 0.0 : std::log2(std::fabs(a.get_d())) + 1);
    const double generic = static_cast<double>(scale) * extra / n;
    Complex s;
    for (int k = 0; k < n; ++k) s += v[k] * Real(p[k]);
    if (log2_abs(s) < lmax - static_cast<double>(prec) / 2 && h < 0.75 * generic) return p;
    throw RecognitionFailure("lindep: no integer relation at " + std::to_string(prec) + " bits");
}

bool recognize_rational(const Real& x, long prec, Rat& out) {
    PrecScope ps(prec + 64);
    Real y = x;
    Int p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    const double maxq = static_cast<double>(prec) / 4;
    for (int it = 0; it < 4 * prec; ++it) {
        Real fl;
        mpfr_floor(fl.get(), y.get());
        Int a = fl.round_to_int();
        Int p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 != 0 && std::log2(q2.get_d()) > maxq) return false;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        Rat cand(p1, q1);
        cand.canonicalize();
        if (log2_abs(x - Real(cand)) < -static_cast<double>(prec) / 2) {
            out = cand;
            return true;
        }
        Real frac = y - fl;
        if (log2_abs(frac) < -static_cast<double>(prec) + 8) return false;
        y = Real(1L) / frac;
    }
    return false;
}

}  // namespace cmpoly
