#include "cmpoly/hyperelliptic.hpp"

#include <deque>
#include <map>
#include <mutex>

#include "cmpoly/linalg.hpp"

namespace cmpoly {

namespace {

int popcount(unsigned x) { return __builtin_popcount(x); }
int a_bits(int k) { return k >> 3; }
int b_bits(int k) { return k & 7; }

int bit(int v, int i) { return (v >> (5 - i)) & 1; }  // coordinate i (0-based) of a 6-bit vector

// F_2 matrix times bit vector
int apply_mod2(const IMat& m, int v) {
    int r = 0;
    for (int i = 0; i < 6; ++i) {
        int s = 0;
        for (int j = 0; j < 6; ++j) s ^= static_cast<int>(m(i, j).get_si() & 1) & bit(v, j);
        r = 2 * r + s;
    }
    return r;
}

IMat mul_mod2(const IMat& a, const IMat& b) {
    IMat c = a * b;
    for (int i = 0; i < c.rows(); ++i)
        for (int j = 0; j < c.cols(); ++j) c(i, j) = ((c(i, j) % 2) + 2) % 2;
    return c;
}

int rat_mod2(const Rat& q) {
    if (q.get_den() % 2 == 0) throw std::invalid_argument("rat_mod2: not 2-integral");
    Int r = q.get_num() % 2;
    return r != 0 ? 1 : 0;
}

template <class T>
std::vector<T> sym_diff(std::vector<T> a, const std::vector<T>& b) {
    for (T x : b) {
        auto it = std::find(a.begin(), a.end(), x);
        if (it == a.end()) a.push_back(x);
        else a.erase(it);
    }
    std::sort(a.begin(), a.end());
    return a;
}

CharVec char_sum(const AzygeticSystem& e, const std::vector<int>& idx) {
    CharVec s(6, Rat(0));
    for (int i : idx) {
        CharVec c = char_vector(e.eta[i - 1]);
        for (int k = 0; k < 6; ++k) s[k] += c[k];
    }
    return s;
}

int char_xor(const AzygeticSystem& e, const std::vector<int>& idx) {
    int s = 0;
    for (int i : idx) s ^= e.eta[i - 1];
    return s;
}

AzygeticSystem transvect(const AzygeticSystem& e, int v) {
    AzygeticSystem r;
    for (int i = 0; i < 8; ++i) r.eta[i] = char_omega(e.eta[i], v) ? (e.eta[i] ^ v) : e.eta[i];
    return r;
}

void check_rosenhains(const RosenhainTuple& t, long prec) {
    const double tol = -static_cast<double>(prec) / 2;
    for (int i = 0; i < 5; ++i) {
        if (log2_abs(t[i]) < tol || log2_abs(t[i] - Complex(1L)) < tol)
            throw DegenerateTheta("Rosenhain invariant collides with 0 or 1");
        for (int j = i + 1; j < 5; ++j)
            if (log2_abs(t[i] - t[j]) < tol) throw DegenerateTheta("Rosenhain invariants not distinct");
    }
}

}  // namespace

int char_omega(int x, int y) {
    return (popcount(static_cast<unsigned>(a_bits(x) & b_bits(y))) + popcount(static_cast<unsigned>(b_bits(x) & a_bits(y)))) % 2;
}

int weil_pairing_e2(int x, int y) { return char_omega(x, y) ? -1 : 1; }

int weil_pairing_e2(const CharVec& x, const CharVec& y) {
    // 4 x^T J y = 4 (x1.y2 - x2.y1), an integer for half-integral x, y
    Rat s = 0;
    for (int i = 0; i < 3; ++i) s += x[i] * y[3 + i] - x[3 + i] * y[i];
    Rat t = 4 * s;
    if (t.get_den() != 1) throw std::invalid_argument("weil_pairing_e2: not half-integral");
    Int r = t.get_num() % 2;
    return r != 0 ? -1 : 1;
}

std::vector<int> AzygeticSystem::U_set() const {
    std::vector<int> u;
    for (int i = 0; i < 8; ++i)
        if (char_is_even(eta[i])) u.push_back(i + 1);
    return u;
}

int AzygeticSystem::vanishing() const { return char_xor(*this, U_set()); }

bool is_azygetic(const AzygeticSystem& e) {
    if (e.eta[7] != 0) return false;
    int s = 0;
    for (int i = 0; i < 7; ++i) s ^= e.eta[i];
    if (s != 0) return false;
    for (int i = 0; i < 7; ++i)
        for (int j = i + 1; j < 7; ++j)
            if (weil_pairing_e2(e.eta[i], e.eta[j]) != -1) return false;
    // rank over F_2
    std::vector<int> basis;
    for (int v : e.eta) {
        for (int b : basis) v = std::min(v, v ^ b);
        if (v) basis.push_back(v);
    }
    return basis.size() == 6;
}

AzygeticSystem standard_azygetic() {
    // Branch-point path characteristics of the classical picture (a_i = e_k / 2 for the cycles
    // around consecutive branch points): eta_{2k-1} = (e_k/2, e_1+...+e_{k-1} /2),
    // eta_{2k} = (e_k/2, e_1+...+e_k /2), eta_7 = (0, (1,1,1)/2), eta_8 = 0.
    return AzygeticSystem{{32 + 0, 32 + 4, 16 + 4, 16 + 6, 8 + 6, 8 + 7, 7, 0}};
}

AzygeticSystem transport_azygetic(int target) {
    if (!char_is_even(target)) throw std::invalid_argument("transport_azygetic: odd target");
    static std::map<int, AzygeticSystem> table;
    static std::once_flag once;
    std::call_once(once, [] {
        std::map<std::array<int, 8>, bool> seen;
        std::deque<AzygeticSystem> q{standard_azygetic()};
        seen[q.front().eta] = true;
        while (!q.empty() && table.size() < 36) {
            AzygeticSystem e = q.front();
            q.pop_front();
            table.emplace(e.vanishing(), e);
            for (int v = 1; v < 64; ++v) {
                AzygeticSystem n = transvect(e, v);
                if (seen.emplace(n.eta, true).second) q.push_back(n);
            }
        }
    });
    auto it = table.find(target);
    if (it == table.end()) throw std::logic_error("transport_azygetic: unreachable target");
    return it->second;
}

AzygeticSystem relabel(const AzygeticSystem& e, const std::array<int, 8>& p) {
    AzygeticSystem r;
    for (int i = 0; i < 8; ++i) r.eta[i] = e.eta[p[i]] ^ e.eta[p[7]];
    return r;
}

AzygeticSystem linear_transport(const IMat& m, const AzygeticSystem& e) {
    IMat mi = inverse_mod2(m).transpose();
    AzygeticSystem r;
    for (int i = 0; i < 8; ++i) r.eta[i] = apply_mod2(mi, e.eta[i]);
    return r;
}

TakaseTerm takase_term(const AzygeticSystem& e, int l, int decomposition) {
    if (l < 1 || l > 5) throw std::invalid_argument("takase_term: l outside 1..5");
    if (decomposition < 0 || decomposition >= kDecompositions) throw std::invalid_argument("takase_term: decomposition");
    std::vector<int> rest;
    for (int i = 3; i <= 7; ++i)
        if (i != l + 2) rest.push_back(i);
    std::vector<int> V{rest[0], rest[1 + decomposition]}, W;
    for (int i : rest)
        if (std::find(V.begin(), V.end(), i) == V.end()) W.push_back(i);
    const std::vector<int> U = e.U_set();
    auto with = [](std::vector<int> s, int x, int y) {
        s.push_back(x);
        s.push_back(y);
        return s;
    };
    TakaseTerm t;
    t.chars[0] = char_sum(e, sym_diff(U, with(V, 1, l + 2)));
    t.chars[1] = char_sum(e, sym_diff(U, with(W, 1, l + 2)));
    t.chars[2] = char_sum(e, sym_diff(U, with(V, 1, 2)));
    t.chars[3] = char_sum(e, sym_diff(U, with(W, 1, 2)));
    const int x = a_bits(e.eta[0]) & (b_bits(e.eta[1]) ^ b_bits(e.eta[l + 1]));
    t.sign = popcount(static_cast<unsigned>(x)) % 2 ? -1 : 1;
    return t;
}

namespace {

Complex squared_quotient(const ThetaConstants& t, const std::array<CharVec, 4>& c, long prec) {
    Complex n1 = theta_at(t, c[0]), n2 = theta_at(t, c[1]), d1 = theta_at(t, c[2]), d2 = theta_at(t, c[3]);
    const double tol = -static_cast<double>(prec) / 2;
    if (log2_abs(d1) < tol || log2_abs(d2) < tol) throw DegenerateTheta("vanishing theta constant in a denominator");
    Complex q = (n1 * n2) / (d1 * d2);
    return q * q;
}

template <class F>
RosenhainTuple with_fallback(int decomposition, long prec, F&& f) {
    if (decomposition >= 0) {
        RosenhainTuple r;
        for (int l = 1; l <= 5; ++l) r[l - 1] = f(l, decomposition);
        check_rosenhains(r, prec);
        return r;
    }
    RosenhainTuple r;
    for (int l = 1; l <= 5; ++l) {
        bool done = false;
        for (int d = 0; d < kDecompositions && !done; ++d) {
            try {
                r[l - 1] = f(l, d);
                done = true;
            } catch (const DegenerateTheta&) {
                if (d + 1 == kDecompositions) throw;
            }
        }
    }
    check_rosenhains(r, prec);
    return r;
}

}  // namespace

RosenhainTuple takase_rosenhain(const ThetaConstants& t, const AzygeticSystem& e, long prec, int decomposition) {
    PrecScope ps(t.values[0].re.prec());
    return with_fallback(decomposition, prec, [&](int l, int d) {
        TakaseTerm tt = takase_term(e, l, d);
        Complex q = squared_quotient(t, tt.chars, prec);
        return tt.sign < 0 ? -q : q;
    });
}

namespace {

// c' = Ut^T (c - delta0(Ut)/2), the characteristics at Z' that pull back to c under Ut
std::array<CharVec, 4> acted_chars(const IMat& ut, const TakaseTerm& tt) {
    IMat A = ut.block(0, 0, 3, 3), B = ut.block(0, 3, 3, 3), C = ut.block(3, 0, 3, 3), D = ut.block(3, 3, 3, 3);
    IMat cd = C * D.transpose(), ab = A * B.transpose();
    std::array<CharVec, 4> cp;
    for (int j = 0; j < 4; ++j) {
        cp[j].assign(6, Rat(0));
        for (int i = 0; i < 6; ++i)
            for (int k = 0; k < 6; ++k) {
                Rat d0k = Rat(k < 3 ? cd(k, k) : ab(k - 3, k - 3)) / 2;
                cp[j][i] += Rat(ut(k, i)) * (tt.chars[j][k] - d0k);
            }
    }
    return cp;
}

Rat phase_of(const IMat& ut, const std::array<CharVec, 4>& cp) {
    Rat r = 0;
    for (int j = 0; j < 4; ++j) {
        Rat ph = phi_coefficient(ut, cp[j]);
        r += j < 2 ? ph : -ph;
    }
    // zeta4 = exp(2 (phi1 + phi2 - phi3 - phi4)) = exp(pi i 2r), reduced into [0, 2)
    Rat z = 2 * r;
    Int den = z.get_den();
    if (den != 1 && den != 2) throw PhaseError("conjugate_phase: zeta4 is not a fourth root of unity");
    Int fl;
    mpz_fdiv_q(fl.get_mpz_t(), z.get_num().get_mpz_t(), Int(2 * den).get_mpz_t());
    return z - Rat(2 * fl);
}

}  // namespace

Rat conjugate_phase(const IMat& ut, const AzygeticSystem& e, int l, int decomposition) {
    return phase_of(ut, acted_chars(ut, takase_term(e, l, decomposition)));
}

RosenhainTuple conjugate_rosenhains(const ThetaConstants& tp, const IMat& ut, const AzygeticSystem& e, long prec,
                                    int decomposition) {
    PrecScope ps(tp.values[0].re.prec());
    if (ut.transpose() * symplectic_J<Int>(3) * ut != symplectic_J<Int>(3))
        throw std::invalid_argument("conjugate_rosenhains: lift is not symplectic");
    return with_fallback(decomposition, prec, [&](int l, int d) {
        TakaseTerm tt = takase_term(e, l, d);
        std::array<CharVec, 4> cp = acted_chars(ut, tt);
        Complex q = squared_quotient(tp, cp, prec) * expi_pi(phase_of(ut, cp));
        return tt.sign < 0 ? -q : q;
    });
}

std::vector<Complex> curve_from_rosenhains(const RosenhainTuple& t) {
    std::vector<Complex> p{Complex(0L), Complex(1L)};  // x
    auto mul_linear = [&](const Complex& root) {
        std::vector<Complex> r(p.size() + 1);
        for (size_t i = 0; i < p.size(); ++i) {
            r[i + 1] += p[i];
            r[i] -= p[i] * root;
        }
        p = std::move(r);
    };
    mul_linear(Complex(1L));
    for (const auto& l : t) mul_linear(l);
    return p;
}

QMat canonical_2adic_lattice(const Lattice& ideal) {
    const int n = static_cast<int>(ideal.size());
    Int d = 1;
    for (const auto& v : ideal)
        for (const auto& q : v) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), q.get_den().get_mpz_t());
    IMat a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = Rat(ideal[i][j] * Rat(d)).get_num();
    const long t = static_cast<long>(mpz_scan1(d.get_mpz_t(), 0));
    Int det = abs(determinant(a));
    if (det == 0) throw std::invalid_argument("canonical_2adic_lattice: degenerate lattice");
    const long v = static_cast<long>(mpz_scan1(det.get_mpz_t(), 0));
    IMat big(2 * n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) big(i, j) = a(i, j);
    Int pv;
    mpz_ui_pow_ui(pv.get_mpz_t(), 2, static_cast<unsigned long>(v));
    for (int i = 0; i < n; ++i) big(n + i, i) = pv;
    IMat h = hnf(big);
    Int pt;
    mpz_ui_pow_ui(pt.get_mpz_t(), 2, static_cast<unsigned long>(t));
    QMat l(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) l(i, j) = Rat(h(i, j), pt);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) l(i, j).canonicalize();
    return l;
}

IMat symplectic_frame_mod2(const QMat& l, const FieldElement& xi, const NumberField& f) {
    const int n = l.rows();
    std::vector<FieldElement> lb(n);
    for (int i = 0; i < n; ++i) {
        lb[i].resize(n);
        for (int j = 0; j < n; ++j) lb[i][j] = l(i, j);
    }
    std::vector<std::vector<int>> em(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            em[i][j] = rat_mod2(nf_trace(nf_mul(xi, nf_mul(nf_conj(lb[i], f), lb[j], f), f), f));
    // bit vectors over the L-basis, bit i = coordinate i
    auto form = [&](unsigned x, unsigned y) {
        int s = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) s ^= ((x >> i) & 1) & ((y >> j) & 1) & em[i][j];
        return s;
    };
    std::vector<unsigned> w;
    for (int i = 0; i < n; ++i) w.push_back(1u << i);
    std::vector<unsigned> es, fs;
    while (!w.empty()) {
        unsigned v = w[0], u2 = 0;
        for (size_t j = 1; j < w.size() && !u2; ++j)
            if (form(v, w[j])) u2 = w[j];
        if (!u2) throw std::invalid_argument("symplectic_frame_mod2: degenerate form mod 2");
        es.push_back(v);
        fs.push_back(u2);
        std::vector<unsigned> next, echelon;
        for (unsigned u : w) {
            unsigned p = u ^ (form(u, u2) ? v : 0u) ^ (form(u, v) ? u2 : 0u);
            unsigned r = p;
            for (unsigned b : echelon) r = std::min(r, r ^ b);
            if (r) {
                echelon.push_back(r);
                std::sort(echelon.rbegin(), echelon.rend());
                next.push_back(p);
            }
        }
        w = next;
    }
    const int g = n / 2;
    IMat fr(n, n);
    for (int k = 0; k < g; ++k)
        for (int i = 0; i < n; ++i) {
            fr(i, k) = (es[k] >> i) & 1;
            fr(i, g + k) = (fs[k] >> i) & 1;
        }
    return fr;
}

IMat frame_relation(const QMat& l, const IMat& frame, const Lattice& c) {
    const int n = l.rows();
    QMat cc(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) cc(i, j) = c[j][i];
    QMat x = inverse(l.transpose()) * cc;
    IMat xm(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) xm(i, j) = rat_mod2(x(i, j));
    IMat rt = mul_mod2(inverse_mod2(frame), xm);
    IMat r = rt.transpose();
    if (!is_symplectic_mod2(r)) throw std::logic_error("frame_relation: relation is not symplectic mod 2");
    return r;
}

AzygeticSystem marking_from_frame(const std::array<int, 8>& eta_frame, const IMat& r) {
    AzygeticSystem e = linear_transport(r, AzygeticSystem{eta_frame});
    if (!is_azygetic(e)) throw std::logic_error("marking_from_frame: result is not azygetic");
    return e;
}

}  // namespace cmpoly
