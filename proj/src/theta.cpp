#include "cmpoly/theta.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace cmpoly {

namespace {

constexpr int kG = 3;
constexpr long kGuard = 40;

int popcount(unsigned x) { return __builtin_popcount(x); }

// smallest eigenvalue of a symmetric 3x3 matrix in double precision (cyclic Jacobi)
double min_eigenvalue(double a[3][3]) {
    double m[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] = a[i][j];
    for (int sweep = 0; sweep < 50; ++sweep) {
        double off = std::fabs(m[0][1]) + std::fabs(m[0][2]) + std::fabs(m[1][2]);
        if (off < 1e-300) break;
        for (int p = 0; p < 3; ++p)
            for (int q = p + 1; q < 3; ++q) {
                if (std::fabs(m[p][q]) < 1e-300) continue;
                double th = (m[q][q] - m[p][p]) / (2 * m[p][q]);
                double t = (th >= 0 ? 1 : -1) / (std::fabs(th) + std::sqrt(th * th + 1));
                double c = 1 / std::sqrt(t * t + 1), s = t * c;
                for (int k = 0; k < 3; ++k) {
                    double kp = m[k][p], kq = m[k][q];
                    m[k][p] = c * kp - s * kq;
                    m[k][q] = s * kp + c * kq;
                }
                for (int k = 0; k < 3; ++k) {
                    double pk = m[p][k], qk = m[q][k];
                    m[p][k] = c * pk - s * qk;
                    m[q][k] = s * pk + c * qk;
                }
            }
    }
    return std::min({m[0][0], m[1][1], m[2][2]});
}

// verified lower bound for lambda_min(Y): Cholesky of Y - lam I succeeds
bool cholesky_ok(const RMat& y, const Real& lam) {
    RMat l(3, 3);
    for (int j = 0; j < 3; ++j) {
        Real s = y(j, j) - lam;
        for (int k = 0; k < j; ++k) s -= l(j, k) * l(j, k);
        if (s.sign() <= 0) return false;
        l(j, j) = sqrt(s);
        for (int i = j + 1; i < 3; ++i) {
            Real t = y(i, j);
            for (int k = 0; k < j; ++k) t -= l(i, k) * l(j, k);
            l(i, j) = t / l(j, j);
        }
    }
    return true;
}

struct ClassSums {
    std::array<Complex, 8> s;  // indexed by the parity vector p of n = m - a/2
    long terms = 0;
};

// exp(pi i w)
Complex exp_pi_i(const Complex& w) {
    Real p = pi();
    return exp(Complex(-(w.im * p), w.re * p));
}

ClassSums sum_class(const CMat& z, const double yd[3][3], double bound, int a, long wp) {
    PrecScope ps(wp);
    ClassSums out;
    const double half[3] = {((a >> 2) & 1) * 0.5, ((a >> 1) & 1) * 0.5, (a & 1) * 0.5};
    // inverse of Y for the box
    double det = yd[0][0] * (yd[1][1] * yd[2][2] - yd[1][2] * yd[2][1]) -
                 yd[0][1] * (yd[1][0] * yd[2][2] - yd[1][2] * yd[2][0]) +
                 yd[0][2] * (yd[1][0] * yd[2][1] - yd[1][1] * yd[2][0]);
    double inv22 = (yd[0][0] * yd[2][2] - yd[0][2] * yd[2][0]) / det;
    double inv33 = (yd[0][0] * yd[1][1] - yd[0][1] * yd[1][0]) / det;
    const long r2 = static_cast<long>(std::sqrt(bound * inv22)) + 2;
    const long r3 = static_cast<long>(std::sqrt(bound * inv33)) + 2;

    Complex q2 = exp_pi_i(z(0, 0) * Real(2L));  // exp(2 pi i Z11)
    Complex term, ratio, tmp;
    Real t1, t2;
    for (long n3 = -r3; n3 <= r3; ++n3) {
        const double m3 = n3 + half[2];
        for (long n2 = -r2; n2 <= r2; ++n2) {
            const double m2 = n2 + half[1];
            const double l = yd[0][1] * m2 + yd[0][2] * m3;
            const double r = yd[1][1] * m2 * m2 + 2 * yd[1][2] * m2 * m3 + yd[2][2] * m3 * m3;
            const double inside = (bound - r) / yd[0][0] + (l / yd[0][0]) * (l / yd[0][0]);
            if (inside < 0) continue;
            const double c = -l / yd[0][0], rad = std::sqrt(inside) + 1e-9;
            const long lo = static_cast<long>(std::ceil(c - rad - half[0]));
            const long hi = static_cast<long>(std::floor(c + rad - half[0]));
            if (lo > hi) continue;
            Real M2(Rat(2 * n2 + ((a >> 1) & 1), 2)), M3(Rat(2 * n3 + (a & 1), 2));
            Real M1(Rat(2 * lo + ((a >> 2) & 1), 2));
            Complex L = z(0, 1) * M2 + z(0, 2) * M3;
            Complex rest = z(1, 1) * (M2 * M2) + z(1, 2) * (Real(2L) * M2 * M3) + z(2, 2) * (M3 * M3);
            term = exp_pi_i(z(0, 0) * (M1 * M1) + L * (Real(2L) * M1) + rest);
            ratio = exp_pi_i(z(0, 0) * (Real(2L) * M1 + Real(1L)) + L * Real(2L));
            const int p23 = ((static_cast<int>(((n2 % 2) + 2) % 2)) << 1) | static_cast<int>(((n3 % 2) + 2) % 2);
            for (long n1 = lo; n1 <= hi; ++n1) {
                const int p = (static_cast<int>(((n1 % 2) + 2) % 2) << 2) | p23;
                out.s[p] += term;
                mul_into(tmp, term, ratio, t1, t2);
                std::swap(term, tmp);
                mul_into(tmp, ratio, q2, t1, t2);
                std::swap(ratio, tmp);
                ++out.terms;
            }
        }
    }
    return out;
}

}  // namespace

bool char_is_even(int k) { return popcount(static_cast<unsigned>((k >> 3) & (k & 7))) % 2 == 0; }

std::vector<int> even_characteristics() {
    std::vector<int> v;
    for (int k = 0; k < 64; ++k)
        if (char_is_even(k)) v.push_back(k);
    return v;
}

CharVec char_vector(int k) {
    CharVec c(2 * kG);
    for (int i = 0; i < 2 * kG; ++i) c[i] = ((k >> (2 * kG - 1 - i)) & 1) ? Rat(1, 2) : Rat(0);
    return c;
}

int char_index(const CharVec& c) {
    int k = 0;
    for (int i = 0; i < 2 * kG; ++i) {
        Rat t = c[i] * 2;
        if (t.get_den() != 1) throw std::invalid_argument("char_index: not a half-integral characteristic");
        Int r = t.get_num() % 2;
        k = 2 * k + (r != 0 ? 1 : 0);
    }
    return k;
}

int char_parity(const CharVec& c) {
    Rat s = 0;
    for (int i = 0; i < kG; ++i) s += c[i] * c[kG + i];
    Rat t = 4 * s;
    if (t.get_den() != 1) throw std::invalid_argument("char_parity: not half-integral");
    Int r = t.get_num() % 2;
    return r != 0 ? 1 : 0;
}

CharVec char_action(const IMat& m, const CharVec& c) {
    const int g = m.rows() / 2;
    const IMat J = symplectic_J<Int>(g);
    if (m.transpose() * J * m != J) throw std::invalid_argument("char_action: matrix is not symplectic");
    // (M^{-1})^T = J M J^{-1}
    IMat ms = J * m * (-J);
    IMat A = m.block(0, 0, g, g), B = m.block(0, g, g, g), C = m.block(g, 0, g, g), D = m.block(g, g, g, g);
    IMat cd = C * D.transpose(), ab = A * B.transpose();
    CharVec r(2 * g);
    for (int i = 0; i < 2 * g; ++i) {
        Rat s = 0;
        for (int j = 0; j < 2 * g; ++j) s += Rat(ms(i, j)) * c[j];
        s += Rat(i < g ? cd(i, i) : ab(i - g, i - g)) / 2;
        r[i] = s;
    }
    return r;
}

int char_action(const IMat& m, int k) { return char_index(char_action(m, char_vector(k))); }

Rat phi_coefficient(const IMat& m, const CharVec& c) {
    const int g = m.rows() / 2;
    QMat q = convert<Int, Rat>(m);
    QMat A = q.block(0, 0, g, g), B = q.block(0, g, g, g), C = q.block(g, 0, g, g), D = q.block(g, g, g, g);
    QMat x1(g, 1), x2(g, 1);
    for (int i = 0; i < g; ++i) {
        x1(i, 0) = c[i];
        x2(i, 0) = c[g + i];
    }
    QMat ab = A * B.transpose();
    QMat d(g, 1);
    for (int i = 0; i < g; ++i) d(i, 0) = ab(i, i);
    Rat s = (x1.transpose() * B.transpose() * D * x1)(0, 0) + (x2.transpose() * A.transpose() * C * x2)(0, 0) -
            Rat(2) * (x1.transpose() * B.transpose() * C * x2)(0, 0) - ((D * x1 - C * x2).transpose() * d)(0, 0);
    return -s;
}

Complex phi_phase(const IMat& m, const CharVec& c) { return expi_pi(phi_coefficient(m, c)); }

ThetaConstants theta_constants(const CMat& z, long prec, const ThetaOptions& opt) {
    if (z.rows() != kG || z.cols() != kG) throw std::invalid_argument("theta_constants: genus 3 only");
    const long wp = prec + kGuard;
    PrecScope ps(wp);
    RMat y(3, 3);
    double yd[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            y(i, j) = z(i, j).im;
            yd[i][j] = z(i, j).im.to_double();
        }
    double lam = 0.99 * min_eigenvalue(yd);
    while (lam > 0 && !cholesky_ok(y, Real(lam))) lam *= 0.5;
    if (!(lam > std::ldexp(1.0, -30))) throw PrecisionError("theta_constants: Im Z is not safely positive definite");
    // Tail: for q = m^T Y m > B, exp(-pi q) <= exp(-0.9 pi B) exp(-0.1 pi q); the last factor sums over
    // each coset of Z^3 to at most (1 + sqrt(10 / lam))^3.
    const double log_pref = 3 * std::log(1 + std::sqrt(10 / lam)) + std::log(2.0);
    const double target = (prec + kGuard / 2) * std::log(2.0);
    const double bound = (target + log_pref) / (0.9 * M_PI);
    double ydet = yd[0][0] * (yd[1][1] * yd[2][2] - yd[1][2] * yd[2][1]) -
                  yd[0][1] * (yd[1][0] * yd[2][2] - yd[1][2] * yd[2][0]) +
                  yd[0][2] * (yd[1][0] * yd[2][1] - yd[1][1] * yd[2][0]);
    const double est_terms = 8 * (4.0 / 3.0) * M_PI * std::pow(bound, 1.5) / std::sqrt(ydet);
    if (est_terms > 2e9) throw PrecisionError("theta_constants: truncation needs too many terms at this precision");

    ThetaConstants out;
    out.precision = prec;
    out.radius = bound;
    std::array<ClassSums, 8> sums;
    const int jobs = std::max(1, std::min(opt.jobs, 8));
    if (jobs == 1) {
        for (int a = 0; a < 8; ++a) sums[a] = sum_class(z, yd, bound, a, wp);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < jobs; ++w)
            pool.emplace_back([&, w] {
                for (int a = w; a < 8; a += jobs) sums[a] = sum_class(z, yd, bound, a, wp);
            });
        for (auto& t : pool) t.join();
    }
    for (int a = 0; a < 8; ++a) {
        out.terms += sums[a].terms;
        for (int b = 0; b < 8; ++b) {
            const int k = 8 * a + b;
            if (!char_is_even(k) && !opt.force_odd) {
                out.values[k] = Complex();
                continue;
            }
            Complex acc;
            for (int p = 0; p < 8; ++p) {
                if (popcount(static_cast<unsigned>(p & b)) % 2) acc -= sums[a].s[p];
                else acc += sums[a].s[p];
            }
            // exp(pi i a.b / 2) = i^(a.b)
            switch (popcount(static_cast<unsigned>(a & b)) % 4) {
                case 0: break;
                case 1: acc = Complex(-acc.im, acc.re); break;
                case 2: acc = -acc; break;
                case 3: acc = Complex(acc.im, -acc.re); break;
            }
            out.values[k] = acc;
        }
    }
    const double tail = (-0.9 * M_PI * bound + log_pref) / std::log(2.0);
    const double rounding = std::log2(static_cast<double>(std::max<long>(out.terms, 1))) + 4 - static_cast<double>(wp);
    out.log2_error = std::max(tail, rounding);
    return out;
}

Complex theta_at(const ThetaConstants& t, const CharVec& c) {
    CharVec red(c.size());
    Int sgn = 0;
    for (int i = 0; i < 2 * kG; ++i) {
        Rat twice = c[i] * 2;
        if (twice.get_den() != 1) throw std::invalid_argument("theta_at: not half-integral");
        Int fl;
        mpz_fdiv_q_ui(fl.get_mpz_t(), twice.get_num().get_mpz_t(), 2);  // floor(c_i)
        red[i] = c[i] - Rat(fl);
        if (i >= kG) sgn += Rat(red[i - kG] * 2).get_num() * fl;  // 2 a0 . n
    }
    Complex v = t.values[char_index(red)];
    if (sgn % 2 != 0) v = -v;
    return v;
}

Complex chi18(const ThetaConstants& t) {
    PrecScope ps(t.precision + kGuard);
    Complex p(1L);
    for (int k : even_characteristics()) p = p * t.values[k];
    return p;
}

Complex sigma140(const ThetaConstants& t) {
    PrecScope ps(t.precision + kGuard);
    auto ev = even_characteristics();
    std::vector<Complex> e8;
    for (int k : ev) {
        Complex x = t.values[k];
        Complex x2 = x * x, x4 = x2 * x2;
        e8.push_back(x4 * x4);
    }
    // prefix/suffix products avoid dividing by a vanishing value
    const size_t n = e8.size();
    std::vector<Complex> pre(n + 1), suf(n + 1);
    pre[0] = Complex(1L);
    suf[n] = Complex(1L);
    for (size_t i = 0; i < n; ++i) pre[i + 1] = pre[i] * e8[i];
    for (size_t i = n; i-- > 0;) suf[i] = suf[i + 1] * e8[i];
    Complex s;
    for (size_t i = 0; i < n; ++i) s += pre[i] * suf[i + 1];
    return s;
}

int find_vanishing(const ThetaConstants& t, long prec) {
    int zero = -1, small = 0;
    for (int k : even_characteristics()) {
        double l = log2_abs(t.values[k]);
        if (l < -static_cast<double>(prec) / 2) {
            if (zero >= 0) throw PrecisionError("find_vanishing: more than one vanishing even theta constant");
            zero = k;
        } else if (l < -static_cast<double>(prec) / 4) {
            ++small;
        }
    }
    if (small > 0) throw PrecisionError("find_vanishing: a theta constant lies in the ambiguous band");
    return zero;
}

}  // namespace cmpoly
