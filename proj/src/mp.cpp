#include "cmpoly/mp.hpp"

#include <cmath>
#include <stdexcept>

namespace cmpoly {

namespace {
thread_local long g_prec = 128;
}

long working_prec() { return g_prec; }
void set_working_prec(long bits) {
    if (bits < MPFR_PREC_MIN) bits = MPFR_PREC_MIN;
    g_prec = bits;
}

Real::Real(const std::string& s) {
    mpfr_init2(v_, working_prec());
    if (mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) != 0)
        throw std::invalid_argument("not a decimal number: " + s);
}

Int Real::round_to_int() const {
    Int r;
    mpfr_get_z(r.get_mpz_t(), v_, MPFR_RNDN);
    return r;
}

std::string Real::to_string(int digits) const {
    if (digits <= 0) digits = static_cast<int>(prec() * 0.30103) + 1;
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rg", digits, v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

Real operator+(const Real& a, const Real& b) { Real r; mpfr_add(r.get(), a.get(), b.get(), MPFR_RNDN); return r; }
Real operator-(const Real& a, const Real& b) { Real r; mpfr_sub(r.get(), a.get(), b.get(), MPFR_RNDN); return r; }
Real operator*(const Real& a, const Real& b) { Real r; mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDN); return r; }
Real operator/(const Real& a, const Real& b) { Real r; mpfr_div(r.get(), a.get(), b.get(), MPFR_RNDN); return r; }
Real operator-(const Real& a) { Real r; mpfr_neg(r.get(), a.get(), MPFR_RNDN); return r; }
bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.get(), b.get()); }
bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.get(), b.get()); }
bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.get(), b.get()); }
bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.get(), b.get()); }

Real abs(const Real& a) { Real r; mpfr_abs(r.get(), a.get(), MPFR_RNDN); return r; }
Real sqrt(const Real& a) { Real r; mpfr_sqrt(r.get(), a.get(), MPFR_RNDN); return r; }
Real exp(const Real& a) { Real r; mpfr_exp(r.get(), a.get(), MPFR_RNDN); return r; }
Real log(const Real& a) { Real r; mpfr_log(r.get(), a.get(), MPFR_RNDN); return r; }
Real sin(const Real& a) { Real r; mpfr_sin(r.get(), a.get(), MPFR_RNDN); return r; }
Real cos(const Real& a) { Real r; mpfr_cos(r.get(), a.get(), MPFR_RNDN); return r; }
Real atan2(const Real& y, const Real& x) { Real r; mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN); return r; }
Real pi() { Real r; mpfr_const_pi(r.get(), MPFR_RNDN); return r; }
Real ldexp(const Real& a, long e) { Real r; mpfr_mul_2si(r.get(), a.get(), e, MPFR_RNDN); return r; }
Real pow2(long e) { Real r(1L); mpfr_mul_2si(r.get(), r.get(), e, MPFR_RNDN); return r; }

double log2_abs(const Real& a) {
    if (a.is_zero()) return -1e18;
    long e;
    double m = mpfr_get_d_2exp(&e, a.get(), MPFR_RNDN);
    return std::log2(std::fabs(m)) + static_cast<double>(e);
}

Complex& Complex::operator*=(const Complex& o) {
    Real r = re * o.re - im * o.im;
    Real i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

Complex& Complex::operator/=(const Complex& o) {
    *this = *this / o;
    return *this;
}

Complex operator+(const Complex& a, const Complex& b) { return Complex(a.re + b.re, a.im + b.im); }
Complex operator-(const Complex& a, const Complex& b) { return Complex(a.re - b.re, a.im - b.im); }
Complex operator*(const Complex& a, const Complex& b) {
    return Complex(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
}
Complex operator/(const Complex& a, const Complex& b) {
    Real d = b.norm2();
    if (d.is_zero()) throw std::domain_error("complex division by zero");
    return Complex((a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d);
}
Complex operator-(const Complex& a) { return Complex(-a.re, -a.im); }
Complex operator*(const Complex& a, const Real& b) { return Complex(a.re * b, a.im * b); }

void mul_into(Complex& dst, const Complex& a, const Complex& b, Real& t1, Real& t2) {
    mpfr_mul(t1.get(), a.re.get(), b.re.get(), MPFR_RNDN);
    mpfr_mul(t2.get(), a.im.get(), b.im.get(), MPFR_RNDN);
    mpfr_sub(dst.re.get(), t1.get(), t2.get(), MPFR_RNDN);
    mpfr_mul(t1.get(), a.re.get(), b.im.get(), MPFR_RNDN);
    mpfr_mul(t2.get(), a.im.get(), b.re.get(), MPFR_RNDN);
    mpfr_add(dst.im.get(), t1.get(), t2.get(), MPFR_RNDN);
}

Real abs(const Complex& a) { Real r; mpfr_hypot(r.get(), a.re.get(), a.im.get(), MPFR_RNDN); return r; }
Real arg(const Complex& a) { return atan2(a.im, a.re); }

Complex exp(const Complex& a) {
    Real m = exp(a.re);
    Real s, c;
    mpfr_sin_cos(s.get(), c.get(), a.im.get(), MPFR_RNDN);
    return Complex(m * c, m * s);
}

Complex polar(const Real& r, const Real& theta) {
    Real s, c;
    mpfr_sin_cos(s.get(), c.get(), theta.get(), MPFR_RNDN);
    return Complex(r * c, r * s);
}

Complex sqrt(const Complex& a) {
    // principal branch, cut along the negative real axis
    Real m = abs(a);
    if (m.is_zero()) return Complex();
    Real h = pow2(-1);
    Real x = sqrt((m + a.re) * h);
    Real y = sqrt((m - a.re) * h);
    if (a.im.sign() < 0) y = -y;
    return Complex(x, y);
}

Complex log(const Complex& a) { return Complex(log(abs(a)), arg(a)); }

Complex expi_pi(const Rat& q) {
    // reduce q mod 2 exactly before evaluating, so multiples of 1/2 come out exact
    Rat r = q;
    Int num = r.get_num(), den = r.get_den();
    Int twod = 2 * den;
    Int m = num % twod;
    if (m < 0) m += twod;
    r = Rat(m, den);
    r.canonicalize();
    if (r == 0) return Complex(1L);
    if (r == 1) return Complex(-1L);
    if (r == Rat(1, 2)) return Complex(Real(0L), Real(1L));
    if (r == Rat(3, 2)) return Complex(Real(0L), Real(-1L));
    return polar(Real(1L), pi() * Real(r));
}

double log2_abs(const Complex& a) {
    double x = log2_abs(a.re), y = log2_abs(a.im);
    double m = std::max(x, y);
    if (m < -1e17) return m;
    return m + 0.5 * std::log2(std::exp2(2 * (x - m)) + std::exp2(2 * (y - m)));
}

std::string to_string(const Complex& z, int digits) {
    return z.re.to_string(digits) + (z.im.sign() < 0 ? " - " : " + ") + abs(z.im).to_string(digits) + "*I";
}

}  // namespace cmpoly
