#pragma once

#include <mpfr.h>
#include <gmpxx.h>

#include <string>
#include <utility>

namespace cmpoly {

using Int = mpz_class;
using Rat = mpq_class;

// Working precision in bits for newly created Real values on this thread.
long working_prec();
void set_working_prec(long bits);

class PrecScope {
public:
    explicit PrecScope(long bits) : saved_(working_prec()) { set_working_prec(bits); }
    ~PrecScope() { set_working_prec(saved_); }
    PrecScope(const PrecScope&) = delete;
    PrecScope& operator=(const PrecScope&) = delete;
private:
    long saved_;
};

class Real {
public:
    Real() { mpfr_init2(v_, working_prec()); mpfr_set_zero(v_, 1); }
    Real(long x) { mpfr_init2(v_, working_prec()); mpfr_set_si(v_, x, MPFR_RNDN); }
    Real(int x) : Real(static_cast<long>(x)) {}
    Real(double x) { mpfr_init2(v_, working_prec()); mpfr_set_d(v_, x, MPFR_RNDN); }
    Real(const Int& x) { mpfr_init2(v_, working_prec()); mpfr_set_z(v_, x.get_mpz_t(), MPFR_RNDN); }
    Real(const Rat& x) { mpfr_init2(v_, working_prec()); mpfr_set_q(v_, x.get_mpq_t(), MPFR_RNDN); }
    explicit Real(const std::string& s);
    Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real(Real&& o) noexcept { mpfr_init2(v_, MPFR_PREC_MIN); mpfr_swap(v_, o.v_); }
    ~Real() { mpfr_clear(v_); }

    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    long prec() const { return mpfr_get_prec(v_); }
    void set_prec_keep(long bits) { mpfr_prec_round(v_, bits, MPFR_RNDN); }

    Real& operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator-=(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator/=(const Real& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }

    bool is_zero() const { return mpfr_zero_p(v_); }
    int sign() const { return mpfr_sgn(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long exponent() const { return is_zero() ? -(1L << 40) : mpfr_get_exp(v_); }
    Int round_to_int() const;
    std::string to_string(int digits = 0) const;

private:
    mpfr_t v_;
};

Real operator+(const Real& a, const Real& b);
Real operator-(const Real& a, const Real& b);
Real operator*(const Real& a, const Real& b);
Real operator/(const Real& a, const Real& b);
Real operator-(const Real& a);
bool operator<(const Real& a, const Real& b);
bool operator>(const Real& a, const Real& b);
bool operator<=(const Real& a, const Real& b);
bool operator>=(const Real& a, const Real& b);

Real abs(const Real& a);
Real sqrt(const Real& a);
Real exp(const Real& a);
Real log(const Real& a);
Real sin(const Real& a);
Real cos(const Real& a);
Real atan2(const Real& y, const Real& x);
Real pi();
Real ldexp(const Real& a, long e);
// 2^e as a Real
Real pow2(long e);
// log2|a|, or a very negative number for a == 0
double log2_abs(const Real& a);

class Complex {
public:
    Real re, im;
    Complex() = default;
    Complex(const Real& r) : re(r), im(0L) {}
    Complex(long r) : re(r), im(0L) {}
    Complex(int r) : re(static_cast<long>(r)), im(0L) {}
    Complex(const Rat& r) : re(r), im(0L) {}
    Complex(const Int& r) : re(r), im(0L) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

    Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
    Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
    Complex& operator*=(const Complex& o);
    Complex& operator/=(const Complex& o);
    Complex conj() const { return Complex(re, -im); }
    Real norm2() const { return re * re + im * im; }
};

Complex operator+(const Complex& a, const Complex& b);
Complex operator-(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Complex& b);
Complex operator/(const Complex& a, const Complex& b);
Complex operator-(const Complex& a);
Complex operator*(const Complex& a, const Real& b);

// dst = a * b without allocating temporaries; dst may alias neither a nor b.
void mul_into(Complex& dst, const Complex& a, const Complex& b, Real& t1, Real& t2);

Real abs(const Complex& a);
Real arg(const Complex& a);
Complex exp(const Complex& a);
Complex sqrt(const Complex& a);
Complex log(const Complex& a);
Complex expi_pi(const Rat& q);  // exp(pi i q)
Complex polar(const Real& r, const Real& theta);
double log2_abs(const Complex& a);

std::string to_string(const Complex& z, int digits = 0);

}  // namespace cmpoly
