#pragma once

// Multiprecision real and complex numbers on top of MPFR.

#include "lrsz/bigint.hpp"

#include <mpfr.h>

#include <cmath>
#include <span>
#include <string>
#include <utility>

namespace lrsz {

/// Decimal digits -> MPFR bits, with a guard margin.
inline mpfr_prec_t bits_for_digits(long digits) {
    return static_cast<mpfr_prec_t>(std::ceil(static_cast<double>(digits) * 3.3219280948873623)) + 64;
}

class Real {
public:
    explicit Real(mpfr_prec_t bits = 256) { mpfr_init2(v_, bits); mpfr_set_zero(v_, 1); }
    Real(long x, mpfr_prec_t bits) : Real(bits) { mpfr_set_si(v_, x, MPFR_RNDN); }
    Real(const BigRational& q, mpfr_prec_t bits) : Real(bits) { mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN); }
    Real(const Real& o) : Real(mpfr_get_prec(o.v_)) { mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real(Real&& o) noexcept : Real(mpfr_get_prec(o.v_)) { mpfr_swap(v_, o.v_); }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    mpfr_prec_t bits() const { return mpfr_get_prec(v_); }
    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }

    /// log10|x|; -infinity for zero.
    double log10_abs() const {
        if (is_zero()) return -INFINITY;
        long e = 0;
        const double m = mpfr_get_d_2exp(&e, v_, MPFR_RNDN);
        return std::log10(std::fabs(m)) + static_cast<double>(e) * 0.30102999566398120;
    }

    /// Scientific notation with `digits` significant digits.
    std::string to_string(int digits = 20) const {
        if (is_zero()) return "0";
        char* s = nullptr;
        mpfr_asprintf(&s, ("%." + std::to_string(digits - 1) + "Re").c_str(), v_);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }

#define LRSZ_REAL_BINOP(op, fn)                                        \
    friend Real operator op(const Real& a, const Real& b) {            \
        Real r(std::max(a.bits(), b.bits()));                          \
        fn(r.v_, a.v_, b.v_, MPFR_RNDN);                               \
        return r;                                                      \
    }
    LRSZ_REAL_BINOP(+, mpfr_add)
    LRSZ_REAL_BINOP(-, mpfr_sub)
    LRSZ_REAL_BINOP(*, mpfr_mul)
    LRSZ_REAL_BINOP(/, mpfr_div)
#undef LRSZ_REAL_BINOP

    friend Real operator-(const Real& a) {
        Real r(a.bits());
        mpfr_neg(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    Real& operator+=(const Real& b) { return *this = *this + b; }
    Real& operator-=(const Real& b) { return *this = *this - b; }
    Real& operator*=(const Real& b) { return *this = *this * b; }

    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator>(const Real& a, const Real& b) { return b < a; }

    friend Real abs(const Real& a) { return unary(a, mpfr_abs); }
    friend Real sqrt(const Real& a) { return unary(a, mpfr_sqrt); }
    friend Real cbrt(const Real& a) { return unary(a, mpfr_cbrt); }
    friend Real cos(const Real& a) { return unary(a, mpfr_cos); }
    friend Real sin(const Real& a) { return unary(a, mpfr_sin); }
    friend Real atan2(const Real& y, const Real& x) {
        Real r(std::max(y.bits(), x.bits()));
        mpfr_atan2(r.v_, y.v_, x.v_, MPFR_RNDN);
        return r;
    }

    /// 10^e at the given precision.
    static Real power_of_ten(long e, mpfr_prec_t bits) {
        Real r(bits);
        mpfr_ui_pow_ui(r.v_, 10, static_cast<unsigned long>(std::labs(e)), MPFR_RNDN);
        if (e < 0) mpfr_ui_div(r.v_, 1, r.v_, MPFR_RNDN);
        return r;
    }

private:
    template <class F>
    static Real unary(const Real& a, F f) {
        Real r(a.bits());
        f(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

    mpfr_t v_;
};

struct Complex {
    Real re;
    Real im;

    explicit Complex(mpfr_prec_t bits = 256) : re(bits), im(bits) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

    mpfr_prec_t bits() const { return re.bits(); }

    friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
    friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
    friend Complex operator*(const Complex& a, const Complex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Complex operator*(const Real& s, const Complex& a) { return {s * a.re, s * a.im}; }
    friend Complex operator/(const Complex& a, const Complex& b) {
        const Real d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }

    Complex conj() const { return {re, -im}; }
    Real norm() const { return re * re + im * im; }
    Real abs() const { return sqrt(norm()); }
    Real arg() const { return atan2(im, re); }

    static Complex from_real(const Real& r) { return {r, Real(r.bits())}; }
    static Complex from_integer(long v, mpfr_prec_t bits) { return {Real(v, bits), Real(bits)}; }
    static Complex polar(const Real& rho, const Real& phi) { return {rho * cos(phi), rho * sin(phi)}; }

    /// z^n for any integer n (z != 0 when n < 0).
    Complex pow(long n) const {
        Complex base = n >= 0 ? *this : from_integer(1, bits()) / *this;
        unsigned long e = static_cast<unsigned long>(n >= 0 ? n : -n);
        Complex r = from_integer(1, bits());
        while (e) {
            if (e & 1U) r = r * base;
            e >>= 1U;
            if (e) base = base * base;
        }
        return r;
    }

    /// Principal cube root (argument in (-pi/3, pi/3]).
    Complex principal_cbrt() const { return polar(cbrt(abs()), arg() / Real(3, bits())); }
};

/// Evaluates an integer polynomial at a complex point (Horner).
inline Complex evaluate(std::span<const BigInt> coeffs, const Complex& z) {
    Complex acc(z.bits());
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
        acc = acc * z + Complex::from_real(Real(BigRational(*it), z.bits()));
    return acc;
}

}  // namespace lrsz
