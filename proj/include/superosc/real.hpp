#pragma once

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "superosc/errors.hpp"

namespace superosc {

inline constexpr unsigned kMinBits = 53;
inline constexpr unsigned kHardMaxBits = 1u << 20;

inline unsigned clamp_bits(unsigned bits) {
    return std::min(std::max(bits, kMinBits), kHardMaxBits);
}

// Arbitrary-precision real scalar. Every value carries its own precision in
// bits; binary operations compute at the larger of the two operand precisions.
// Non-finite results (NaN, +-inf) never escape: they throw OverflowError.
class Real {
public:
    Real() { init(kMinBits); }
    explicit Real(unsigned bits) { init(bits); }
    Real(double d, unsigned bits) {
        init(bits);
        mpfr_set_d(v_, d, MPFR_RNDN);
        check();
    }
    Real(long n, unsigned bits) {
        init(bits);
        mpfr_set_si(v_, n, MPFR_RNDN);
    }
    Real(const std::string& s, unsigned bits) {
        init(bits);
        if (mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) != 0)
            throw ParseError("not a decimal number: '" + s + "'");
        check();
    }

    Real(const Real& o) {
        init(o.bits());
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        init(kMinBits);
        mpfr_swap(v_, o.v_);
    }
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

    unsigned bits() const { return static_cast<unsigned>(mpfr_get_prec(v_)); }

    // Value rounded to a different working precision.
    Real at_bits(unsigned bits) const {
        Real r(bits);
        mpfr_set(r.v_, v_, MPFR_RNDN);
        return r;
    }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }

    // log2|x| as a double, safe against exponent over/underflow; -1e300 at 0.
    double log2_abs_approx() const {
        if (mpfr_zero_p(v_)) return -1e300;
        long e = 0;
        double m = mpfr_get_d_2exp(&e, v_, MPFR_RNDN);
        return std::log2(std::abs(m)) + static_cast<double>(e);
    }

    // Scientific-notation decimal string with the requested significant digits.
    std::string str(int digits) const {
        char buf[64];
        int need = mpfr_snprintf(buf, sizeof buf, "%.*Re", digits - 1, v_);
        if (need < static_cast<int>(sizeof buf)) return std::string(buf);
        std::vector<char> big(static_cast<size_t>(need) + 1);
        mpfr_snprintf(big.data(), big.size(), "%.*Re", digits - 1, v_);
        return std::string(big.data());
    }

    static Real pi(unsigned bits) {
        Real r(bits);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }
    static Real two_pow(long e, unsigned bits) {
        Real r(bits);
        mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
        return r;
    }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    friend Real operator+(const Real& a, const Real& b) { return binop(mpfr_add, a, b); }
    friend Real operator-(const Real& a, const Real& b) { return binop(mpfr_sub, a, b); }
    friend Real operator*(const Real& a, const Real& b) { return binop(mpfr_mul, a, b); }
    friend Real operator/(const Real& a, const Real& b) { return binop(mpfr_div, a, b); }
    Real operator-() const {
        Real r(bits());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }
    Real& operator+=(const Real& o) { return *this = *this + o; }
    Real& operator-=(const Real& o) { return *this = *this - o; }
    Real& operator*=(const Real& o) { return *this = *this * o; }
    Real& operator/=(const Real& o) { return *this = *this / o; }

    friend Real operator+(const Real& a, double b) { return a + Real(b, a.bits()); }
    friend Real operator+(double a, const Real& b) { return Real(a, b.bits()) + b; }
    friend Real operator-(const Real& a, double b) { return a - Real(b, a.bits()); }
    friend Real operator-(double a, const Real& b) { return Real(a, b.bits()) - b; }
    friend Real operator*(const Real& a, double b) { return a * Real(b, a.bits()); }
    friend Real operator*(double a, const Real& b) { return Real(a, b.bits()) * b; }
    friend Real operator/(const Real& a, double b) { return a / Real(b, a.bits()); }
    friend Real operator/(double a, const Real& b) { return Real(a, b.bits()) / b; }

    friend int cmp(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_); }
    friend bool operator<(const Real& a, const Real& b) { return cmp(a, b) < 0; }
    friend bool operator>(const Real& a, const Real& b) { return cmp(a, b) > 0; }
    friend bool operator<=(const Real& a, const Real& b) { return cmp(a, b) <= 0; }
    friend bool operator>=(const Real& a, const Real& b) { return cmp(a, b) >= 0; }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend bool operator!=(const Real& a, const Real& b) { return !(a == b); }
    friend bool operator<(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) < 0; }
    friend bool operator>(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) > 0; }
    friend bool operator<=(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) <= 0; }
    friend bool operator>=(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) >= 0; }
    friend bool operator==(const Real& a, double b) { return mpfr_cmp_d(a.v_, b) == 0; }

    friend Real abs(const Real& x) { return unop(mpfr_abs, x); }
    friend Real sqrt(const Real& x) { return unop(mpfr_sqrt, x); }
    friend Real exp(const Real& x) { return unop(mpfr_exp, x); }
    friend Real log(const Real& x) { return unop(mpfr_log, x); }
    friend Real log2(const Real& x) { return unop(mpfr_log2, x); }
    friend Real sin(const Real& x) { return unop(mpfr_sin, x); }
    friend Real cos(const Real& x) { return unop(mpfr_cos, x); }
    friend Real sinh(const Real& x) { return unop(mpfr_sinh, x); }
    friend Real cosh(const Real& x) { return unop(mpfr_cosh, x); }
    friend Real atan2(const Real& y, const Real& x) { return binop(mpfr_atan2, y, x); }
    friend Real hypot(const Real& x, const Real& y) { return binop(mpfr_hypot, x, y); }
    friend Real pow_int(const Real& x, long e) {
        Real r(x.bits());
        mpfr_pow_si(r.v_, x.v_, e, MPFR_RNDN);
        r.check();
        return r;
    }
    friend Real min(const Real& a, const Real& b) { return a <= b ? a : b; }
    friend Real max(const Real& a, const Real& b) { return a >= b ? a : b; }

private:
    using mpfr_binop = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
    using mpfr_unop = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);

    void init(unsigned bits) { mpfr_init2(v_, clamp_bits(bits)); mpfr_set_zero(v_, 1); }

    void check() const {
        if (!mpfr_number_p(v_))
            throw OverflowError("non-finite real value");
    }

    static Real binop(mpfr_binop op, const Real& a, const Real& b) {
        Real r(std::max(a.bits(), b.bits()));
        op(r.v_, a.v_, b.v_, MPFR_RNDN);
        r.check();
        return r;
    }
    static Real unop(mpfr_unop op, const Real& x) {
        Real r(x.bits());
        op(r.v_, x.v_, MPFR_RNDN);
        r.check();
        return r;
    }

    mpfr_t v_;
};

}  // namespace superosc
