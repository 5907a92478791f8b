#pragma once

#include <algorithm>
#include <string>

#include "superosc/real.hpp"

namespace superosc {

// Complex scalar over Real. The precision of a value is the larger of the
// component precisions and propagates through arithmetic like Real's does.
class Complex {
public:
    Complex() = default;
    explicit Complex(unsigned bits) : re_(bits), im_(bits) {}
    Complex(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) {}
    Complex(const Real& re) : re_(re), im_(Real(re.bits())) {}
    Complex(double re, double im, unsigned bits) : re_(re, bits), im_(im, bits) {}

    static Complex i(unsigned bits) { return Complex(0.0, 1.0, bits); }

    const Real& re() const { return re_; }
    const Real& im() const { return im_; }
    unsigned bits() const { return std::max(re_.bits(), im_.bits()); }
    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }

    Complex at_bits(unsigned bits) const { return {re_.at_bits(bits), im_.at_bits(bits)}; }

    friend Complex operator+(const Complex& a, const Complex& b) {
        return {a.re_ + b.re_, a.im_ + b.im_};
    }
    friend Complex operator-(const Complex& a, const Complex& b) {
        return {a.re_ - b.re_, a.im_ - b.im_};
    }
    friend Complex operator*(const Complex& a, const Complex& b) {
        return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
    }
    friend Complex operator/(const Complex& a, const Complex& b) {
        Real den = b.re_ * b.re_ + b.im_ * b.im_;
        return {(a.re_ * b.re_ + a.im_ * b.im_) / den, (a.im_ * b.re_ - a.re_ * b.im_) / den};
    }
    Complex operator-() const { return {-re_, -im_}; }
    Complex& operator+=(const Complex& o) { return *this = *this + o; }
    Complex& operator-=(const Complex& o) { return *this = *this - o; }
    Complex& operator*=(const Complex& o) { return *this = *this * o; }
    Complex& operator/=(const Complex& o) { return *this = *this / o; }

    friend Complex operator*(const Real& a, const Complex& b) { return Complex(a) * b; }
    friend Complex operator*(const Complex& a, const Real& b) { return a * Complex(b); }
    friend Complex operator*(double a, const Complex& b) { return Real(a, b.bits()) * b; }
    friend Complex operator*(const Complex& a, double b) { return a * Real(b, a.bits()); }
    friend Complex operator/(const Complex& a, const Real& b) { return {a.re_ / b, a.im_ / b}; }
    friend Complex operator/(const Complex& a, double b) { return a / Real(b, a.bits()); }

    friend bool operator==(const Complex& a, const Complex& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    friend Complex conj(const Complex& z) { return {z.re_, -z.im_}; }
    friend Real abs(const Complex& z) { return hypot(z.re_, z.im_); }
    friend Real norm(const Complex& z) { return z.re_ * z.re_ + z.im_ * z.im_; }
    // Principal argument in (-pi, pi].
    friend Real arg(const Complex& z) { return atan2(z.im_, z.re_); }

    friend Complex exp(const Complex& z) {
        Real m = exp(z.re_);
        return {m * cos(z.im_), m * sin(z.im_)};
    }
    friend Complex sin(const Complex& z) {
        return {sin(z.re_) * cosh(z.im_), cos(z.re_) * sinh(z.im_)};
    }
    friend Complex cos(const Complex& z) {
        return {cos(z.re_) * cosh(z.im_), -(sin(z.re_) * sinh(z.im_))};
    }
    friend Complex cosh(const Complex& z) {
        return {cosh(z.re_) * cos(z.im_), sinh(z.re_) * sin(z.im_)};
    }
    friend Complex pow_int(const Complex& z, long e) {
        if (e < 0) return Complex(1.0, 0.0, z.bits()) / pow_int(z, -e);
        Complex acc(1.0, 0.0, z.bits());
        Complex base = z;
        for (unsigned long n = static_cast<unsigned long>(e); n != 0; n >>= 1) {
            if (n & 1) acc *= base;
            if (n > 1) base *= base;
        }
        return acc;
    }

private:
    Real re_, im_;
};

inline Complex operator+(const Complex& a, double b) { return a + Complex(b, 0.0, a.bits()); }
inline Complex operator+(double a, const Complex& b) { return Complex(a, 0.0, b.bits()) + b; }
inline Complex operator-(const Complex& a, double b) { return a - Complex(b, 0.0, a.bits()); }
inline Complex operator-(double a, const Complex& b) { return Complex(a, 0.0, b.bits()) - b; }

}  // namespace superosc
