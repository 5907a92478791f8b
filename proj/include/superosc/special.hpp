#pragma once

#include <cmath>

#include "superosc/complex.hpp"

namespace superosc {

// Complex square root on the branch with 0 <= Arg(sqrt(w)) < pi. The input
// argument is taken in [0, 2pi), i.e. continuous from above the positive real
// axis; the cut sits on the positive real axis itself, where the positive
// root is returned. Total: csqrt_upper(0) = 0.
inline Complex csqrt_upper(const Complex& w) {
    unsigned bits = w.bits();
    if (w.is_zero()) return Complex(bits);
    Real theta = arg(w);  // (-pi, pi]
    if (theta.sign() < 0) theta += 2.0 * Real::pi(bits);
    Real half = theta / 2;
    Real root = sqrt(abs(w));
    return {root * cos(half), root * sin(half)};
}

// sinc(z) = sin(z)/z, entire. Below |z| = 1/2 the even Taylor series removes
// the 0/0 cancellation; above it the direct quotient is accurate.
inline Complex csinc(const Complex& z) {
    unsigned bits = z.bits();
    if (norm(z) >= Real(0.25, bits)) return sin(z) / z;
    Complex z2 = z * z;
    Complex term(1.0, 0.0, bits);
    Complex sum = term;
    Real cutoff = Real::two_pow(-static_cast<long>(bits) - 8, bits);
    for (long n = 1; n < 1000; ++n) {
        term *= z2 / static_cast<double>(-(2 * n) * (2 * n + 1));
        sum += term;
        if (abs(term) < cutoff) break;
    }
    return sum;
}

// sinc(sqrt(w)) as an entire function of w: only even powers of sqrt(w)
// appear, so the value is branch-independent. Near w = 0 the series in w is
// used; elsewhere the composition with csqrt_upper.
inline Complex sinc_of_sqrt(const Complex& w) {
    unsigned bits = w.bits();
    if (norm(w) >= Real(1.0 / 16.0, bits)) return csinc(csqrt_upper(w));
    Complex term(1.0, 0.0, bits);
    Complex sum = term;
    Real cutoff = Real::two_pow(-static_cast<long>(bits) - 8, bits);
    for (long n = 1; n < 1000; ++n) {
        term *= w / static_cast<double>(-(2 * n) * (2 * n + 1));
        sum += term;
        if (abs(term) < cutoff) break;
    }
    return sum;
}

namespace detail {

// Ascending series J0(x) = sum (-1)^m (x^2/4)^m / (m!)^2, evaluated with the
// working precision widened to absorb the ~e^{|x|} cancellation between terms.
inline Real bessel_j0_series(const Real& x, unsigned bits) {
    unsigned guard = static_cast<unsigned>(std::ceil(1.45 * std::abs(x.to_double()))) + 32;
    unsigned wbits = clamp_bits(bits + guard);
    Real q = x.at_bits(wbits);
    q = q * q / 4.0;
    Real term(1.0, wbits);
    Real sum = term;
    Real cutoff = Real::two_pow(-static_cast<long>(bits) - 16, wbits);
    for (long m = 1; m < 100000; ++m) {
        term = -(term * q) / static_cast<double>(m * m);
        sum += term;
        if (abs(term) < cutoff) break;
    }
    return sum.at_bits(bits);
}

// Hankel large-argument expansion, usable once the optimally-truncated tail
// ~e^{-2x} is below the target; the caller guarantees that.
inline Real bessel_j0_asymptotic(const Real& x, unsigned bits) {
    unsigned wbits = clamp_bits(bits + 64);
    Real xa = x.at_bits(wbits);
    Real inv8x = Real(1.0, wbits) / (8.0 * xa);
    Real p(1.0, wbits), q(0.0, wbits);
    Real term(1.0, wbits);
    Real prev_mag = abs(term);
    Real cutoff = Real::two_pow(-static_cast<long>(bits) - 16, wbits);
    for (long m = 1; m < 100000; ++m) {
        double odd = static_cast<double>(2 * m - 1);
        term = term * (odd * odd) * inv8x / static_cast<double>(m);
        Real mag = abs(term);
        if (mag > prev_mag) break;  // optimal truncation reached
        if (m % 2 == 1) {
            long k = (m - 1) / 2;
            q += (k % 2 == 0) ? -term : term;
        } else {
            long k = m / 2;
            p += (k % 2 == 0) ? term : -term;
        }
        if (mag < cutoff) break;
        prev_mag = mag;
    }
    Real chi = xa - Real::pi(wbits) / 4.0;
    Real amp = sqrt(Real(2.0, wbits) / (Real::pi(wbits) * xa));
    return (amp * (p * cos(chi) - q * sin(chi))).at_bits(bits);
}

}  // namespace detail

// Bessel function of order zero at configurable precision; absolute error
// <= 2^{8-bits} * max(1, |J0(x)|).
inline Real bessel_j0(const Real& x, unsigned bits) {
    Real ax = abs(x);
    double switch_point = 0.3466 * (static_cast<double>(bits) + 24.0);
    if (ax.to_double() > std::max(switch_point, 32.0))
        return detail::bessel_j0_asymptotic(ax, bits);
    return detail::bessel_j0_series(ax, bits);
}

}  // namespace superosc
