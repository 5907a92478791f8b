#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "superosc/complex.hpp"
#include "superosc/errors.hpp"

namespace superosc {

using Rational = mpq_class;

// Exact: every double is a dyadic rational.
inline Rational rational_from_double(double d) {
    Rational q;
    mpq_set_d(q.get_mpq_t(), d);
    return q;
}

inline Real to_real(const Rational& q, unsigned bits) {
    Real r(bits);
    mpfr_set_q(r.raw(), q.get_mpq_t(), MPFR_RNDN);
    return r;
}

// log2|q|, -inf reported as a large negative double; used for precision sizing.
inline double rational_log2_abs(const Rational& q) {
    if (q == 0) return -1e9;
    signed long exp_num = 0, exp_den = 0;
    double m_num = mpz_get_d_2exp(&exp_num, q.get_num().get_mpz_t());
    double m_den = mpz_get_d_2exp(&exp_den, q.get_den().get_mpz_t());
    return std::log2(std::abs(m_num)) + static_cast<double>(exp_num) -
           (std::log2(std::abs(m_den)) + static_cast<double>(exp_den));
}

struct RationalComplex {
    Rational re, im;

    RationalComplex() : re(0), im(0) {}
    RationalComplex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    RationalComplex(long r) : re(r), im(0) {}

    bool is_zero() const { return re == 0 && im == 0; }

    friend RationalComplex operator+(const RationalComplex& a, const RationalComplex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend RationalComplex operator-(const RationalComplex& a, const RationalComplex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend RationalComplex operator*(const RationalComplex& a, const RationalComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend RationalComplex operator/(const RationalComplex& a, const RationalComplex& b) {
        Rational den = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
    }
    RationalComplex operator-() const { return {-re, -im}; }
    RationalComplex& operator+=(const RationalComplex& o) { return *this = *this + o; }
    RationalComplex& operator*=(const RationalComplex& o) { return *this = *this * o; }
    friend bool operator==(const RationalComplex& a, const RationalComplex& b) {
        return a.re == b.re && a.im == b.im;
    }

    // Multiplication by i^e.
    RationalComplex mul_i_pow(long e) const {
        switch (((e % 4) + 4) % 4) {
            case 0: return *this;
            case 1: return {-im, re};
            case 2: return {-re, -im};
            default: return {im, -re};
        }
    }

    Complex to_complex(unsigned bits) const { return {to_real(re, bits), to_real(im, bits)}; }
};

// i^e as an exact rational complex.
inline RationalComplex i_pow(long e) { return RationalComplex(1).mul_i_pow(e); }

// Exact Gaussian elimination with column pivoting (first nonzero pivot of
// largest magnitude keeps intermediate numbers small-ish). Returns nullopt on
// an exactly singular matrix. Row-major square matrix.
inline std::optional<std::vector<RationalComplex>> solve_exact(
    std::vector<std::vector<RationalComplex>> m, std::vector<RationalComplex> rhs) {
    const size_t n = m.size();
    for (size_t col = 0; col < n; ++col) {
        size_t pivot = col;
        Rational best(0);
        for (size_t r = col; r < n; ++r) {
            Rational mag = m[r][col].re * m[r][col].re + m[r][col].im * m[r][col].im;
            if (mag > best) {
                best = mag;
                pivot = r;
            }
        }
        if (best == 0) return std::nullopt;
        std::swap(m[pivot], m[col]);
        std::swap(rhs[pivot], rhs[col]);
        for (size_t r = col + 1; r < n; ++r) {
            if (m[r][col].is_zero()) continue;
            RationalComplex f = m[r][col] / m[col][col];
            for (size_t c = col; c < n; ++c) m[r][c] = m[r][c] - f * m[col][c];
            rhs[r] = rhs[r] - f * rhs[col];
        }
    }
    std::vector<RationalComplex> x(n);
    for (size_t row = n; row-- > 0;) {
        RationalComplex acc = rhs[row];
        for (size_t c = row + 1; c < n; ++c) acc = acc - m[row][c] * x[c];
        x[row] = acc / m[row][row];
    }
    return x;
}

}  // namespace superosc
