#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "superosc/complex.hpp"
#include "superosc/errors.hpp"

namespace superosc {

// An evaluatable entire function with optional metadata: polynomial
// coefficients when available, a bound on its image over the real band,
// and a closed form for the value at ia.
struct EntireSymbol {
    std::string label;
    std::function<Complex(const Complex&)> eval;
    std::optional<std::vector<Complex>> poly_coeffs;  // H(z) = sum h_l z^l
    std::optional<double> band_image_bound;           // h0: |H| <= h0 on the real band
    std::function<Complex(double a, unsigned bits)> value_at_ia;  // closed form, may be null
    std::optional<std::pair<double, double>> admissible_a;
    std::optional<std::pair<double, double>> real_support;  // zero on R outside this interval

    Complex operator()(const Complex& z) const { return eval(z); }

    bool same_as(const EntireSymbol& o) const {
        if (label.empty() || o.label.empty()) return false;
        return label == o.label;
    }
};

inline Complex horner(const std::vector<Complex>& coeffs, const Complex& z) {
    unsigned bits = std::max(z.bits(), coeffs.empty() ? kMinBits : coeffs.front().bits());
    Complex acc(bits);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
}

inline EntireSymbol poly_symbol(std::vector<Complex> coeffs, std::string label = "") {
    EntireSymbol s;
    if (label.empty()) {
        label = "poly[";
        for (size_t i = 0; i < coeffs.size(); ++i) {
            if (i) label += ",";
            label += coeffs[i].re().str(17) + (coeffs[i].im().is_zero() ? "" : "+" + coeffs[i].im().str(17) + "i");
        }
        label += "]";
    }
    s.label = std::move(label);
    auto c = std::make_shared<std::vector<Complex>>(std::move(coeffs));
    s.eval = [c](const Complex& z) { return horner(*c, z); };
    s.poly_coeffs = *c;
    return s;
}

inline EntireSymbol identity_symbol(unsigned bits = 128) {
    EntireSymbol s = poly_symbol({Complex(0.0, 0.0, bits), Complex(1.0, 0.0, bits)}, "identity");
    return s;
}

// H(k) = k^2 and friends, convenient for tests and the CLI.
inline EntireSymbol monomial_symbol(unsigned degree, unsigned bits = 128) {
    std::vector<Complex> c(degree + 1, Complex(0.0, 0.0, bits));
    c[degree] = Complex(1.0, 0.0, bits);
    return poly_symbol(std::move(c), "k^" + std::to_string(degree));
}

// The builtin frequency/weight functions. k1..k4 are defined on all of C;
// k5 and g5 are the piecewise pair supported on [-a, a] (they need the a
// parameter at construction). const1 is the unit weight.
inline EntireSymbol builtin_symbol(const std::string& name, double a = 0.0) {
    EntireSymbol s;
    s.label = name;
    s.band_image_bound = 1.0;
    if (name == "k1") {
        s.eval = [](const Complex& u) { return Complex(1.0, 0.0, u.bits()) / (1.0 + (u * u) * 0.5); };
        s.value_at_ia = [](double av, unsigned bits) {
            return Complex(Real(1.0, bits) / (1.0 - Real(av, bits) * Real(av, bits) / 2.0), Real(bits));
        };
        s.admissible_a = {0.0, std::sqrt(2.0)};
    } else if (name == "k2") {
        s.eval = [](const Complex& u) { return Complex(1.0, 0.0, u.bits()) / cosh(u); };
        s.value_at_ia = [](double av, unsigned bits) {
            return Complex(Real(1.0, bits) / cos(Real(av, bits)), Real(bits));
        };
        s.admissible_a = {0.0, M_PI / 2.0};
    } else if (name == "k3") {
        s.eval = [](const Complex& u) { return exp(-(u * u) * 0.5); };
        s.value_at_ia = [](double av, unsigned bits) {
            return Complex(exp(Real(av, bits) * Real(av, bits) / 2.0), Real(bits));
        };
        s.admissible_a = {0.0, 1e308};
    } else if (name == "k4") {
        s.eval = [](const Complex& u) { return cos(u); };
        s.value_at_ia = [](double av, unsigned bits) { return Complex(cosh(Real(av, bits)), Real(bits)); };
        s.admissible_a = {0.0, 1e308};
    } else if (name == "k5") {
        if (!(a > 0.0 && a <= 2.0)) throw PreconditionViolation("k5 needs a in (0, 2]");
        s.eval = [a](const Complex& u) {
            unsigned bits = u.bits();
            if (u.im().is_zero() && abs(u.re()) > Real(a, bits))
                return Complex(bits);
            return Complex(1.0, 0.0, bits) - (u * u) * 0.5;  // triangle formula
        };
        s.value_at_ia = [](double av, unsigned bits) {
            return Complex(Real(1.0, bits) + Real(av, bits) * Real(av, bits) / 2.0, Real(bits));
        };
        s.admissible_a = {0.0, 2.0};
        s.real_support = {-a, a};
    } else if (name == "g5") {
        if (!(a > 0.0 && a <= 2.0)) throw PreconditionViolation("g5 needs a in (0, 2]");
        s.eval = [a](const Complex& u) {
            unsigned bits = u.bits();
            if (u.im().is_zero() && abs(u.re()) > Real(a, bits)) return Complex(bits);
            return Complex(1.0, 0.0, bits);
        };
        s.value_at_ia = [](double, unsigned bits) { return Complex(1.0, 0.0, bits); };
        s.admissible_a = {0.0, 2.0};
        s.real_support = {-a, a};
    } else if (name == "const1") {
        s.eval = [](const Complex& u) { return Complex(1.0, 0.0, u.bits()); };
        s.value_at_ia = [](double, unsigned bits) { return Complex(1.0, 0.0, bits); };
        s.admissible_a = {0.0, 1e308};
    } else {
        throw UnknownSymbol("unknown builtin symbol '" + name + "'");
    }
    return s;
}

// Ingredients for the Gaussian-window integral family: frequency function k,
// window shape g, coefficient a > 0, triangle corner b >= a (metadata), and
// the band k0. g is assumed bounded on R (growth rate g_growth, amplitude
// g_amp) for the truncation-radius rule.
struct BerrySpec {
    EntireSymbol k;
    EntireSymbol g;
    double a = 1.0;
    double b = 0.0;  // 0 = use a
    double k0 = 1.0;
    double g_growth = 0.0;
    double g_amp = 1.0;

    double corner_b() const { return b > 0.0 ? b : a; }

    // Superoscillation hypotheses: g(ia) = 1, k(ia) real outside the band,
    // k real-valued within the band on R (spot-checked by sampling).
    void validate(unsigned bits = 128, int samples = 2001) const {
        if (!(a > 0.0)) throw PreconditionViolation("Gaussian-window family needs a > 0");
        if (corner_b() < a) throw PreconditionViolation("corner b must satisfy b >= a");
        Complex kia = k.value_at_ia ? k.value_at_ia(a, bits) : k.eval(Complex(0.0, a, bits));
        Real tol = Real::two_pow(-static_cast<long>(bits) / 2, bits);
        if (abs(kia.im()) > tol * (1.0 + abs(kia.re())))
            throw HypothesisViolation("k(ia) is not real");
        if (!(abs(kia.re()) > Real(k0, bits)))
            throw HypothesisViolation("k(ia) must lie outside [-k0, k0]");
        if (g.value_at_ia) {
            Complex gia = g.value_at_ia(a, bits);
            if (abs(gia - 1.0) > tol) throw HypothesisViolation("g(ia) must equal 1");
        }
        double lo = -10.0 * std::max(1.0, corner_b()), hi = -lo;
        if (k.real_support) {
            lo = k.real_support->first;
            hi = k.real_support->second;
        }
        for (int i = 0; i < samples; ++i) {
            double u = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(samples - 1);
            Complex v = k.eval(Complex(u, 0.0, bits));
            if (abs(v.im()) > tol || abs(v.re()) > Real(k0, bits) + tol)
                throw HypothesisViolation("k leaves [-k0, k0] on the real axis near u=" +
                                          std::to_string(u));
        }
    }
};

}  // namespace superosc
