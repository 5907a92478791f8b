#pragma once

#include <cmath>
#include <random>

#include "superosc/families.hpp"
#include "superosc/special.hpp"

namespace superosc {

namespace detail {

inline Complex random_disk_point(std::mt19937_64& rng, double radius, unsigned bits) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double r = radius * std::sqrt(u01(rng));
    double th = 2.0 * M_PI * u01(rng);
    return Complex(r * std::cos(th), r * std::sin(th), bits);
}

inline Complex random_annulus_point(std::mt19937_64& rng, double r_lo, double r_hi,
                                    unsigned bits) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double r = std::sqrt(r_lo * r_lo + u01(rng) * (r_hi * r_hi - r_lo * r_lo));
    double th = 2.0 * M_PI * u01(rng);
    return Complex(r * std::cos(th), r * std::sin(th), bits);
}

}  // namespace detail

struct SuiteResult {
    long samples = 0;
    long violations = 0;
    double worst = 0.0;  // suite-specific: max error or max ratio
};

// |e^{z1} - e^{z2}| <= |z1 - z2| e^{max(|z1|, |z2|)} on random pairs.
inline SuiteResult exp_difference_suite(long n_samples = 10000, double radius = 10.0,
                                        unsigned bits = 128, unsigned long seed = 20240601) {
    std::mt19937_64 rng(seed);
    SuiteResult res;
    res.samples = n_samples;
    for (long i = 0; i < n_samples; ++i) {
        Complex z1 = detail::random_disk_point(rng, radius, bits);
        Complex z2 = detail::random_disk_point(rng, radius, bits);
        Real lhs = abs(exp(z1) - exp(z2));
        Real rhs = abs(z1 - z2) * exp(max(abs(z1), abs(z2)));
        Real slack = rhs - lhs;
        if (slack.sign() < 0) ++res.violations;
        double ratio = rhs.is_zero() ? 0.0 : (lhs / rhs).to_double();
        res.worst = std::max(res.worst, ratio);
    }
    return res;
}

// Quotient |sqrt(z^2 - 2iaz - 1) + az - i| / min(|z|, |z|^2) with the upper
// square-root branch.
inline Real root_bound_quotient(double a, const Complex& z) {
    unsigned bits = z.bits();
    Complex root = csqrt_upper(z * z - Complex(0.0, 2.0 * a, bits) * z - 1.0);
    Real num = abs(root + Complex(a, 0.0, bits) * z - Complex(0.0, 1.0, bits));
    Real az = abs(z);
    return num / min(az, az * az);
}

// Fitted constant: max of the quotient over a polar grid of the unit disk.
// The quotient peaks near the imaginary axis just above the branch point, so
// the angle count is rounded up to a multiple of 4 to sample the axes exactly.
inline double root_bound_fit(double a, unsigned bits = 64, int n_radii = 48, int n_angles = 360) {
    n_angles += (4 - n_angles % 4) % 4;
    double best = 0.0;
    for (int ri = 1; ri <= n_radii; ++ri) {
        double r = static_cast<double>(ri) / static_cast<double>(n_radii);
        for (int ai = 0; ai < n_angles; ++ai) {
            double th = 2.0 * M_PI * static_cast<double>(ai) / static_cast<double>(n_angles);
            Complex z(r * std::cos(th), r * std::sin(th), bits);
            best = std::max(best, root_bound_quotient(a, z).to_double());
        }
    }
    return best;
}

// Out-of-fit validation: the fitted constant must still dominate the quotient
// on random samples with 1 < |z| <= r_hi.
inline SuiteResult root_bound_validate(double a, double fitted_c, long n_samples = 1000,
                                       double r_hi = 50.0, unsigned bits = 64,
                                       unsigned long seed = 777) {
    std::mt19937_64 rng(seed);
    SuiteResult res;
    res.samples = n_samples;
    for (long i = 0; i < n_samples; ++i) {
        Complex z = detail::random_annulus_point(rng, 1.0, r_hi, bits);
        double q = root_bound_quotient(a, z).to_double();
        res.worst = std::max(res.worst, q);
        if (q > fitted_c) ++res.violations;
    }
    return res;
}

// Relative error of sinc(sqrt(z^2 + b^2)) against (1/2) int_{-1}^{1} e^{ikz}
// J0(b sqrt(1 - k^2)) dk.
inline Real sinc_bessel_identity_error(double b, const Complex& z, unsigned bits = 128,
                                       QuadratureSpec quad = {}) {
    unsigned wbits = bits + 32;
    Complex zw = z.at_bits(wbits);
    Complex iz = Complex(0.0, 1.0, wbits) * zw;
    Real bw(b, wbits);
    Integrand f = [&](const Real& k) {
        return exp(Complex(k) * iz) * Complex(bessel_j0(bw * sqrt(1.0 - k * k), wbits), Real(wbits));
    };
    Complex integral = 0.5 * integrate(f, Real(-1.0, wbits), Real(1.0, wbits), quad, wbits);
    Complex direct = sinc_of_sqrt(zw * zw + Complex(b * b, 0.0, wbits));
    return (abs(integral - direct) / max(abs(direct), Real(1e-300, wbits))).at_bits(bits);
}

// Relative disagreement between the closed sinc form and its Bessel-density
// integral representation.
inline Real sinc_density_agreement_error(double a, double delta, const Complex& z,
                                         unsigned bits = 128) {
    Complex closed = sinc_delta_closed_form(a, delta, z);
    BorelMeasure dens = sinc_delta_measure(a, delta, bits);
    Complex via_density = eval_transform(dens, z);
    return abs(via_density - closed) / max(abs(closed), Real(1e-300, bits));
}

}  // namespace superosc
