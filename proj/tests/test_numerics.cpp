#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "superosc/policy.hpp"
#include "superosc/quadrature.hpp"
#include "superosc/special.hpp"

using namespace superosc;

namespace {

constexpr long kBits = 128;

double dabs(const Complex& z) { return abs(z).to_double(); }

Complex rand_disk(std::mt19937_64& rng, double radius, unsigned bits) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double r = radius * std::sqrt(u01(rng));
    double th = 2.0 * M_PI * u01(rng);
    return Complex(r * std::cos(th), r * std::sin(th), bits);
}

// Independent series oracle for J0, double precision.
double j0_series_oracle(double x) {
    double q = x * x / 4.0, term = 1.0, sum = 1.0;
    for (int m = 1; m < 200; ++m) {
        term *= -q / (static_cast<double>(m) * m);
        sum += term;
        if (std::abs(term) < 1e-19 * std::max(1.0, std::abs(sum))) break;
    }
    return sum;
}

}  // namespace

TEST_CASE("real arithmetic basics") {
    Real a(1.5, kBits), b(0.25, kBits);
    CHECK((a + b).to_double() == 1.75);
    CHECK((a * b).to_double() == 0.375);
    CHECK((a / b).to_double() == 6.0);
    CHECK(max(a, b) == a);
    CHECK(Real("0.5", kBits).to_double() == 0.5);
    CHECK_THROWS_AS(exp(Real(1e30, kBits)), OverflowError);
    CHECK_THROWS_AS(Real("zebra", kBits), ParseError);
}

TEST_CASE("upper-branch square root at the pinned points") {
    Complex one(1.0, 0.0, kBits);
    CHECK(dabs(csqrt_upper(one) - one) == 0.0);

    Complex minus_one(-1.0, 0.0, kBits);
    Complex i = Complex::i(kBits);
    CHECK(dabs(csqrt_upper(minus_one) - i) < 1e-37);

    // Arg(-2i) = 3pi/2 under the [0, 2pi) convention, so the root is -1 + i.
    Complex w(0.0, -2.0, kBits);
    CHECK(dabs(csqrt_upper(w) - Complex(-1.0, 1.0, kBits)) < 1e-36);

    CHECK(csqrt_upper(Complex(kBits)).is_zero());
}

TEST_CASE("upper-branch square root: argument range and squaring") {
    std::mt19937_64 rng(20240601);
    Real pi = Real::pi(kBits);
    Real rel_tol = Real::two_pow(2 - static_cast<long>(kBits), kBits);
    for (int it = 0; it < 2000; ++it) {
        Complex w = rand_disk(rng, 50.0, kBits);
        if (w.is_zero()) continue;
        Complex r = csqrt_upper(w);
        Real theta = arg(r);
        CHECK(theta >= 0.0);
        CHECK(theta < pi);
        CHECK(abs(r * r - w) <= rel_tol * abs(w) * 16.0);
    }
}

TEST_CASE("sinc at the pinned points") {
    CHECK(dabs(csinc(Complex(kBits)) - Complex(1.0, 0.0, kBits)) == 0.0);
    CHECK(dabs(csinc(Complex(Real::pi(kBits), Real(kBits)))) < 1e-37);
    // sinc(i) = sinh(1)
    Complex si = csinc(Complex::i(kBits));
    Real oracle = sinh(Real(1.0, kBits));
    CHECK(abs(si - Complex(oracle)).to_double() < 1e-37);
    CHECK(si.re().to_double() == Catch::Approx(1.1752011936).epsilon(1e-10));
}

TEST_CASE("sinc-of-square agrees with the composed route") {
    CHECK(dabs(sinc_of_sqrt(Complex(kBits)) - Complex(1.0, 0.0, kBits)) == 0.0);
    Real pi2 = Real::pi(kBits) * Real::pi(kBits);
    CHECK(dabs(sinc_of_sqrt(Complex(pi2, Real(kBits)))) < 1e-36);
    CHECK(sinc_of_sqrt(Complex(-1.0, 0.0, kBits)).re().to_double() ==
          Catch::Approx(1.1752011936).epsilon(1e-10));

    std::mt19937_64 rng(7);
    for (int it = 0; it < 10000; ++it) {
        Complex w = rand_disk(rng, 100.0, kBits);
        Complex direct = sinc_of_sqrt(w);
        Complex composed = csinc(csqrt_upper(w));
        Real scale = max(Real(1.0, kBits), abs(direct));
        CHECK(abs(direct - composed) <= Real::two_pow(16 - kBits, kBits) * scale);
    }
}

TEST_CASE("bessel j0 against independent oracles") {
    CHECK(bessel_j0(Real(0.0, kBits), kBits).to_double() == 1.0);

    CHECK(bessel_j0(Real(1.0, kBits), kBits).to_double() ==
          Catch::Approx(j0_series_oracle(1.0)).epsilon(1e-14));
    CHECK(bessel_j0(Real(1.0, kBits), kBits).to_double() ==
          Catch::Approx(0.7651976866).epsilon(1e-9));

    // first positive zero, located by bisection on the series oracle
    double lo = 2.0, hi = 3.0;
    for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi);
        (j0_series_oracle(mid) > 0.0 ? lo : hi) = mid;
    }
    CHECK(lo == Catch::Approx(2.4048255577).epsilon(1e-9));
    CHECK(std::abs(bessel_j0(Real(lo, kBits), kBits).to_double()) < 1e-9);

    // integral representation oracle: J0(x) = (1/pi) int_0^pi cos(x sin t) dt
    for (double x : {0.5, 1.0, 2.0, 5.0, 11.0}) {
        Integrand f = [&](const Real& t) { return Complex(cos(Real(x, kBits) * sin(t))); };
        Complex integral = integrate(f, Real(0.0, kBits), Real::pi(kBits), {}, kBits);
        double oracle = integral.re().to_double() / M_PI;
        CHECK(bessel_j0(Real(x, kBits), kBits).to_double() == Catch::Approx(oracle).epsilon(1e-13));
    }

    // the large-argument branch agrees with the widened series
    Real big(75.25, kBits);
    Real asym = detail::bessel_j0_asymptotic(big, kBits);
    Real series = detail::bessel_j0_series(big, kBits);
    CHECK(abs(asym - series).to_double() < 1e-30);
}

TEST_CASE("exponential difference inequality on random pairs") {
    std::mt19937_64 rng(99);
    long violations = 0;
    for (int it = 0; it < 10000; ++it) {
        Complex z1 = rand_disk(rng, 10.0, kBits);
        Complex z2 = rand_disk(rng, 10.0, kBits);
        Real lhs = abs(exp(z1) - exp(z2));
        Real rhs = abs(z1 - z2) * exp(max(abs(z1), abs(z2)));
        if (lhs > rhs * (1.0 + 1e-30)) ++violations;
    }
    CHECK(violations == 0);
}

TEST_CASE("precision monotonicity of the special functions") {
    auto recheck = [](auto&& fn) {
        Complex coarse = fn(kBits);
        Complex fine = fn(2 * kBits);
        CHECK(abs(coarse - fine.at_bits(kBits)) <=
              Real::two_pow(8 - kBits, kBits) * max(Real(1.0, kBits), abs(coarse)));
    };
    recheck([](unsigned b) { return csqrt_upper(Complex(-2.0, 1.0, b)); });
    recheck([](unsigned b) { return csinc(Complex(0.3, -0.2, b)); });
    recheck([](unsigned b) { return sinc_of_sqrt(Complex(-3.0, 0.7, b)); });
    recheck([](unsigned b) { return Complex(bessel_j0(Real(7.5, b), b), Real(b)); });
}

TEST_CASE("precision policy escalation") {
    PrecisionPolicy p;
    CHECK(p.escalate(0, 1.0) == 128);
    CHECK(p.escalate(30, 1.2e8) >= 64 + 30 * 26);
    CHECK(p.escalate(1000, 1e30) == p.cap());
    CHECK(PrecisionPolicy::fixed(53).escalate(30, 1e8) == 53);
    CHECK_THROWS_AS(PrecisionPolicy::fixed(64).require(100, 1e10, "test"), PrecisionExhausted);
}

TEST_CASE("adaptive quadrature on known integrals") {
    Real zero(0.0, kBits), one(1.0, kBits);
    Integrand sq = [](const Real& x) { return Complex(x * x); };
    CHECK(integrate(sq, zero, one, {}, kBits).re().to_double() ==
          Catch::Approx(1.0 / 3.0).epsilon(1e-15));

    Integrand s = [](const Real& x) { return Complex(sin(x)); };
    CHECK(integrate(s, zero, Real::pi(kBits), {}, kBits).re().to_double() ==
          Catch::Approx(2.0).epsilon(1e-15));

    // int_{-1}^{1} e^{ikz} dk = 2 sinc(z), cross-checked against the series route
    Complex z(1.7, 0.9, kBits);
    Integrand wave = [&](const Real& k) { return exp(Complex(0.0, 1.0, kBits) * Complex(k) * z); };
    Complex lhs = integrate(wave, Real(-1.0, kBits), one, {}, kBits);
    Complex rhs = 2.0 * csinc(z);
    CHECK(abs(lhs - rhs).to_double() < 1e-30);

    Integrand spike = [](const Real& x) {
        return Complex(Real(1.0, x.bits()) / (x * x + 1e-10));
    };
    QuadratureSpec tiny_budget;
    tiny_budget.max_panels = 4;
    CHECK_THROWS_AS(integrate(spike, Real(-1.0, kBits), one, tiny_budget, kBits),
                    QuadratureNonConvergence);
}
