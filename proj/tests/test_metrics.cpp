#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "superosc/metrics.hpp"
#include "superosc/special.hpp"

using namespace superosc;

namespace {

constexpr long kBits = 128;

Evaluator plane_wave(double a) {
    return [a](const Complex& z) { return exp(Complex(0.0, a, z.bits()) * z); };
}

}  // namespace

TEST_CASE("weighted sup distance basics") {
    GridSpec grid{4.0, 5, 8};
    Evaluator f = plane_wave(2.0);
    CHECK(a1_distance(f, f, 6.0, grid, kBits).to_double() == 0.0);

    Evaluator g = [&](const Complex& z) { return f(z) + Complex(1e-3, 0.0, z.bits()); };
    CHECK(a1_distance(f, g, 0.0, grid, kBits).to_double() == Catch::Approx(1e-3).epsilon(1e-15));

    // symmetry and the triangle inequality on a fixed grid
    Evaluator h = plane_wave(1.3);
    Real fg = a1_distance(f, g, 2.0, grid, kBits);
    Real gf = a1_distance(g, f, 2.0, grid, kBits);
    CHECK(fg == gf);
    Real fh = a1_distance(f, h, 2.0, grid, kBits);
    Real gh = a1_distance(g, h, 2.0, grid, kBits);
    CHECK(fh <= fg + gh + Real(1e-30, kBits));

    // larger weight exponent never increases the estimate
    CHECK(a1_distance(f, h, 3.0, grid, kBits) <= a1_distance(f, h, 2.0, grid, kBits));
}

TEST_CASE("derivative-matching defects") {
    // product-formula measure matches exactly for l <= n in rational mode
    BorelMeasure lag = lagrange_measure(equispaced_freqs(2), Rational(2));
    for (long l = 0; l <= 2; ++l) {
        Complex d = taylor_defect(lag, 2.0, l, kBits);
        CHECK(d.re().is_zero());
        CHECK(d.im().is_zero());
    }

    // binomial family: l = 2 defect is (a^2 - 1)/n
    Complex d2 = taylor_defect(standard_measure(2.0, 2), 2.0, 2, kBits);
    CHECK(d2.re().to_double() == Catch::Approx(1.5).epsilon(1e-30));
    CHECK(d2.im().is_zero());
    for (int n : {2, 4, 8, 16}) {
        for (double a : {1.5, 2.0, 3.0}) {
            Complex d = taylor_defect(standard_measure(a, n), a, 2, kBits);
            double expect = (a * a - 1.0) / n;
            CHECK(d.re().to_double() == Catch::Approx(expect).epsilon(1e-12));
        }
    }

    // l = 0 defect of any unit-mass measure is zero
    Complex d0 = taylor_defect(standard_measure(3.0, 5), 3.0, 0, kBits);
    CHECK(d0.re().is_zero());
}

TEST_CASE("tail bound closed form") {
    CHECK(taylor_tail_bound(1.0, 1.0, 1, 2.0, Complex(kBits)).to_double() == 1.5);
    // kappa = 1 at z = 0: (n+2)/2^n decreases strictly from n = 1
    double prev = 1e308;
    for (long n = 1; n <= 40; ++n) {
        double v = taylor_tail_bound(1.0, 1.0, n, 2.0, Complex(kBits)).to_double();
        CHECK(v < prev);
        prev = v;
    }
    CHECK_THROWS_AS(taylor_tail_bound(0.0, 1.0, 1, 2.0, Complex(kBits)), PreconditionViolation);
}

TEST_CASE("separation rate") {
    auto equispaced_real = [](int n) {
        std::vector<Real> out;
        for (const auto& q : equispaced_freqs(n)) out.push_back(to_real(q, 256));
        return out;
    };
    CHECK(separation_kappa(equispaced_real, 2) == Catch::Approx(1.0).epsilon(1e-12));
    CHECK(separation_kappa(equispaced_real, 30) >= 1.0 / std::exp(1.0));

    auto clustered = [](int) {
        return std::vector<Real>{Real(0.0, 256), Real(1e-6, 256)};
    };
    CHECK(separation_kappa(clustered, 1) == Catch::Approx(1e-6).epsilon(1e-9));

    auto dup = [](int) { return std::vector<Real>{Real(0.0, 256), Real(0.0, 256)}; };
    CHECK_THROWS_AS(separation_kappa(dup, 1), DuplicateFrequency);
}

TEST_CASE("local wavenumber") {
    Real h(1e-5, 256);
    // pure plane wave: exact logarithmic derivative a, any x
    for (double x : {-2.0, 0.0, 0.7}) {
        Real k = local_wavenumber(plane_wave(2.0), Real(x, 256), h);
        CHECK(k.to_double() == Catch::Approx(2.0).margin(1e-9));
    }

    // derivative-matched measure at x = 0 sees the out-of-band frequency
    BorelMeasure lag = lagrange_measure(equispaced_freqs(2), Rational(2));
    Evaluator f = [&](const Complex& z) { return eval_transform(lag, z); };
    CHECK(local_wavenumber(f, Real(0.0, 256), h).to_double() == Catch::Approx(2.0).margin(1e-8));

    // binomial family, n = 6: F'(0)/F(0) = ia
    BorelMeasure std6 = standard_measure(2.0, 6, PrecisionPolicy::fixed(256));
    Evaluator f6 = [&](const Complex& z) { return eval_transform(std6, z); };
    CHECK(local_wavenumber(f6, Real(0.0, 256), h).to_double() == Catch::Approx(2.0).margin(1e-8));

    // refuse near a node
    Evaluator s = [](const Complex& z) { return csinc(z); };
    CHECK_THROWS_AS(local_wavenumber(s, Real::pi(256), h), NearZeroSignal);
}

TEST_CASE("convergence report: binomial family decreases") {
    SuperoscFamily fam = standard_family(2.0);
    ConvergenceReport rep =
        convergence_report(fam, {2, 4, 8, 16}, 6.0, GridSpec{4.0, 5, 8}, kBits);
    CHECK(rep.verdict == ConvergenceReport::Verdict::Decreasing);
    CHECK(rep.sup_estimates.size() == 4);
    CHECK_FALSE(rep.taylor_applicable);
    REQUIRE(rep.taylor_defects.size() == 4);
    // defect table still reports the (a^2-1)/n column for l = 2
    CHECK(rep.taylor_defects[0][2].re().to_double() == Catch::Approx(1.5).epsilon(1e-25));
}

TEST_CASE("convergence report: sinc-type family decreases") {
    SuperoscFamily fam = sinc_delta_family(1.5);
    ConvergenceReport rep =
        convergence_report(fam, {1.0, 0.5, 0.25, 0.125}, 4.0, GridSpec{2.0, 4, 8}, kBits);
    CHECK(rep.verdict == ConvergenceReport::Verdict::Decreasing);
    CHECK(rep.taylor_defects.empty());
}

TEST_CASE("convergence report: derivative-matched family with bound column") {
    SuperoscFamily fam = lagrange_equispaced_family(2.0);
    double kappa2 = 0.0;
    BorelMeasure m8 = fam.generator(8);
    for (const auto& atom : m8.as_discrete().atoms)
        kappa2 = std::max(kappa2, abs(atom.weight).to_double());
    kappa2 = std::pow(kappa2, 1.0 / 8.0);
    ConvergenceReport rep = convergence_report(fam, {4, 8}, 6.0, GridSpec{2.0, 4, 8}, kBits,
                                               std::make_pair(1.0, kappa2));
    CHECK(rep.taylor_applicable);
    REQUIRE(rep.taylor_defects.size() == 2);
    for (const auto& row : rep.taylor_defects)
        for (const Complex& d : row) CHECK(abs(d).to_double() == 0.0);
    CHECK(rep.bound_values.size() == 2);
}
