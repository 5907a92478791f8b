#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "superosc/measure.hpp"
#include "superosc/special.hpp"

using namespace superosc;

namespace {

constexpr long kBits = 128;

Atom atom(double k, double wre, double wim = 0.0) {
    return {Real(k, kBits), Complex(wre, wim, kBits)};
}

// Hand-built binomial measure for n = 2, a = 2: weights 9/4, -3/2, 1/4 at 1, 0, -1.
BorelMeasure binomial_n2_a2() {
    return BorelMeasure::discrete(1.0, {atom(1.0, 2.25), atom(0.0, -1.5), atom(-1.0, 0.25)});
}

BorelMeasure uniform_half() {
    return BorelMeasure::density(
        1.0, Real(-1.0, kBits), Real(1.0, kBits),
        [](const Real& k) { return Complex(Real(0.5, k.bits()), Real(k.bits())); });
}

Complex rand_disk(std::mt19937_64& rng, double radius, unsigned bits) {
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double r = radius * std::sqrt(u01(rng));
    double th = 2.0 * M_PI * u01(rng);
    return Complex(r * std::cos(th), r * std::sin(th), bits);
}

}  // namespace

TEST_CASE("transform evaluation on the pinned examples") {
    BorelMeasure single = BorelMeasure::discrete(1.0, {atom(0.5, 1.0)});
    CHECK(abs(eval_transform(single, Complex(kBits)) - Complex(1.0, 0.0, kBits)).to_double() ==
          0.0);

    Complex at_pi = eval_transform(binomial_n2_a2(), Complex(Real::pi(kBits), Real(kBits)));
    CHECK(at_pi.re().to_double() == Catch::Approx(-4.0).epsilon(1e-30));
    CHECK(std::abs(at_pi.im().to_double()) < 1e-30);

    // density of the sinc-type family (a = 3/2, delta = 1) integrates to 1 - e^{-2} at z = 0
    double a = 1.5, delta = 1.0;
    BorelMeasure dens = BorelMeasure::density(
        1.0, Real(-1.0, kBits), Real(1.0, kBits), [&](const Real& k) {
            unsigned b = k.bits();
            Real amp = exp((Real(a, b) * k - 1.0) / delta) / delta;
            Real arg = sqrt(Real(a * a - 1.0, b) * (1.0 - k * k)) / delta;
            return Complex(amp * bessel_j0(arg, b), Real(b));
        });
    Complex f0 = eval_transform(dens, Complex(kBits));
    CHECK(f0.re().to_double() == Catch::Approx(1.0 - std::exp(-2.0)).epsilon(1e-12));
    CHECK(f0.re().to_double() == Catch::Approx(0.8646647168).epsilon(1e-9));
}

TEST_CASE("moments") {
    BorelMeasure u = uniform_half();
    CHECK(moment(u, 2).re().to_double() == Catch::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(std::abs(moment(u, 3).re().to_double()) < 1e-20);

    BorelMeasure lag =
        BorelMeasure::discrete(1.0, {atom(1.0, 3.0), atom(0.0, -3.0), atom(-1.0, 1.0)});
    CHECK(moment(lag, 1).re().to_double() == 2.0);

    // exact atoms give exact moments
    DiscreteExact ex;
    ex.atoms = {{Rational(1), RationalComplex(Rational(3), Rational(0))},
                {Rational(0), RationalComplex(Rational(-3), Rational(0))},
                {Rational(-1), RationalComplex(Rational(1), Rational(0))}};
    BorelMeasure lag_exact = BorelMeasure::discrete(
        1.0, {atom(1.0, 3.0), atom(0.0, -3.0), atom(-1.0, 1.0)}, std::move(ex));
    auto m2 = moment_exact(lag_exact, 2);
    REQUIRE(m2.has_value());
    CHECK(m2->re == 4);
    CHECK(m2->im == 0);
}

TEST_CASE("total variation") {
    BorelMeasure one_atom = BorelMeasure::discrete(1.0, {atom(0.5, 3.0, -4.0)});
    CHECK(total_variation(one_atom).to_double() == 5.0);
    CHECK(total_variation(uniform_half()).to_double() == Catch::Approx(1.0).epsilon(1e-14));
    CHECK(total_variation(binomial_n2_a2()).to_double() == 4.0);
}

TEST_CASE("pushforward on discrete measures") {
    BorelMeasure m = BorelMeasure::discrete(1.0, {atom(1.0, 1.0), atom(-1.0, 1.0)});

    BorelMeasure same = pushforward(m, identity_symbol(kBits), 1.0);
    REQUIRE(same.kind() == BorelMeasure::Kind::Discrete);
    CHECK(same.as_discrete().atoms.size() == 2);
    CHECK(same.as_discrete().atoms[0].location == Real(-1.0, kBits));

    // both atoms map to 1 under k^2 and merge with weights added
    BorelMeasure sq = pushforward(m, monomial_symbol(2, kBits), 1.0);
    REQUIRE(sq.as_discrete().atoms.size() == 1);
    CHECK(sq.as_discrete().atoms[0].location == Real(1.0, kBits));
    CHECK(sq.as_discrete().atoms[0].weight.re().to_double() == 2.0);

    CHECK(pushforward(binomial_n2_a2(), monomial_symbol(2, kBits), 1.0).band() == 1.0);

    // an atom mapping outside the claimed bound is refused
    BorelMeasure wide = BorelMeasure::discrete(2.0, {atom(2.0, 1.0)});
    CHECK_THROWS_AS(pushforward(wide, monomial_symbol(2, kBits), 1.0), ImageBoundViolation);
}

TEST_CASE("pushforward of a density wraps into a composite") {
    BorelMeasure comp = pushforward(uniform_half(), monomial_symbol(2, kBits), 1.0, 512);
    REQUIRE(comp.kind() == BorelMeasure::Kind::Composite);

    // evaluation equals the direct integral of (1/2) e^{i k^2 z}
    Complex z(0.8, 0.3, kBits);
    Complex via_measure = eval_transform(comp, z);
    Integrand direct = [&](const Real& k) {
        return 0.5 * exp(Complex(0.0, 1.0, kBits) * Complex(k * k) * z);
    };
    Complex expected = integrate(direct, Real(-1.0, kBits), Real(1.0, kBits), {}, kBits);
    CHECK(abs(via_measure - expected).to_double() < 1e-25);

    // a density escaping the claimed bound is refused by sampling
    CHECK_THROWS_AS(
        pushforward(uniform_half(),
                    poly_symbol({Complex(0.0, 0.0, kBits), Complex(1.3, 0.0, kBits)}, "stretch"),
                    1.0, 512),
        ImageBoundViolation);
}

TEST_CASE("mass consistency across representations") {
    BorelMeasure disc = binomial_n2_a2();
    BorelMeasure dens = uniform_half();
    BorelMeasure comp = pushforward(dens, monomial_symbol(2, kBits), 1.0, 512);
    for (const BorelMeasure* m : {&disc, &dens, &comp}) {
        Complex f0 = eval_transform(*m, Complex(kBits));
        Complex m0 = moment(*m, 0);
        CHECK(abs(f0 - m0).to_double() < 1e-30);
    }
}

TEST_CASE("exponential growth bound from the total variation") {
    std::mt19937_64 rng(411);
    BorelMeasure m = binomial_n2_a2();
    Real tv = total_variation(m);
    for (int it = 0; it < 200; ++it) {
        Complex z = rand_disk(rng, 20.0, kBits);
        Real bound = tv * exp(Real(m.band(), kBits) * abs(z));
        CHECK(abs(eval_transform(m, z)) <= bound * (1.0 + 1e-25));
    }
}

TEST_CASE("pushforward transform equals the direct weighted sum") {
    std::mt19937_64 rng(5150);
    BorelMeasure m = binomial_n2_a2();
    EntireSymbol phi = monomial_symbol(2, kBits);
    BorelMeasure pf = pushforward(m, phi, 1.0);
    for (int it = 0; it < 50; ++it) {
        Complex z = rand_disk(rng, 5.0, kBits);
        Complex direct(static_cast<unsigned>(kBits));
        for (const Atom& a : m.as_discrete().atoms)
            direct += a.weight * exp(Complex(0.0, 1.0, kBits) * phi.eval(Complex(a.location)) * z);
        CHECK(abs(eval_transform(pf, z) - direct).to_double() < 1e-30);
    }
}

TEST_CASE("quadrature tolerance cross-check") {
    auto make = [](double rel) {
        QuadratureSpec q;
        q.rel_tol = rel;
        return BorelMeasure::density(
            1.0, Real(-1.0, kBits), Real(1.0, kBits),
            [](const Real& k) { return Complex(cos(3.0 * k) * 0.5 + 0.6, sin(k)); }, q);
    };
    Complex z(2.0, 1.0, kBits);
    Complex tight = eval_transform(make(1e-12), z);
    Complex loose = eval_transform(make(1e-8), z);
    CHECK((abs(tight - loose) / abs(tight)).to_double() < 1e-7);
}

TEST_CASE("construction guards") {
    CHECK_THROWS_AS(BorelMeasure::discrete(1.0, {atom(1.5, 1.0)}), PreconditionViolation);
    CHECK_THROWS_AS(BorelMeasure::density(0.5, Real(-1.0, kBits), Real(1.0, kBits),
                                          [](const Real& k) { return Complex(k); }),
                    PreconditionViolation);
    // a composite map must declare its image bound
    CHECK_THROWS_AS(BorelMeasure::composite(1.0, uniform_half(), identity_symbol(kBits)),
                    PreconditionViolation);
}
