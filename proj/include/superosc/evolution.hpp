#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <vector>

#include "superosc/families.hpp"
#include "superosc/measure.hpp"

namespace superosc {

// Multiply a measure by a spectral weight w(k): discrete weights fold
// eagerly, densities fold into the integrand, composites weight their base
// through the map.
inline BorelMeasure weight_measure(const BorelMeasure& m,
                                   const std::function<Complex(const Complex&)>& w) {
    switch (m.kind()) {
        case BorelMeasure::Kind::Discrete: {
            std::vector<Atom> atoms = m.as_discrete().atoms;
            for (Atom& a : atoms) a.weight *= w(Complex(a.location));
            return BorelMeasure::discrete(m.band(), std::move(atoms));
        }
        case BorelMeasure::Kind::Density: {
            DensityRep d = m.as_density();
            Integrand base = d.fn;
            d.fn = [base, w](const Real& k) { return base(k) * w(Complex(k)); };
            return BorelMeasure::density(m.band(), d.lo, d.hi, d.fn, d.quad, "", {}, d.splits);
        }
        case BorelMeasure::Kind::Composite: {
            const CompositeRep& c = m.as_composite();
            EntireSymbol map = c.map;
            auto lifted = [map, w](const Complex& u) { return w(map.eval(u)); };
            BorelMeasure base = weight_measure(*c.base, lifted);
            return BorelMeasure::composite(m.band(), std::move(base), c.map);
        }
    }
    throw Error(ErrorClass::Numeric, "unreachable");
}

// The propagated state U_t applied to a band-limited measure: evaluation at z
// is int e^{iH(k)t} e^{ikz} dmu(k). The spectral weight is kept symbolic so
// that repeated propagation under the same symbol accumulates time exactly
// (semigroup identity holds atom-for-atom after materialization).
struct PropagatedMeasure {
    BorelMeasure base;
    EntireSymbol symbol;
    Complex time;

    Complex eval(const Complex& z) const {
        unsigned bits = std::max(z.bits(), base.bits());
        Complex i(0.0, 1.0, bits);
        Complex iz = i * z;
        Complex it = i * time;
        const EntireSymbol& h = symbol;
        return integrate_against_complex(
            base, [&](const Complex& k) { return exp(h.eval(k) * it + k * iz); }, bits);
    }

    BorelMeasure materialize() const {
        unsigned bits = std::max(base.bits(), time.bits());
        Complex it = Complex(0.0, 1.0, bits) * time;
        const EntireSymbol& h = symbol;
        return weight_measure(base, [&](const Complex& k) { return exp(h.eval(k) * it); });
    }
};

inline PropagatedMeasure propagate(const BorelMeasure& m, const EntireSymbol& h, const Complex& t) {
    return {m, h, t};
}

// Same-symbol propagation composes by adding times; a different symbol wraps
// the materialized intermediate state.
inline PropagatedMeasure propagate(const PropagatedMeasure& p, const EntireSymbol& h,
                                   const Complex& t) {
    if (p.symbol.same_as(h)) return {p.base, p.symbol, p.time + t};
    return {p.materialize(), h, t};
}

// First derived family: weights scaled by e^{H(k) - H(a)}; band and limit
// target are unchanged.
inline BorelMeasure family_one(const BorelMeasure& m, const EntireSymbol& h, double a) {
    unsigned bits = m.bits();
    Complex ha = h.eval(Complex(a, 0.0, bits));
    return weight_measure(m, [h, ha](const Complex& k) { return exp(h.eval(k) - ha); });
}

// Second derived family: the image measure under H. Needs the declared band
// image bound h0 with |H(a)| > h0; the new family has band h0 and target H(a).
inline BorelMeasure family_two(const BorelMeasure& m, const EntireSymbol& h, double a) {
    if (!h.band_image_bound)
        throw HypothesisViolation("symbol must declare its band image bound h0");
    double h0 = *h.band_image_bound;
    unsigned bits = m.bits();
    Complex ha = h.eval(Complex(a, 0.0, bits));
    Real tol = Real::two_pow(-static_cast<long>(bits) / 2, bits);
    if (abs(ha.im()) > tol * (1.0 + abs(ha.re())))
        throw HypothesisViolation("H(a) must be real");
    if (!(abs(ha.re()) > Real(h0, bits)))
        throw HypothesisViolation("|H(a)| must exceed the image bound h0");
    return pushforward(m, h, h0);
}

inline SuperoscFamily derived_family_two(const SuperoscFamily& fam, const EntireSymbol& h,
                                         unsigned bits = 128) {
    if (!h.band_image_bound)
        throw HypothesisViolation("symbol must declare its band image bound h0");
    Complex ha = h.eval(Complex(fam.target, 0.0, bits));
    SuperoscFamily out;
    out.label = fam.label + " -> " + h.label;
    out.band = *h.band_image_bound;
    out.target = ha.re().to_double();
    out.index_kind = fam.index_kind;
    double a = fam.target;
    auto gen = fam.generator;
    out.generator = [gen, h, a](double idx) { return family_two(gen(idx), h, a); };
    out.validate();
    return out;
}

namespace detail {

// Central finite-difference stencil of order >= 2 for the l-th derivative:
// offsets -m..m with m = floor(l/2) + 1, coefficients from the exact moment
// system sum_j c_j j^p = l! [p == l], p = 0..2m.
inline const std::vector<Rational>& central_stencil(int l) {
    static std::mutex mu;
    static std::map<int, std::vector<Rational>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(l);
    if (it != cache.end()) return it->second;

    int m = l / 2 + 1;
    int width = 2 * m + 1;
    std::vector<std::vector<RationalComplex>> a(width, std::vector<RationalComplex>(width));
    std::vector<RationalComplex> rhs(width);
    for (int p = 0; p < width; ++p) {
        for (int j = -m; j <= m; ++j) {
            Rational jp(1);
            for (int q = 0; q < p; ++q) jp *= Rational(j);
            a[p][j + m] = RationalComplex(jp, Rational(0));
        }
        Rational target(0);
        if (p == l) {
            target = 1;
            for (int q = 2; q <= l; ++q) target *= q;
        }
        rhs[p] = RationalComplex(target, Rational(0));
    }
    auto x = solve_exact(std::move(a), std::move(rhs));
    std::vector<Rational> c;
    for (const RationalComplex& v : *x) c.push_back(v.re);
    return cache.emplace(l, std::move(c)).first->second;
}

}  // namespace detail

// Residual |i dPsi/dt + H(-i d/dz) Psi| at (t, z) with Psi = U_t mu, the time
// derivative by central difference and the operator applied through order-2
// central stencils per derivative order. Restricted to polynomial H of degree
// at most 8; entire symbols act through the spectral weight instead.
inline Real pde_residual(const BorelMeasure& m, const EntireSymbol& h, const Real& t,
                         const Complex& z, const Real& step) {
    if (!h.poly_coeffs) throw PreconditionViolation("pde residual needs polynomial coefficients");
    const std::vector<Complex>& coeffs = *h.poly_coeffs;
    int degree = static_cast<int>(coeffs.size()) - 1;
    while (degree > 0 && coeffs[static_cast<size_t>(degree)].is_zero()) --degree;
    if (degree > 8) throw PreconditionViolation("pde residual supports degree <= 8");
    if (abs(z).to_double() > 1e12) throw StencilOverflow("|z| too large for stable stencils");
    if (!(step > 0.0)) throw PreconditionViolation("step must be positive");

    unsigned bits = std::max({z.bits(), m.bits(), t.bits()});
    Complex i(0.0, 1.0, bits);

    auto psi = [&](const Real& tt, const Complex& zz) {
        return propagate(m, h, Complex(tt, Real(bits))).eval(zz);
    };

    Complex dpsi_dt = (psi(t + step, z) - psi(t - step, z)) / (2.0 * step);

    int m_max = degree / 2 + 1;
    std::vector<Complex> samples;
    samples.reserve(2 * m_max + 1);
    for (int j = -m_max; j <= m_max; ++j)
        samples.push_back(psi(t, z + Complex(step * static_cast<double>(j), Real(bits))));

    Complex op(bits);
    for (int l = 0; l <= degree; ++l) {
        if (coeffs[static_cast<size_t>(l)].is_zero()) continue;
        const std::vector<Rational>& stencil = detail::central_stencil(l);
        int mm = l / 2 + 1;
        Complex dl(bits);
        for (int j = -mm; j <= mm; ++j)
            dl += Complex(to_real(stencil[static_cast<size_t>(j + mm)], bits)) *
                  samples[static_cast<size_t>(j + m_max)];
        dl = dl / Complex(pow_int(step.at_bits(bits), l));
        op += coeffs[static_cast<size_t>(l)] * pow_int(-i, l) * dl;
    }
    return abs(i * dpsi_dt + op);
}

}  // namespace superosc
