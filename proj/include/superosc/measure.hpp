#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "superosc/quadrature.hpp"
#include "superosc/rational.hpp"
#include "superosc/symbol.hpp"

namespace superosc {

struct Atom {
    Real location;
    Complex weight;
};

// Exact-rational mirror of a discrete atom list; kept alongside the float
// atoms when the construction was exact, so moment arithmetic can stay exact.
struct DiscreteExact {
    std::vector<std::pair<Rational, RationalComplex>> atoms;
};

class BorelMeasure;

struct DiscreteRep {
    std::vector<Atom> atoms;
    std::optional<DiscreteExact> exact;
};

struct DensityRep {
    Real lo, hi;
    Integrand fn;
    QuadratureSpec quad;
    std::string descriptor_json;  // builtin name + params; empty = not serializable
    // Exact moments int k^m h(k) dk when the density has them (e.g. uniform).
    std::function<std::optional<Rational>(long m)> exact_moment;
    std::vector<Real> splits;  // forced panel boundaries (integrand kinks)
};

struct CompositeRep {
    std::shared_ptr<const BorelMeasure> base;
    EntireSymbol map;
};

// A finite complex Borel measure on [-band, band]: discrete atoms, a density
// on an interval, or a pushforward of a base measure under an entire symbol
// (kept in composite form; evaluation integrates against the base).
class BorelMeasure {
public:
    enum class Kind { Discrete, Density, Composite };

    static BorelMeasure discrete(double band, std::vector<Atom> atoms,
                                 std::optional<DiscreteExact> exact = std::nullopt) {
        check_band(band);
        unsigned bits = kMinBits;
        for (const Atom& a : atoms) {
            bits = std::max({bits, a.location.bits(), a.weight.bits()});
            if (abs(a.location).to_double() > band * (1.0 + 1e-15))
                throw PreconditionViolation("atom location outside [-k0, k0]");
        }
        BorelMeasure m;
        m.band_ = band;
        m.bits_ = bits;
        m.rep_ = DiscreteRep{std::move(atoms), std::move(exact)};
        return m;
    }

    static BorelMeasure density(double band, Real lo, Real hi, Integrand fn,
                                QuadratureSpec quad = {}, std::string descriptor_json = "",
                                std::function<std::optional<Rational>(long)> exact_moment = {},
                                std::vector<Real> splits = {}) {
        check_band(band);
        if (lo.to_double() < -band * (1.0 + 1e-15) || hi.to_double() > band * (1.0 + 1e-15) ||
            !(lo <= hi))
            throw PreconditionViolation("density support not inside [-k0, k0]");
        BorelMeasure m;
        m.band_ = band;
        m.bits_ = std::max({kMinBits, lo.bits(), hi.bits()});
        m.rep_ = DensityRep{std::move(lo),   std::move(hi),
                            std::move(fn),   quad,
                            std::move(descriptor_json), std::move(exact_moment),
                            std::move(splits)};
        return m;
    }

    static BorelMeasure composite(double band, BorelMeasure base, EntireSymbol map) {
        check_band(band);
        if (!map.band_image_bound)
            throw PreconditionViolation("composite map needs a declared image bound");
        if (*map.band_image_bound > band * (1.0 + 1e-15))
            throw PreconditionViolation("declared image bound exceeds the band");
        BorelMeasure m;
        m.band_ = band;
        m.bits_ = base.bits_;
        m.rep_ = CompositeRep{std::make_shared<BorelMeasure>(std::move(base)), std::move(map)};
        return m;
    }

    Kind kind() const { return static_cast<Kind>(rep_.index()); }
    double band() const { return band_; }
    unsigned bits() const { return bits_; }

    const DiscreteRep& as_discrete() const { return std::get<DiscreteRep>(rep_); }
    const DensityRep& as_density() const { return std::get<DensityRep>(rep_); }
    const CompositeRep& as_composite() const { return std::get<CompositeRep>(rep_); }

private:
    static void check_band(double band) {
        if (!(band > 0.0)) throw PreconditionViolation("band k0 must be positive");
    }

    double band_ = 1.0;
    unsigned bits_ = kMinBits;
    std::variant<DiscreteRep, DensityRep, CompositeRep> rep_;
};

// int f(k) dmu(k): the one evaluation engine all transforms dispatch through.
inline Complex integrate_against(const BorelMeasure& m, const Integrand& f, unsigned bits) {
    unsigned wbits = std::max(bits, m.bits());
    switch (m.kind()) {
        case BorelMeasure::Kind::Discrete: {
            Complex acc(wbits);
            for (const Atom& a : m.as_discrete().atoms) acc += a.weight * f(a.location);
            return acc;
        }
        case BorelMeasure::Kind::Density: {
            const DensityRep& d = m.as_density();
            Integrand g = [&](const Real& k) { return d.fn(k) * f(k); };
            return integrate(g, d.lo, d.hi, d.quad, wbits, d.splits);
        }
        case BorelMeasure::Kind::Composite: {
            const CompositeRep& c = m.as_composite();
            Integrand g = [&](const Real& u) { return f(c.map.eval(Complex(u)).re()); };
            return integrate_against(*c.base, g, wbits);
        }
    }
    throw Error(ErrorClass::Numeric, "unreachable");
}

// As integrate_against, but the test function may be complex-argument aware;
// used where the transform weight e^{i phi(u) z} must act on the full complex
// value of the map (it is real on the support, this keeps rounding honest).
inline Complex integrate_against_complex(const BorelMeasure& m,
                                         const std::function<Complex(const Complex&)>& f,
                                         unsigned bits) {
    unsigned wbits = std::max(bits, m.bits());
    switch (m.kind()) {
        case BorelMeasure::Kind::Discrete: {
            Complex acc(wbits);
            for (const Atom& a : m.as_discrete().atoms) acc += a.weight * f(Complex(a.location));
            return acc;
        }
        case BorelMeasure::Kind::Density: {
            const DensityRep& d = m.as_density();
            Integrand g = [&](const Real& k) { return d.fn(k) * f(Complex(k)); };
            return integrate(g, d.lo, d.hi, d.quad, wbits, d.splits);
        }
        case BorelMeasure::Kind::Composite: {
            const CompositeRep& c = m.as_composite();
            auto g = [&](const Complex& u) { return f(c.map.eval(u)); };
            return integrate_against_complex(*c.base, g, wbits);
        }
    }
    throw Error(ErrorClass::Numeric, "unreachable");
}

// F(z) = int e^{ikz} dmu(k).
inline Complex eval_transform(const BorelMeasure& m, const Complex& z) {
    unsigned bits = std::max(z.bits(), m.bits());
    Complex iz = Complex(0.0, 1.0, bits) * z;
    return integrate_against_complex(
        m, [&](const Complex& k) { return exp(k * iz); }, bits);
}

// int k^l dmu(k).
inline Complex moment(const BorelMeasure& m, long l, unsigned bits = 0) {
    if (bits == 0) bits = m.bits();
    return integrate_against_complex(
        m, [&](const Complex& k) { return pow_int(k, l); }, bits);
}

// Exact moment when the representation allows it: discrete-with-exact atoms,
// or a density with exact moment data.
inline std::optional<RationalComplex> moment_exact(const BorelMeasure& m, long l) {
    switch (m.kind()) {
        case BorelMeasure::Kind::Discrete: {
            const auto& d = m.as_discrete();
            if (!d.exact) return std::nullopt;
            RationalComplex acc;
            for (const auto& [loc, w] : d.exact->atoms) {
                Rational p(1);
                for (long i = 0; i < l; ++i) p *= loc;
                acc += w * RationalComplex(p, Rational(0));
            }
            return acc;
        }
        case BorelMeasure::Kind::Density: {
            const auto& d = m.as_density();
            if (!d.exact_moment) return std::nullopt;
            auto q = d.exact_moment(l);
            if (!q) return std::nullopt;
            return RationalComplex(*q, Rational(0));
        }
        case BorelMeasure::Kind::Composite:
            return std::nullopt;
    }
    return std::nullopt;
}

// Upper estimate of |mu|([-k0, k0]). Exact for Discrete; quadrature of |h|
// for Density; for Composite the base's total variation (equality for
// injective maps, an upper bound otherwise).
inline Real total_variation(const BorelMeasure& m) {
    switch (m.kind()) {
        case BorelMeasure::Kind::Discrete: {
            Real acc(m.bits());
            for (const Atom& a : m.as_discrete().atoms) acc += abs(a.weight);
            return acc;
        }
        case BorelMeasure::Kind::Density: {
            const DensityRep& d = m.as_density();
            Integrand g = [&](const Real& k) { return Complex(abs(d.fn(k))); };
            return integrate(g, d.lo, d.hi, d.quad, m.bits(), d.splits).re();
        }
        case BorelMeasure::Kind::Composite:
            return total_variation(*m.as_composite().base);
    }
    throw Error(ErrorClass::Numeric, "unreachable");
}

namespace detail {

inline std::optional<std::vector<RationalComplex>> exact_poly_coeffs(const EntireSymbol& phi) {
    if (!phi.poly_coeffs) return std::nullopt;
    std::vector<RationalComplex> out;
    out.reserve(phi.poly_coeffs->size());
    for (const Complex& c : *phi.poly_coeffs)
        out.push_back({rational_from_double(c.re().to_double()),
                       rational_from_double(c.im().to_double())});
    // refuse if the double round-trip lost information
    for (size_t i = 0; i < out.size(); ++i) {
        const Complex& c = (*phi.poly_coeffs)[i];
        if (to_real(out[i].re, c.re().bits()) != c.re() ||
            to_real(out[i].im, c.im().bits()) != c.im())
            return std::nullopt;
    }
    return out;
}

}  // namespace detail

// Image measure under an entire symbol phi with claimed bound image_bound:
// discrete atoms move to phi(location) (weights kept, coinciding images
// merged); densities and composites wrap into a Composite. The claimed bound
// is checked on the atoms, or by sampling phi on the support.
inline BorelMeasure pushforward(const BorelMeasure& m, const EntireSymbol& phi, double image_bound,
                                int samples = 10000) {
    if (!(image_bound > 0.0)) throw PreconditionViolation("image bound must be positive");
    unsigned bits = m.bits();
    Real tol = Real::two_pow(-static_cast<long>(bits) / 2, bits);
    if (m.kind() == BorelMeasure::Kind::Discrete) {
        const auto& d = m.as_discrete();
        std::vector<Atom> moved;
        moved.reserve(d.atoms.size());
        for (const Atom& a : d.atoms) {
            Complex img = phi.eval(Complex(a.location));
            if (abs(img.im()) > tol * (1.0 + abs(img.re())))
                throw ImageBoundViolation("atom maps off the real axis");
            if (abs(img.re()) > Real(image_bound, bits) * (1.0 + 1e-15) + tol)
                throw ImageBoundViolation("atom at " + a.location.str(17) +
                                          " maps outside [-h0, h0]");
            moved.push_back({img.re(), a.weight});
        }
        std::sort(moved.begin(), moved.end(),
                  [](const Atom& x, const Atom& y) { return x.location < y.location; });
        Real merge_tol = Real::two_pow(-static_cast<long>(bits) / 2, bits) * image_bound;
        std::vector<Atom> merged;
        for (Atom& a : moved) {
            if (!merged.empty() && abs(a.location - merged.back().location) < merge_tol)
                merged.back().weight += a.weight;
            else
                merged.push_back(std::move(a));
        }
        // exact path: rational polynomial map on exact atoms
        std::optional<DiscreteExact> exact;
        if (d.exact) {
            if (auto pc = detail::exact_poly_coeffs(phi)) {
                std::vector<std::pair<Rational, RationalComplex>> ex;
                for (const auto& [loc, w] : d.exact->atoms) {
                    RationalComplex img;
                    RationalComplex x(loc, Rational(0));
                    for (auto it = pc->rbegin(); it != pc->rend(); ++it) img = img * x + *it;
                    if (!(img.im == 0)) throw ImageBoundViolation("atom maps off the real axis");
                    ex.emplace_back(img.re, w);
                }
                std::sort(ex.begin(), ex.end(),
                          [](const auto& p, const auto& q) { return p.first < q.first; });
                DiscreteExact de;
                for (auto& p : ex) {
                    if (!de.atoms.empty() && de.atoms.back().first == p.first)
                        de.atoms.back().second += p.second;
                    else
                        de.atoms.push_back(std::move(p));
                }
                exact = std::move(de);
            }
        }
        return BorelMeasure::discrete(image_bound, std::move(merged), std::move(exact));
    }

    // continuous representations: sample the claimed bound, then wrap
    Real lo(bits), hi(bits);
    if (m.kind() == BorelMeasure::Kind::Density) {
        lo = m.as_density().lo;
        hi = m.as_density().hi;
    } else {
        lo = Real(-m.band(), bits);
        hi = Real(m.band(), bits);
    }
    for (int i = 0; i < samples; ++i) {
        Real k = lo + (hi - lo) * (static_cast<double>(i) / static_cast<double>(samples - 1));
        Complex img = phi.eval(Complex(k));
        if (abs(img.im()) > tol * (1.0 + abs(img.re())) ||
            abs(img.re()) > Real(image_bound, bits) * (1.0 + 1e-15) + tol)
            throw ImageBoundViolation("sampled map leaves [-h0, h0] near k=" +
                                      std::to_string(k.to_double()));
    }
    EntireSymbol map = phi;
    map.band_image_bound = image_bound;
    return BorelMeasure::composite(image_bound, m, std::move(map));
}

}  // namespace superosc
