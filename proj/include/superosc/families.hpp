#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "superosc/measure.hpp"
#include "superosc/policy.hpp"
#include "superosc/special.hpp"

namespace superosc {

// An indexed sequence of band-limited measures converging (in the weighted
// sup sense) to the plane wave with the out-of-band target frequency.
struct SuperoscFamily {
    std::string label;
    double band = 1.0;    // k0
    double target = 0.0;  // a, with |a| > k0
    enum class IndexKind { Integer, Scale } index_kind = IndexKind::Integer;
    bool taylor_matched = false;  // derivative matching at 0 holds for l <= n
    std::function<BorelMeasure(double index)> generator;
    std::function<Complex(double index, const Complex& z)> closed_form;  // may be null

    void validate() const {
        if (!(std::abs(target) > band))
            throw PreconditionViolation("family target |a| must exceed the band k0");
        if (!generator) throw PreconditionViolation("family has no generator");
    }
};

namespace detail {

inline Rational binomial(unsigned long n, unsigned long j) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, j);
    return Rational(b);
}

inline Rational rational_pow(const Rational& q, unsigned long e) {
    Rational acc(1);
    Rational base = q;
    for (unsigned long m = e; m != 0; m >>= 1) {
        if (m & 1) acc *= base;
        if (m > 1) base *= base;
    }
    return acc;
}

// LU factorization with partial pivoting over Real. Throws SingularSystem
// when a pivot falls below 2^{8 - bits} relative to the matrix scale.
struct RealLU {
    std::vector<std::vector<Real>> lu;
    std::vector<size_t> perm;
    unsigned bits;

    static RealLU factor(std::vector<std::vector<Real>> a, unsigned bits) {
        const size_t n = a.size();
        Real scale(0.0, bits);
        for (const auto& row : a)
            for (const Real& x : row) scale = max(scale, abs(x));
        Real floor = Real::two_pow(8 - static_cast<long>(bits), bits) * max(scale, Real(1.0, bits));
        RealLU f{std::move(a), {}, bits};
        f.perm.resize(n);
        for (size_t i = 0; i < n; ++i) f.perm[i] = i;
        for (size_t col = 0; col < n; ++col) {
            size_t p = col;
            for (size_t r = col + 1; r < n; ++r)
                if (abs(f.lu[r][col]) > abs(f.lu[p][col])) p = r;
            if (abs(f.lu[p][col]) < floor)
                throw SingularSystem("pivot below 2^{8-bits} of the matrix scale");
            std::swap(f.lu[p], f.lu[col]);
            std::swap(f.perm[p], f.perm[col]);
            for (size_t r = col + 1; r < n; ++r) {
                Real m = f.lu[r][col] / f.lu[col][col];
                f.lu[r][col] = m;
                for (size_t c = col + 1; c < n; ++c) f.lu[r][c] -= m * f.lu[col][c];
            }
        }
        return f;
    }

    std::vector<Complex> solve(const std::vector<Complex>& rhs) const {
        const size_t n = lu.size();
        std::vector<Complex> y(n, Complex(bits));
        for (size_t r = 0; r < n; ++r) {
            Complex acc = rhs[perm[r]];
            for (size_t c = 0; c < r; ++c) acc -= Complex(lu[r][c]) * y[c];
            y[r] = acc;
        }
        for (size_t r = n; r-- > 0;) {
            Complex acc = y[r];
            for (size_t c = r + 1; c < n; ++c) acc -= Complex(lu[r][c]) * y[c];
            y[r] = acc / Complex(lu[r][r]);
        }
        return y;
    }
};

inline double infinity_norm(const std::vector<std::vector<Real>>& a) {
    double best = 0.0;
    for (const auto& row : a) {
        Real s(0.0, kMinBits);
        for (const Real& x : row) s += abs(x);
        best = std::max(best, s.to_double());
    }
    return best;
}

}  // namespace detail

// Equispaced frequencies 1 - 2j/n, j = 0..n, as exact rationals ({0} at n=0).
inline std::vector<Rational> equispaced_freqs(int n) {
    std::vector<Rational> out;
    if (n == 0) {
        out.emplace_back(0);
        return out;
    }
    for (int j = 0; j <= n; ++j) {
        Rational q(n - 2 * j, n);
        q.canonicalize();
        out.push_back(std::move(q));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Binomial-coefficient construction: atoms at 1 - 2j/n with weights
// C_j(n) = binom(n, j) ((1+a)/2)^{n-j} ((1-a)/2)^j and closed form
// (cos(z/n) + i a sin(z/n))^n.
// ---------------------------------------------------------------------------

inline BorelMeasure standard_measure(double a, int n, const PrecisionPolicy& policy = {}) {
    if (n < 1) throw PreconditionViolation("binomial construction needs n >= 1");
    if (!(std::abs(a) > 1.0)) throw PreconditionViolation("binomial construction needs |a| > 1");
    Rational aq = rational_from_double(a);
    Rational plus = (1 + aq) / 2, minus = (1 - aq) / 2;
    DiscreteExact exact;
    double log2_kappa2 = 0.0;
    std::vector<Rational> freqs = equispaced_freqs(n);
    for (int j = 0; j <= n; ++j) {
        Rational w = detail::binomial(n, j) * detail::rational_pow(plus, n - j) *
                     detail::rational_pow(minus, j);
        log2_kappa2 = std::max(log2_kappa2, rational_log2_abs(w));
        exact.atoms.emplace_back(freqs[j], RationalComplex(w, Rational(0)));
    }
    unsigned bits = policy.escalate(n, std::exp2(std::min(log2_kappa2, 1000.0)));
    std::vector<Atom> atoms;
    atoms.reserve(exact.atoms.size());
    for (const auto& [loc, w] : exact.atoms)
        atoms.push_back({to_real(loc, bits), w.to_complex(bits)});
    return BorelMeasure::discrete(1.0, std::move(atoms), std::move(exact));
}

inline Complex standard_closed_form(double a, int n, const Complex& z) {
    unsigned bits = z.bits();
    Complex zn = z / static_cast<double>(n);
    Complex base = cos(zn) + Complex(0.0, a, bits) * sin(zn);
    return pow_int(base, n);
}

inline SuperoscFamily standard_family(double a, const PrecisionPolicy& policy = {}) {
    SuperoscFamily f;
    f.label = "standard(a=" + std::to_string(a) + ")";
    f.band = 1.0;
    f.target = a;
    f.index_kind = SuperoscFamily::IndexKind::Integer;
    f.generator = [a, policy](double idx) {
        return standard_measure(a, static_cast<int>(idx), policy);
    };
    f.closed_form = [a](double idx, const Complex& z) {
        return standard_closed_form(a, static_cast<int>(idx), z);
    };
    f.validate();
    return f;
}

// ---------------------------------------------------------------------------
// Prescribed-frequency construction with the product-formula weights
// C_j = prod_{l != j} (k_l - a)/(k_l - k_j), solved exactly in rational
// arithmetic. The resulting measure matches the plane-wave Taylor data at 0
// through order n.
// ---------------------------------------------------------------------------

inline std::vector<RationalComplex> lagrange_weights_exact(const std::vector<Rational>& freqs,
                                                           const Rational& a) {
    const size_t n1 = freqs.size();
    for (size_t i = 0; i < n1; ++i)
        for (size_t j = i + 1; j < n1; ++j)
            if (freqs[i] == freqs[j]) throw DuplicateFrequency("coinciding frequencies");
    std::vector<RationalComplex> w;
    w.reserve(n1);
    for (size_t j = 0; j < n1; ++j) {
        Rational c(1);
        for (size_t l = 0; l < n1; ++l) {
            if (l == j) continue;
            c *= (freqs[l] - a) / (freqs[l] - freqs[j]);
        }
        w.emplace_back(c, Rational(0));
    }
    return w;
}

inline BorelMeasure lagrange_measure(const std::vector<Rational>& freqs, const Rational& a,
                                     double k0 = 1.0, const PrecisionPolicy& policy = {}) {
    if (freqs.empty()) throw PreconditionViolation("need at least one frequency");
    for (const Rational& f : freqs)
        if (abs(f) > rational_from_double(k0))
            throw PreconditionViolation("frequency outside [-k0, k0]");
    if (!(abs(a) > rational_from_double(k0)))
        throw PreconditionViolation("target |a| must exceed k0");
    std::vector<RationalComplex> w = lagrange_weights_exact(freqs, a);
    double log2_kappa = 0.0;
    for (const RationalComplex& c : w) log2_kappa = std::max(log2_kappa, rational_log2_abs(c.re));
    int n = static_cast<int>(freqs.size()) - 1;
    unsigned bits = policy.escalate(std::max(n, 1), std::exp2(std::min(log2_kappa, 1000.0)));
    DiscreteExact exact;
    std::vector<Atom> atoms;
    for (size_t j = 0; j < freqs.size(); ++j) {
        exact.atoms.emplace_back(freqs[j], w[j]);
        atoms.push_back({to_real(freqs[j], bits), w[j].to_complex(bits)});
    }
    return BorelMeasure::discrete(k0, std::move(atoms), std::move(exact));
}

inline SuperoscFamily lagrange_equispaced_family(double a, const PrecisionPolicy& policy = {}) {
    if (!(std::abs(a) > 1.0)) throw PreconditionViolation("target |a| must exceed k0 = 1");
    SuperoscFamily f;
    f.label = "lagrange-equispaced(a=" + std::to_string(a) + ")";
    f.band = 1.0;
    f.target = a;
    f.index_kind = SuperoscFamily::IndexKind::Integer;
    f.taylor_matched = true;
    Rational aq = rational_from_double(a);
    f.generator = [aq, policy](double idx) {
        return lagrange_measure(equispaced_freqs(static_cast<int>(idx)), aq, 1.0, policy);
    };
    f.validate();
    return f;
}

// ---------------------------------------------------------------------------
// Direct solve of the power-moment system S c = (a^l) on point frequencies,
// for cross-validation against the product formula. Reports an infinity-norm
// condition estimate.
// ---------------------------------------------------------------------------

struct VandermondeSolution {
    std::vector<Complex> coeffs;
    double condition_estimate = 0.0;
};

inline VandermondeSolution vandermonde_solve(const std::vector<Real>& freqs, const Real& a,
                                             unsigned bits) {
    const size_t n1 = freqs.size();
    if (n1 == 0) throw PreconditionViolation("need at least one frequency");
    Real gap_tol = Real::two_pow(-static_cast<long>(bits) / 2, bits);
    for (size_t i = 0; i < n1; ++i)
        for (size_t j = i + 1; j < n1; ++j)
            if (abs(freqs[i] - freqs[j]) < gap_tol)
                throw DuplicateFrequency("frequencies coincide within merge tolerance");

    std::vector<std::vector<Real>> s(n1, std::vector<Real>(n1, Real(bits)));
    std::vector<Complex> rhs(n1, Complex(bits));
    for (size_t l = 0; l < n1; ++l) {
        for (size_t j = 0; j < n1; ++j)
            s[l][j] = pow_int(freqs[j].at_bits(bits), static_cast<long>(l));
        rhs[l] = Complex(pow_int(a.at_bits(bits), static_cast<long>(l)));
    }
    detail::RealLU lu = detail::RealLU::factor(s, bits);
    VandermondeSolution out;
    out.coeffs = lu.solve(rhs);

    double inv_norm = 0.0;
    for (size_t col = 0; col < n1; ++col) {
        std::vector<Complex> e(n1, Complex(bits));
        e[col] = Complex(1.0, 0.0, bits);
        std::vector<Complex> x = lu.solve(e);
        double colsum = 0.0;
        for (const Complex& v : x) colsum += abs(v).to_double();
        inv_norm = std::max(inv_norm, colsum);
    }
    out.condition_estimate = detail::infinity_norm(s) * inv_norm;
    return out;
}

// ---------------------------------------------------------------------------
// Moment construction over a nonnegative weight h: solve the Hankel system
// M d = (a^l) with (M)_{j,l} = int k^{j+l} h(k) dk and d_j = i^j C_j, and
// attach the evaluator sum_j C_j f^{(j)}(z) as a weighted-density measure.
// ---------------------------------------------------------------------------

struct DensityInput {
    double lo = -1.0, hi = 1.0;
    Integrand fn;
    std::function<std::optional<Rational>(long)> exact_moment;
    std::string descriptor_json;
};

inline DensityInput uniform_density(double value, double lo, double hi) {
    DensityInput d;
    d.lo = lo;
    d.hi = hi;
    d.fn = [value](const Real& k) { return Complex(Real(value, k.bits()), Real(k.bits())); };
    Rational c = rational_from_double(value);
    Rational alpha = rational_from_double(lo), beta = rational_from_double(hi);
    d.exact_moment = [c, alpha, beta](long m) -> std::optional<Rational> {
        Rational num = detail::rational_pow(beta, m + 1) - detail::rational_pow(alpha, m + 1);
        return c * num / Rational(m + 1);
    };
    return d;
}

struct MomentFamilyResult {
    std::vector<Complex> coeffs;                        // C_j(n)
    std::optional<std::vector<RationalComplex>> exact;  // exact rational mode
    BorelMeasure measure;
    std::function<Complex(const Complex&)> evaluator;
};

inline MomentFamilyResult moment_family(const DensityInput& h, int n, double a,
                                        const PrecisionPolicy& policy = {}) {
    if (n < 0) throw PreconditionViolation("moment construction needs n >= 0");
    double k0 = std::max(std::abs(h.lo), std::abs(h.hi));
    if (!(std::abs(a) > k0)) throw PreconditionViolation("target |a| must exceed k0");
    // Hankel systems condition like the Hilbert matrix, ~33.97^n.
    unsigned bits = policy.require(n, 34.0, "moment construction");

    std::optional<std::vector<RationalComplex>> exact;
    std::vector<Complex> coeffs;
    if (h.exact_moment) {
        std::vector<std::vector<RationalComplex>> m(
            n + 1, std::vector<RationalComplex>(n + 1));
        std::vector<RationalComplex> rhs(n + 1);
        Rational aq = rational_from_double(a);
        bool ok = true;
        for (int j = 0; j <= n && ok; ++j)
            for (int l = 0; l <= n; ++l) {
                auto q = h.exact_moment(j + l);
                if (!q) {
                    ok = false;
                    break;
                }
                m[j][l] = RationalComplex(*q, Rational(0));
            }
        if (ok) {
            for (int l = 0; l <= n; ++l)
                rhs[l] = RationalComplex(detail::rational_pow(aq, l), Rational(0));
            auto d = solve_exact(std::move(m), std::move(rhs));
            if (!d) throw SingularSystem("moment matrix is singular (weight not positive?)");
            std::vector<RationalComplex> c;
            c.reserve(d->size());
            for (int j = 0; j <= n; ++j) c.push_back((*d)[j].mul_i_pow(-j));  // C_j = d_j i^{-j}
            for (const RationalComplex& v : c) coeffs.push_back(v.to_complex(bits));
            exact = std::move(c);
        }
    }
    if (!exact) {
        QuadratureSpec q;
        q.working_bits = bits + 32;
        std::vector<std::vector<Real>> m(n + 1, std::vector<Real>(n + 1, Real(bits)));
        std::vector<Complex> rhs(n + 1, Complex(bits));
        Real lo(h.lo, bits), hi(h.hi, bits);
        for (int s = 0; s <= 2 * n; ++s) {
            Integrand f = [&](const Real& k) { return h.fn(k) * Complex(pow_int(k, s)); };
            Real ms = integrate(f, lo, hi, q, bits).re();
            for (int j = std::max(0, s - n); j <= std::min(n, s); ++j) m[j][s - j] = ms;
        }
        for (int l = 0; l <= n; ++l) rhs[l] = Complex(pow_int(Real(a, bits), l));
        detail::RealLU lu = detail::RealLU::factor(std::move(m), bits);
        std::vector<Complex> d = lu.solve(rhs);
        Complex mi(0.0, -1.0, bits);
        for (int j = 0; j <= n; ++j) coeffs.push_back(d[j] * pow_int(mi, j));
    }

    // density h(k) * sum_j C_j (ik)^j
    std::vector<Complex> poly_in_ik = coeffs;
    Integrand base_fn = h.fn;
    Integrand weighted = [poly_in_ik, base_fn](const Real& k) {
        Complex ik(Real(k.bits()), k);
        return base_fn(k) * horner(poly_in_ik, ik);
    };
    QuadratureSpec mq;
    mq.working_bits = bits;
    BorelMeasure measure = BorelMeasure::density(k0, Real(h.lo, bits), Real(h.hi, bits),
                                                 std::move(weighted), mq, h.descriptor_json);
    auto shared = std::make_shared<BorelMeasure>(measure);
    MomentFamilyResult out{std::move(coeffs), std::move(exact), std::move(measure),
                           [shared](const Complex& z) { return eval_transform(*shared, z); }};
    return out;
}

inline SuperoscFamily moment_density_family(const DensityInput& h, double a,
                                            const PrecisionPolicy& policy = {}) {
    SuperoscFamily f;
    f.label = "moment-density(a=" + std::to_string(a) + ")";
    f.band = std::max(std::abs(h.lo), std::abs(h.hi));
    f.target = a;
    f.index_kind = SuperoscFamily::IndexKind::Integer;
    f.taylor_matched = true;
    f.generator = [h, a, policy](double idx) {
        return moment_family(h, static_cast<int>(idx), a, policy).measure;
    };
    f.validate();
    return f;
}

// Szego-class integral int_alpha^beta ln(h(k)) / sqrt((beta-k)(k-alpha)) dk,
// computed as int_0^pi ln h((alpha+beta)/2 + (beta-alpha)/2 cos t) dt; the
// substitution removes the endpoint singularities. A weight vanishing on a
// subinterval surfaces as quadrature non-convergence.
inline Real szego_check(const Integrand& h, double alpha, double beta, unsigned bits,
                        QuadratureSpec quad = {}) {
    if (!(alpha < beta)) throw PreconditionViolation("need alpha < beta");
    Real mid((alpha + beta) / 2.0, bits), half((beta - alpha) / 2.0, bits);
    Integrand f = [&](const Real& t) {
        Real k = mid + half * cos(t);
        Real hv = h(k).re();
        if (!(hv > 0.0))
            throw QuadratureNonConvergence("weight is not positive at k=" +
                                           std::to_string(k.to_double()));
        return Complex(log(hv));
    };
    try {
        return integrate(f, Real(0.0, bits), Real::pi(bits), quad, bits).re();
    } catch (const OverflowError&) {
        throw QuadratureNonConvergence("weight appears to vanish inside the support");
    }
}

// ---------------------------------------------------------------------------
// Gaussian-window integral family F_delta(z) =
//   (1/(delta sqrt(2 pi))) int g(u) e^{i k(u) z} e^{-(u-ia)^2/(2 delta^2)} du.
// ---------------------------------------------------------------------------

namespace detail {

// Truncation radius: beyond R the Gaussian tail (times the growth of g and
// the plane-wave factor) is below tol relative to the integral scale.
inline double berry_truncation_radius(const BerrySpec& spec, double delta, double abs_z,
                                      double rel_tol) {
    double nats = -std::log(rel_tol) + 20.0 + spec.k0 * abs_z + std::log(std::max(spec.g_amp, 1.0));
    double r = std::max(spec.corner_b(), spec.a) + delta;
    for (int it = 0; it < 4; ++it) {
        double need = nats + spec.g_growth * r;
        r = std::sqrt(spec.a * spec.a + 2.0 * delta * delta * need) + delta;
    }
    return r;
}

inline unsigned berry_working_bits(const BerrySpec& spec, double delta, double abs_z,
                                   double radius, unsigned bits) {
    double peak_nats =
        spec.a * spec.a / (2.0 * delta * delta) + spec.k0 * abs_z + spec.g_growth * radius;
    return clamp_bits(bits + static_cast<unsigned>(std::ceil(1.4427 * peak_nats)) + 32);
}

}  // namespace detail

inline Complex berry_eval(const BerrySpec& spec, double delta, const Complex& z,
                          QuadratureSpec quad = {}, unsigned bits = 0) {
    if (!(delta > 0.0)) throw PreconditionViolation("delta must be positive");
    if (bits == 0) bits = std::max(z.bits(), kMinBits);
    double abs_z = abs(z).to_double();
    double radius = detail::berry_truncation_radius(spec, delta, abs_z, quad.rel_tol);
    unsigned wbits = detail::berry_working_bits(spec, delta, abs_z, radius, bits);
    quad.working_bits = wbits;

    Real lo(-radius, wbits), hi(radius, wbits);
    std::vector<Real> splits;
    if (spec.g.real_support) {
        lo = max(lo, Real(spec.g.real_support->first, wbits));
        hi = min(hi, Real(spec.g.real_support->second, wbits));
    }
    if (spec.k.real_support) {
        splits.emplace_back(spec.k.real_support->first, wbits);
        splits.emplace_back(spec.k.real_support->second, wbits);
    }

    Complex zw = z.at_bits(wbits);
    Real inv2d2 = Real(1.0, wbits) / (2.0 * Real(delta, wbits) * Real(delta, wbits));
    Integrand f = [&](const Real& u) {
        Complex shifted(u, Real(-spec.a, wbits));
        Complex expo = Complex(0.0, 1.0, wbits) * spec.k.eval(Complex(u)) * zw -
                       shifted * shifted * Complex(inv2d2);
        return spec.g.eval(Complex(u)) * exp(expo);
    };
    Complex integral = integrate(f, lo, hi, quad, wbits, splits);
    Real prefactor = Real(1.0, wbits) / (Real(delta, wbits) * sqrt(2.0 * Real::pi(wbits)));
    return (Complex(prefactor) * integral).at_bits(bits);
}

// The same integral packaged as a composite measure (Gaussian-weighted base
// density pushed through the frequency function), valid for |z| up to
// z_budget at the stated tolerance.
inline BorelMeasure berry_measure(const BerrySpec& spec, double delta, unsigned bits,
                                  QuadratureSpec quad = {}, double z_budget = 32.0) {
    if (!(delta > 0.0)) throw PreconditionViolation("delta must be positive");
    double radius = detail::berry_truncation_radius(spec, delta, z_budget, quad.rel_tol);
    unsigned wbits = detail::berry_working_bits(spec, delta, z_budget, radius, bits);
    quad.working_bits = wbits;

    double lo = -radius, hi = radius;
    std::vector<Real> splits;
    if (spec.g.real_support) {
        lo = std::max(lo, spec.g.real_support->first);
        hi = std::min(hi, spec.g.real_support->second);
    }
    if (spec.k.real_support) {
        splits.emplace_back(spec.k.real_support->first, wbits);
        splits.emplace_back(spec.k.real_support->second, wbits);
    }
    Real inv2d2 = Real(1.0, wbits) / (2.0 * Real(delta, wbits) * Real(delta, wbits));
    Real prefactor = Real(1.0, wbits) / (Real(delta, wbits) * sqrt(2.0 * Real::pi(wbits)));
    EntireSymbol g = spec.g;
    double a = spec.a;
    Integrand base_fn = [g, a, inv2d2, prefactor](const Real& u) {
        unsigned b = u.bits();
        Complex shifted(u, Real(-a, b));
        return Complex(prefactor) * g.eval(Complex(u)) * exp(-(shifted * shifted) * Complex(inv2d2));
    };
    double base_band = std::max({std::abs(lo), std::abs(hi), 1.0});
    BorelMeasure base = BorelMeasure::density(base_band, Real(lo, wbits), Real(hi, wbits),
                                              std::move(base_fn), quad, "", {}, std::move(splits));
    EntireSymbol map = spec.k;
    map.band_image_bound = spec.k0;
    return BorelMeasure::composite(spec.k0, std::move(base), std::move(map));
}

inline SuperoscFamily berry_family(const BerrySpec& spec, unsigned bits = 128,
                                   QuadratureSpec quad = {}) {
    spec.validate(bits);
    Complex kia = spec.k.value_at_ia ? spec.k.value_at_ia(spec.a, bits)
                                     : spec.k.eval(Complex(0.0, spec.a, bits));
    SuperoscFamily f;
    f.label = "gaussian-window(" + spec.k.label + ",a=" + std::to_string(spec.a) + ")";
    f.band = spec.k0;
    f.target = kia.re().to_double();
    f.index_kind = SuperoscFamily::IndexKind::Scale;
    f.generator = [spec, bits, quad](double delta) {
        return berry_measure(spec, delta, bits, quad);
    };
    f.validate();
    return f;
}

// ---------------------------------------------------------------------------
// The sinc-type family F_delta(z) = (2/delta) e^{-1/delta}
// sinc(sqrt(z^2 - 2iaz/delta - 1/delta^2)) together with its Bessel density
// (1/delta) e^{(ak-1)/delta} J0(sqrt((a^2-1)(1-k^2))/delta) on [-1, 1].
// ---------------------------------------------------------------------------

inline Complex sinc_delta_closed_form(double a, double delta, const Complex& z) {
    if (!(a > 1.0)) throw PreconditionViolation("sinc-type family needs a > 1");
    if (!(delta > 0.0)) throw PreconditionViolation("delta must be positive");
    unsigned bits = z.bits();
    unsigned wbits =
        clamp_bits(bits + static_cast<unsigned>(std::ceil(1.4427 * (a - 1.0) / delta)) + 16);
    Complex zw = z.at_bits(wbits);
    Real d(delta, wbits);
    Complex w = zw * zw - Complex(0.0, 2.0 * a, wbits) * zw / d - Complex(Real(1.0, wbits) / (d * d));
    Real amp = 2.0 * exp(-Real(1.0, wbits) / d) / d;
    return (Complex(amp) * sinc_of_sqrt(w)).at_bits(bits);
}

inline BorelMeasure sinc_delta_measure(double a, double delta, unsigned bits,
                                       QuadratureSpec quad = {}, double z_budget = 32.0) {
    if (!(a > 1.0)) throw PreconditionViolation("sinc-type family needs a > 1");
    if (!(delta > 0.0)) throw PreconditionViolation("delta must be positive");
    double peak_nats = (a - 1.0) / delta + z_budget;
    unsigned wbits = clamp_bits(bits + static_cast<unsigned>(std::ceil(1.4427 * peak_nats)) + 32);
    quad.working_bits = wbits;
    Real aw(a, wbits), d(delta, wbits);
    Integrand fn = [aw, d](const Real& k) {
        unsigned b = k.bits();
        Real amp = exp((aw * k - 1.0) / d) / d;
        Real bessel_arg = sqrt((aw * aw - 1.0) * (1.0 - k * k)) / d;
        return Complex(amp * bessel_j0(bessel_arg, b), Real(b));
    };
    return BorelMeasure::density(1.0, Real(-1.0, wbits), Real(1.0, wbits), std::move(fn), quad);
}

inline SuperoscFamily sinc_delta_family(double a, unsigned bits = 128, QuadratureSpec quad = {}) {
    SuperoscFamily f;
    f.label = "sinc-type(a=" + std::to_string(a) + ")";
    f.band = 1.0;
    f.target = a;
    f.index_kind = SuperoscFamily::IndexKind::Scale;
    f.generator = [a, bits, quad](double delta) { return sinc_delta_measure(a, delta, bits, quad); };
    f.closed_form = [a](double delta, const Complex& z) {
        return sinc_delta_closed_form(a, delta, z);
    };
    f.validate();
    return f;
}

// ---------------------------------------------------------------------------
// Band-limited collocation: F(x) = sum c_l sinc(x - x_l) with prescribed
// values F(x_j) = v_j, solved from the collocation matrix sinc(x_j - x_l).
// ---------------------------------------------------------------------------

struct SincInterpolation {
    std::vector<Complex> coeffs;
    std::vector<Real> points;
    BorelMeasure measure;  // band-1 density (1/2) sum c_l e^{-i k x_l}
    std::function<Complex(const Complex&)> evaluator;
};

inline SincInterpolation sinc_interpolation(const std::vector<Real>& points,
                                            const std::vector<Complex>& values, unsigned bits) {
    if (points.empty() || points.size() != values.size())
        throw PreconditionViolation("points and values must be nonempty and equal-length");
    const size_t n = points.size();
    std::vector<std::vector<Real>> m(n, std::vector<Real>(n, Real(bits)));
    for (size_t j = 0; j < n; ++j)
        for (size_t l = 0; l < n; ++l)
            m[j][l] = csinc(Complex(points[j].at_bits(bits) - points[l].at_bits(bits))).re();
    detail::RealLU lu = detail::RealLU::factor(std::move(m), bits);
    std::vector<Complex> c = lu.solve(values);

    auto pts = std::make_shared<std::vector<Real>>(points);
    auto cs = std::make_shared<std::vector<Complex>>(c);
    Integrand density = [pts, cs, bits](const Real& k) {
        Complex acc(bits);
        Complex mik = Complex(0.0, -1.0, bits) * Complex(k);
        for (size_t l = 0; l < pts->size(); ++l) acc += (*cs)[l] * exp(mik * Complex((*pts)[l]));
        return acc * 0.5;
    };
    BorelMeasure measure =
        BorelMeasure::density(1.0, Real(-1.0, bits), Real(1.0, bits), std::move(density));
    auto evaluator = [pts, cs](const Complex& z) {
        Complex acc(z.bits());
        for (size_t l = 0; l < pts->size(); ++l) acc += (*cs)[l] * csinc(z - Complex((*pts)[l]));
        return acc;
    };
    return {std::move(c), points, std::move(measure), std::move(evaluator)};
}

}  // namespace superosc
