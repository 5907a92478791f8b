#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "superosc/families.hpp"
#include "superosc/measure.hpp"

namespace superosc {

using Evaluator = std::function<Complex(const Complex&)>;

// Sampling grid for weighted sup estimates: circles at geometrically spaced
// radii r_max/2^{n_radii-1} .. r_max plus the origin, n_angles points each.
struct GridSpec {
    double r_max = 4.0;
    int n_radii = 5;
    int n_angles = 8;
};

// Grid estimate of sup_z |F(z) - G(z)| e^{-B|z|}; a lower bound on the true
// weighted sup, suitable for monotonicity verdicts, not certification.
inline Real a1_distance(const Evaluator& f, const Evaluator& g, double weight_b,
                        const GridSpec& grid, unsigned bits) {
    if (!(grid.r_max > 0.0) || grid.n_radii < 1 || grid.n_angles < 1)
        throw PreconditionViolation("bad grid");
    Real best(0.0, bits);
    auto probe = [&](const Complex& z) {
        Real d = abs(f(z) - g(z)) * exp(Real(-weight_b, bits) * abs(z));
        best = max(best, d);
    };
    probe(Complex(bits));
    for (int ri = 0; ri < grid.n_radii; ++ri) {
        double r = grid.r_max / std::exp2(static_cast<double>(grid.n_radii - 1 - ri));
        for (int ai = 0; ai < grid.n_angles; ++ai) {
            Real theta = 2.0 * Real::pi(bits) * static_cast<double>(ai) /
                         static_cast<double>(grid.n_angles);
            probe(Complex(Real(r, bits) * cos(theta), Real(r, bits) * sin(theta)));
        }
    }
    return best;
}

// Derivative-matching defect F^{(l)}(0) - (ia)^l = i^l moment_l - (ia)^l,
// computed through moments (exactly when the measure carries exact data).
inline Complex taylor_defect(const BorelMeasure& m, double a, long l, unsigned bits = 0) {
    if (bits == 0) bits = m.bits();
    if (auto exact = moment_exact(m, l)) {
        Rational aq = rational_from_double(a);
        RationalComplex d = (*exact - RationalComplex(detail::rational_pow(aq, l), Rational(0)))
                                .mul_i_pow(l);
        return d.to_complex(bits);
    }
    Complex ml = moment(m, l, bits);
    Complex il = pow_int(Complex(0.0, 1.0, bits), l);
    Complex ial = pow_int(Complex(0.0, a, bits), l);
    return il * ml - ial;
}

// Closed-form tail bound ((n+1) kappa^n + 1) / (kappa (1+kappa)^n)
// * e^{|a|(1+kappa)|z|} with kappa = kappa1*kappa2, valid for measures
// satisfying the total-variation and coefficient growth hypotheses.
inline Real taylor_tail_bound(double kappa1, double kappa2, long n, double a, const Complex& z) {
    if (!(kappa1 > 0.0) || !(kappa2 > 0.0))
        throw PreconditionViolation("kappa constants must be positive");
    unsigned bits = z.bits();
    Real kk(kappa1 * kappa2, bits);
    Real kn = pow_int(kk, n);
    Real factor = (static_cast<double>(n + 1) * kn + 1.0) / (kk * pow_int(1.0 + kk, n));
    return factor * exp(Real(std::abs(a), bits) * (1.0 + kk) * abs(z));
}

// min over n <= n_max and j of (prod_{l != j} |k_l - k_j|)^{1/n}: the
// geometric separation rate of an indexed frequency table.
inline double separation_kappa(const std::function<std::vector<Real>(int)>& freqs_per_n,
                               int n_max, unsigned bits = 256) {
    double best = 1e308;
    for (int n = 1; n <= n_max; ++n) {
        std::vector<Real> freqs = freqs_per_n(n);
        const size_t count = freqs.size();
        for (size_t j = 0; j < count; ++j) {
            Real log_prod(0.0, bits);
            for (size_t l = 0; l < count; ++l) {
                if (l == j) continue;
                Real gap = abs(freqs[l].at_bits(bits) - freqs[j].at_bits(bits));
                if (gap.is_zero()) throw DuplicateFrequency("coinciding frequencies at n=" +
                                                            std::to_string(n));
                log_prod += log(gap);
            }
            best = std::min(best, std::exp(log_prod.to_double() / static_cast<double>(n)));
        }
    }
    return best;
}

// Im(d/dx log F) by central difference; refuses near zeros of F, where the
// quotient is meaningless.
inline Real local_wavenumber(const Evaluator& f, const Real& x, const Real& h) {
    if (!(h > 0.0)) throw PreconditionViolation("step must be positive");
    unsigned bits = x.bits();
    Complex fx = f(Complex(x));
    Complex diff = f(Complex(x + h)) - f(Complex(x - h));
    Real deriv_scale = abs(diff) / (2.0 * h);
    if (abs(fx) <= 10.0 * h * deriv_scale)
        throw NearZeroSignal("signal modulus too small at x=" + std::to_string(x.to_double()));
    return (diff / (Complex(2.0 * h) * fx)).im().at_bits(bits);
}

struct ConvergenceReport {
    double weight_b = 0.0;
    std::vector<double> indices;
    std::vector<Real> sup_estimates;
    GridSpec grid;
    bool taylor_applicable = false;
    std::vector<std::vector<Complex>> taylor_defects;  // per index, orders 0..min(n, 12)
    std::optional<std::pair<double, double>> kappas;
    std::vector<Real> bound_values;  // tail bound at |z| = r_max, per index
    enum class Verdict { Decreasing, NonDecreasing, Inconclusive } verdict = Verdict::Inconclusive;
    std::string label;
    unsigned bits = 128;

    static const char* verdict_name(Verdict v) {
        switch (v) {
            case Verdict::Decreasing: return "decreasing";
            case Verdict::NonDecreasing: return "non-decreasing";
            default: return "inconclusive";
        }
    }
};

// Weighted-sup estimates against the target plane wave per index, derivative
// defects for integer-indexed families, and tail-bound values when the growth
// constants are supplied. The verdict reports strict decrease of the grid
// estimator.
inline ConvergenceReport convergence_report(const SuperoscFamily& fam,
                                            const std::vector<double>& indices, double weight_b,
                                            const GridSpec& grid, unsigned bits,
                                            std::optional<std::pair<double, double>> kappas = {}) {
    if (indices.empty()) throw PreconditionViolation("need at least one index");
    fam.validate();
    ConvergenceReport rep;
    rep.weight_b = weight_b;
    rep.indices = indices;
    rep.grid = grid;
    rep.kappas = kappas;
    rep.label = fam.label;
    rep.bits = bits;
    rep.taylor_applicable =
        fam.taylor_matched && fam.index_kind == SuperoscFamily::IndexKind::Integer;

    double a = fam.target;
    Evaluator wave = [a, bits](const Complex& z) {
        return exp(Complex(0.0, a, std::max(bits, z.bits())) * z);
    };

    for (double idx : indices) {
        std::optional<BorelMeasure> measure;
        if (!fam.closed_form || fam.index_kind == SuperoscFamily::IndexKind::Integer)
            measure = fam.generator(idx);
        Evaluator f;
        if (fam.closed_form) {
            f = [&fam, idx](const Complex& z) { return fam.closed_form(idx, z); };
        } else {
            f = [&measure](const Complex& z) { return eval_transform(*measure, z); };
        }
        rep.sup_estimates.push_back(a1_distance(f, wave, weight_b, grid, bits));

        if (fam.index_kind == SuperoscFamily::IndexKind::Integer && measure) {
            long n = static_cast<long>(idx);
            std::vector<Complex> defects;
            for (long l = 0; l <= std::min(n, 12l); ++l)
                defects.push_back(taylor_defect(*measure, a, l, bits));
            rep.taylor_defects.push_back(std::move(defects));
        }
        if (kappas) {
            Complex z_edge(grid.r_max, 0.0, bits);
            rep.bound_values.push_back(taylor_tail_bound(kappas->first, kappas->second,
                                                         static_cast<long>(idx), a, z_edge));
        }
    }

    if (rep.sup_estimates.size() < 2) {
        rep.verdict = ConvergenceReport::Verdict::Inconclusive;
    } else {
        bool decreasing = true;
        for (size_t i = 1; i < rep.sup_estimates.size(); ++i)
            decreasing = decreasing && rep.sup_estimates[i] < rep.sup_estimates[i - 1];
        rep.verdict = decreasing ? ConvergenceReport::Verdict::Decreasing
                                 : ConvergenceReport::Verdict::NonDecreasing;
    }
    return rep;
}

}  // namespace superosc
