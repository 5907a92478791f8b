#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <queue>
#include <vector>

#include "superosc/complex.hpp"
#include "superosc/errors.hpp"

namespace superosc {

struct QuadratureSpec {
    double rel_tol = 1e-12;
    double abs_tol = 1e-300;  // guard floor only; rel_tol does the work
    int max_panels = 4096;
    unsigned gl_order = 16;   // nodes per panel; 2x order gives the error estimate
    unsigned working_bits = 0;  // 0 = inherit the caller's precision
};

struct GaussLegendreRule {
    std::vector<Real> nodes;    // on (-1, 1)
    std::vector<Real> weights;
};

namespace detail {

// Legendre P_n and P_n' by recurrence.
inline void legendre_pair(unsigned n, const Real& x, Real& p, Real& dp) {
    unsigned bits = x.bits();
    Real p0(1.0, bits), p1 = x;
    for (unsigned k = 2; k <= n; ++k) {
        Real pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = pk;
    }
    p = p1;
    dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
}

inline std::shared_ptr<const GaussLegendreRule> make_gl_rule(unsigned order, unsigned bits) {
    unsigned wbits = clamp_bits(bits + 32);
    auto rule = std::make_shared<GaussLegendreRule>();
    rule->nodes.resize(order);
    rule->weights.resize(order);
    Real tol = Real::two_pow(-static_cast<long>(bits) - 16, wbits);
    for (unsigned i = 0; i < (order + 1) / 2; ++i) {
        double guess = std::cos(M_PI * (static_cast<double>(i) + 0.75) /
                                (static_cast<double>(order) + 0.5));
        Real x(guess, wbits);
        Real p(wbits), dp(wbits);
        for (int it = 0; it < 200; ++it) {
            legendre_pair(order, x, p, dp);
            Real dx = p / dp;
            x -= dx;
            if (abs(dx) < tol) break;
        }
        legendre_pair(order, x, p, dp);
        Real w = Real(2.0, wbits) / ((1.0 - x * x) * dp * dp);
        rule->nodes[i] = (-x).at_bits(bits + 16);
        rule->weights[i] = w.at_bits(bits + 16);
        rule->nodes[order - 1 - i] = x.at_bits(bits + 16);
        rule->weights[order - 1 - i] = rule->weights[i];
    }
    return rule;
}

}  // namespace detail

inline std::shared_ptr<const GaussLegendreRule> gl_rule(unsigned order, unsigned bits) {
    static std::mutex mu;
    static std::map<std::pair<unsigned, unsigned>, std::shared_ptr<const GaussLegendreRule>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(order, bits);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto rule = detail::make_gl_rule(order, bits);
    cache[key] = rule;
    return rule;
}

using Integrand = std::function<Complex(const Real&)>;

namespace detail {

inline Complex gl_apply(const GaussLegendreRule& rule, const Integrand& f, const Real& lo,
                        const Real& hi, unsigned bits) {
    Real mid = (lo + hi) / 2.0;
    Real half = (hi - lo) / 2.0;
    Complex acc(bits);
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
        Real k = mid + half * rule.nodes[i];
        acc += rule.weights[i] * f(k);
    }
    return Complex(half) * acc;
}

struct Panel {
    Real lo, hi;
    Complex value;  // higher-order estimate
    Real err;
    double err_key;
};

}  // namespace detail

// Adaptive Gauss-Legendre integration of a complex-valued integrand over
// [lo, hi]. Panels are bisected worst-error-first until the summed error
// estimate (|GL_m - GL_2m| per panel) meets the tolerance. interior_splits
// force panel boundaries, e.g. at integrand kinks.
inline Complex integrate(const Integrand& f, const Real& lo, const Real& hi,
                         const QuadratureSpec& spec, unsigned bits,
                         const std::vector<Real>& interior_splits = {}) {
    unsigned wbits = spec.working_bits ? std::max(spec.working_bits, kMinBits) : bits;
    auto coarse = gl_rule(spec.gl_order, wbits);
    auto fine = gl_rule(2 * spec.gl_order, wbits);

    Real a = lo.at_bits(wbits), b = hi.at_bits(wbits);
    if (a == b) return Complex(wbits).at_bits(bits);

    auto make_panel = [&](const Real& pa, const Real& pb) {
        detail::Panel p{pa, pb, Complex(wbits), Real(wbits), 0.0};
        Complex rough = detail::gl_apply(*coarse, f, pa, pb, wbits);
        p.value = detail::gl_apply(*fine, f, pa, pb, wbits);
        p.err = abs(p.value - rough);
        p.err_key = p.err.log2_abs_approx();
        return p;
    };

    std::vector<Real> cuts;
    for (const Real& s : interior_splits)
        if (s > a && s < b) cuts.push_back(s.at_bits(wbits));
    std::sort(cuts.begin(), cuts.end());

    auto cmp = [](const detail::Panel& x, const detail::Panel& y) { return x.err_key < y.err_key; };
    std::priority_queue<detail::Panel, std::vector<detail::Panel>, decltype(cmp)> heap(cmp);
    Real prev = a;
    int n_panels = 0;
    for (const Real& c : cuts) {
        heap.push(make_panel(prev, c));
        prev = c;
        ++n_panels;
    }
    heap.push(make_panel(prev, b));
    ++n_panels;

    Complex total(wbits);
    Real err_sum(wbits), scale(wbits);
    auto rebuild = [&] {
        auto copy = heap;
        total = Complex(wbits);
        err_sum = Real(wbits);
        scale = Real(wbits);
        while (!copy.empty()) {
            total += copy.top().value;
            err_sum += copy.top().err;
            scale += abs(copy.top().value);
            copy.pop();
        }
    };
    rebuild();

    int splits_since_rebuild = 0;
    while (true) {
        Real tol = max(Real(spec.abs_tol, wbits),
                       max(spec.rel_tol * abs(total),
                           Real::two_pow(8 - static_cast<long>(wbits), wbits) * scale));
        if (err_sum <= tol) return total.at_bits(bits);
        if (n_panels >= spec.max_panels)
            throw QuadratureNonConvergence("panel budget " + std::to_string(spec.max_panels) +
                                           " exhausted before tolerance");
        detail::Panel worst = heap.top();
        heap.pop();
        Real mid = (worst.lo + worst.hi) / 2.0;
        detail::Panel left = make_panel(worst.lo, mid);
        detail::Panel right = make_panel(mid, worst.hi);
        total += left.value + right.value - worst.value;
        err_sum += left.err + right.err - worst.err;
        scale += abs(left.value) + abs(right.value) - abs(worst.value);
        heap.push(std::move(left));
        heap.push(std::move(right));
        ++n_panels;
        if (++splits_since_rebuild >= 128) {
            rebuild();  // running sums drift; refresh exactly
            splits_since_rebuild = 0;
        }
    }
}

}  // namespace superosc
