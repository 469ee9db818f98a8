#ifndef RBFWT_QUADRATURE_HPP
#define RBFWT_QUADRATURE_HPP

// Gauss-Legendre rules on finite intervals and panel-summed truncation of
// semi-infinite integrals with decay-class-specific stopping. Everything is
// deterministic: same inputs, same nodes, same result bits.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "errors.hpp"

namespace rbfwt {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    double a = 0.0;
    double b = 1.0;
};

// Nodes by Newton iteration on the Legendre recurrence; exact for
// polynomials up to degree 2*count - 1.
inline QuadratureRule make_gauss_legendre(int count, double a, double b) {
    if (count < 1)
        throw domain_error("make_gauss_legendre requires count >= 1");
    if (!(a < b))
        throw domain_error("make_gauss_legendre requires a < b, got [" +
                           detail::num_str(a) + ", " + detail::num_str(b) + "]");
    const int n = count;
    QuadratureRule rule;
    rule.a = a;
    rule.b = b;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const double xm = 0.5 * (b + a);
    const double xl = 0.5 * (b - a);
    const int m = (n + 1) / 2;
    constexpr double pi = 3.14159265358979323846;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) <= 1e-15 * std::max(1.0, std::abs(z))) break;
        }
        rule.nodes[i] = xm - xl * z;
        rule.nodes[n - 1 - i] = xm + xl * z;
        const double w = 2.0 * xl / ((1.0 - z * z) * pp * pp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

template <class F>
double integrate(const QuadratureRule& rule, F&& f) {
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double fx = f(rule.nodes[i]);
        if (!std::isfinite(fx))
            throw evaluation_error("integrand non-finite at node x = " +
                                   detail::num_str(rule.nodes[i]));
        sum += rule.weights[i] * fx;
    }
    return sum;
}

enum class decay_hint { gaussian, exponential, oscillatory_bessel };

struct semi_infinite_options {
    // oscillatory_bessel: the integrand's asymptotic half-period (Bessel zero
    // spacing, pi/scale for J(scale*r)); panels align to it. Ignored otherwise.
    double osc_half_period = 1.0;
    // integration starts here; the caller owns [0, start)
    double start = 0.0;
    int nodes_per_panel = 32;
    int max_panels = 4096;
    int min_panels = 4;
};

namespace detail {

// Euler transformation of a sequence of partial sums: repeated pairwise
// averaging; the last value converges fast for alternating panel sums.
inline double euler_accelerate(std::vector<double> s) {
    while (s.size() > 1) {
        for (std::size_t i = 0; i + 1 < s.size(); ++i)
            s[i] = 0.5 * (s[i] + s[i + 1]);
        s.pop_back();
    }
    return s[0];
}

} // namespace detail

// Panel-summed Gauss-Legendre on (0, inf) with truncation chosen so the
// estimated tail is below tol. Alternating panel sums (oscillatory kernels)
// are Euler-accelerated; monotone tails stop on a geometric-ratio bound.
template <class F>
double integrate_semi_infinite(F&& f, decay_hint hint, double tol,
                               semi_infinite_options opt = {}) {
    if (!(tol > 0.0))
        throw domain_error("integrate_semi_infinite requires tol > 0");
    if (!(opt.start >= 0.0) || !std::isfinite(opt.start))
        throw domain_error("integrate_semi_infinite requires start >= 0");
    double width = 0.0;
    int subpanels = 1;
    switch (hint) {
        case decay_hint::gaussian:           width = 1.0; break;
        case decay_hint::exponential:        width = 2.0; break;
        case decay_hint::oscillatory_bessel:
            // one Euler term per half period so alternation survives even
            // when the period is long; Gauss sub-panels stay <= 8 wide
            if (!(opt.osc_half_period > 0.0))
                throw domain_error("oscillatory_bessel hint requires a positive half period");
            width = opt.osc_half_period;
            subpanels = std::max(1, static_cast<int>(std::ceil(width / 8.0)));
            break;
    }
    const QuadratureRule base = make_gauss_legendre(opt.nodes_per_panel, 0.0, 1.0);

    std::vector<double> partial;       // partial sums S_k
    partial.reserve(64);
    double total = 0.0;
    double prev_panel = 0.0;
    double prev_accel = 0.0;
    bool have_accel = false;
    int accel_stable = 0;

    for (int k = 0; k < opt.max_panels; ++k) {
        const double lo = opt.start + k * width;
        const double sw = width / subpanels;
        double panel = 0.0;
        for (int s = 0; s < subpanels; ++s) {
            const double slo = lo + sw * s;
            for (std::size_t i = 0; i < base.nodes.size(); ++i) {
                const double x = slo + sw * base.nodes[i];
                const double fx = f(x);
                if (!std::isfinite(fx))
                    throw evaluation_error("integrand non-finite at node x = " +
                                           detail::num_str(x));
                panel += sw * base.weights[i] * fx;
            }
        }
        total += panel;
        partial.push_back(total);

        if (k + 1 >= opt.min_panels) {
            const double ap = std::abs(panel);
            const double app = std::abs(prev_panel);
            if (ap == 0.0 && app == 0.0)
                return total;
            if (panel * prev_panel < 0.0) {
                // alternating tail: accelerate the last few partial sums; the
                // change between successive accelerated estimates is the error
                // estimate (panel sums themselves may decay arbitrarily slowly)
                const std::size_t mstart = partial.size() > 24 ? partial.size() - 24 : 0;
                const double accel = detail::euler_accelerate(
                    std::vector<double>(partial.begin() + mstart, partial.end()));
                if (have_accel && std::abs(accel - prev_accel) < 0.5 * tol) {
                    if (++accel_stable >= 2)
                        return accel;
                } else {
                    accel_stable = 0;
                }
                prev_accel = accel;
                have_accel = true;
            } else if (app > 0.0 && ap < app) {
                // monotone-decaying tail: geometric bound with safety factor
                const double rho = ap / app;
                const double tail = ap * rho / (1.0 - rho);
                if (3.0 * tail < tol && ap < tol)
                    return total + (panel > 0.0 ? tail : -tail);
            }
        }
        prev_panel = panel;
    }
    throw divergence_error("semi-infinite integral did not converge to tol = " +
                           detail::num_str(tol) + " within " +
                           std::to_string(opt.max_panels) + " panels");
}

} // namespace rbfwt

#endif
