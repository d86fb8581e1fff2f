#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace bogal {

/// Gauss-Legendre rule on the reference interval [-1, 1].
struct QuadratureRule {
    int order = 0;
    std::vector<double> nodes;    // ascending, symmetric about 0
    std::vector<double> weights;  // positive, summing to 2
};

namespace detail {

/// Legendre roots by Newton iteration from the Chebyshev-based initial
/// guesses; converges to ~1e-15 in a handful of sweeps.
inline QuadratureRule make_gauss_legendre(int n) {
    QuadratureRule rule;
    rule.order = n;
    rule.nodes.assign(n, 0.0);
    rule.weights.assign(n, 0.0);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int sweep = 0; sweep < 64; ++sweep) {
            double p = 1.0, pm = 0.0;
            for (int k = 0; k < n; ++k) {
                const double pmm = pm;
                pm = p;
                p = ((2.0 * k + 1.0) * x * pm - k * pmm) / (k + 1.0);
            }
            dp = n * (x * p - pm) / (x * x - 1.0);
            const double step = p / dp;
            x -= step;
            if (std::abs(step) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

}  // namespace detail

/// Cached rule lookup. Supported orders: 1..32.
inline const QuadratureRule& gauss_legendre(int n) {
    constexpr int kMaxOrder = 32;
    if (n < 1 || n > kMaxOrder)
        throw std::invalid_argument("gauss_legendre: order must be in [1, 32]");
    static const std::array<QuadratureRule, kMaxOrder + 1> table = [] {
        std::array<QuadratureRule, kMaxOrder + 1> t;
        for (int k = 1; k <= kMaxOrder; ++k) t[k] = detail::make_gauss_legendre(k);
        return t;
    }();
    return table[n];
}

/// Integrate f over [a, b] by the affine map of the reference rule.
template <class F>
double integrate_panel(const QuadratureRule& rule, double a, double b, F&& f) {
    const double mid = 0.5 * (a + b);
    const double hw = 0.5 * (b - a);
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        acc += rule.weights[i] * f(mid + hw * rule.nodes[i]);
    return hw * acc;
}

/// Principal value over [-a, a] of h(x-y)K(y) with K odd and simple-pole
/// singular at y=0: the caller folds the integrand into
/// F(y) = [h(x-y) - h(x+y)]K(y) for y>0, which extends continuously to 0,
/// and this helper integrates F over (0, a]. Nodes never touch y=0.
template <class F>
double pv_integrate_symmetric(const QuadratureRule& rule, double half_width, F&& paired) {
    return integrate_panel(rule, 0.0, half_width, paired);
}

}  // namespace bogal
