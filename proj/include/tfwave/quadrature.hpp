#pragma once

// Gauss-Legendre rules, adaptive panel integration for complex-valued
// integrands on real intervals, and barycentric interpolation on
// Gauss-Legendre nodes.

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace tfwave {

using cplx = std::complex<double>;

struct GaussRule {
    std::vector<double> nodes;    // on [-1, 1], ascending
    std::vector<double> weights;  // positive, sum 2
};

/// n-point Gauss-Legendre rule by Newton iteration on P_n.
inline GaussRule gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n >= 1 required");
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) {
                // one polishing step
                double q0 = 1.0, q1 = x;
                for (int k = 2; k <= n; ++k) {
                    const double q2 = ((2 * k - 1) * x * q1 - (k - 1) * q0) / k;
                    q0 = q1;
                    q1 = q2;
                }
                dp = n * (x * q1 - q0) / (x * x - 1.0);
                x -= q1 / dp;
                break;
            }
        }
        rule.nodes[n - 1 - i] = x;
        rule.nodes[i] = -x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

/// Shared fixed-order rules (immutable after first use).
inline const GaussRule& gauss_rule_cached(int n) {
    static const int kMax = 256;
    static std::vector<GaussRule> cache(kMax + 1);
    if (n < 1 || n > kMax) throw std::invalid_argument("gauss_rule_cached: order out of range");
    if (cache[n].nodes.empty()) cache[n] = gauss_legendre(n);
    return cache[n];
}

template <class F>
cplx gauss_apply(const GaussRule& rule, F&& f, double a, double b) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    cplx acc = 0.0;
    for (size_t k = 0; k < rule.nodes.size(); ++k)
        acc += rule.weights[k] * f(mid + half * rule.nodes[k]);
    return half * acc;
}

struct AdaptiveResult {
    cplx value{0.0, 0.0};
    double err = 0.0;     // accumulated error estimate
    bool converged = true;
    long evals = 0;
};

namespace detail {

template <class F>
void adaptive_rec(const GaussRule& rule, F& f, double a, double b, double tol,
                  int depth, AdaptiveResult& out) {
    const cplx whole = gauss_apply(rule, f, a, b);
    out.evals += long(rule.nodes.size());
    // Below this width, child nodes can round onto an endpoint singularity;
    // the remaining contribution of an integrable singularity is negligible.
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    if (b - a <= 1.5e-14 * scale) {
        if (std::isfinite(whole.real()) && std::isfinite(whole.imag())) out.value += whole;
        out.err += (b - a) * scale;
        return;
    }
    const double mid = 0.5 * (a + b);
    const cplx left = gauss_apply(rule, f, a, mid);
    const cplx right = gauss_apply(rule, f, mid, b);
    out.evals += 2 * long(rule.nodes.size());
    const double err = std::abs(whole - (left + right));
    if (err <= tol || depth >= 52) {
        out.value += left + right;
        out.err += err;
        if (err > tol && depth >= 52) out.converged = false;
        return;
    }
    adaptive_rec(rule, f, a, mid, 0.70710678 * tol, depth + 1, out);
    adaptive_rec(rule, f, mid, b, 0.70710678 * tol, depth + 1, out);
}

}  // namespace detail

/// Adaptive bisection with a 15-point Gauss rule per panel.  `init_split`
/// pre-partitions [a, b] (callers with oscillatory integrands size it so
/// each initial panel covers at most ~1.5 oscillation periods).
template <class F>
AdaptiveResult adaptive_integrate(F&& f, double a, double b, double abs_tol,
                                  int init_split = 1) {
    const GaussRule& rule = gauss_rule_cached(15);
    AdaptiveResult out;
    init_split = std::max(1, init_split);
    const double h = (b - a) / init_split;
    for (int i = 0; i < init_split; ++i)
        detail::adaptive_rec(rule, f, a + i * h, a + (i + 1) * h,
                             abs_tol / init_split, 0, out);
    return out;
}

/// Real-valued convenience wrapper.
template <class F>
double adaptive_integrate_real(F&& f, double a, double b, double abs_tol,
                               int init_split = 1) {
    auto res = adaptive_integrate(
        [&](double t) { return cplx(f(t), 0.0); }, a, b, abs_tol, init_split);
    if (!res.converged)
        throw std::runtime_error("adaptive_integrate_real: did not converge");
    return res.value.real();
}

/// Barycentric weights for interpolation on the nodes of `rule`.
inline std::vector<double> barycentric_weights(const GaussRule& rule) {
    const size_t n = rule.nodes.size();
    std::vector<double> lam(n);
    for (size_t k = 0; k < n; ++k) {
        const double s = (k % 2 == 0) ? 1.0 : -1.0;
        lam[k] = s * std::sqrt((1.0 - rule.nodes[k] * rule.nodes[k]) * rule.weights[k]);
    }
    return lam;
}

/// Values of all Lagrange basis polynomials (for `rule`'s nodes) at x in [-1,1].
inline void lagrange_basis_at(const GaussRule& rule, const std::vector<double>& lam,
                              double x, std::vector<double>& out) {
    const size_t n = rule.nodes.size();
    out.assign(n, 0.0);
    for (size_t k = 0; k < n; ++k) {
        if (x == rule.nodes[k]) {
            out[k] = 1.0;
            return;
        }
    }
    double denom = 0.0;
    for (size_t k = 0; k < n; ++k) denom += lam[k] / (x - rule.nodes[k]);
    for (size_t k = 0; k < n; ++k) out[k] = (lam[k] / (x - rule.nodes[k])) / denom;
}

}  // namespace tfwave
