#pragma once

// Rectangular contour decomposition of the band-limited inverse transform,
//   I0 = I_delta - I_cR - I_cL,
// with the orientation convention: Gamma_0 left-to-right on the real axis,
// Gamma_cR bottom-to-top at Re = W2, Gamma_delta left-to-right at Im = delta,
// Gamma_cL top-to-bottom at Re = W1.  All integrals here are raw contour
// integrals of U(z) e^{-izt} (no 1/2pi).

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "tfwave/quadrature.hpp"

namespace tfwave {

struct ContourSpec {
    double W1 = 0, W2 = 0;
    double delta = 0;  // rectangle height, >= 0

    void validate() const {
        if (!(W2 > W1)) throw std::invalid_argument("ContourSpec: W2 > W1 required");
        if (!(delta >= 0)) throw std::invalid_argument("ContourSpec: delta >= 0 required");
    }
};

/// Horizon-dependent cap on the damping:  L(T) = tau_mach ln(2) / (150 T)
/// with tau_mach = 1024 for IEEE double.
inline double delta_limit(double T) {
    if (!(T > 0)) throw std::invalid_argument("delta_limit: T > 0 required");
    return 1024.0 * std::log(2.0) / (150.0 * T);
}

/// Gauss-Legendre node count for the vertical segments, adapted to delta and
/// the horizon:  clamp(20 + ceil(2 delta T), 20, 150).  Validated by the
/// doubling self-test in the contour suite.
inline int correction_node_count(double delta, double T) {
    if (!(delta >= 0)) throw std::invalid_argument("correction_node_count: delta >= 0");
    if (delta > delta_limit(T) * (1 + 1e-12))
        throw std::invalid_argument("correction_node_count: delta exceeds delta_limit(T)");
    const int n = 20 + int(std::ceil(2.0 * delta * T));
    return std::clamp(n, 20, 150);
}

enum class ContourSide { left, right };

struct CorrectionRule {
    ContourSide side = ContourSide::right;
    double W_side = 0;            // Re of the vertical segment
    double delta = 0;
    std::vector<double> nodes;    // v_q in [0, delta]
    std::vector<double> weights;  // mu_q
    int n_c() const { return int(nodes.size()); }
};

inline CorrectionRule make_correction_rule_n(ContourSide side, const ContourSpec& spec,
                                             int n) {
    spec.validate();
    CorrectionRule rule;
    rule.side = side;
    rule.W_side = (side == ContourSide::right) ? spec.W2 : spec.W1;
    rule.delta = spec.delta;
    const auto& gl = gauss_rule_cached(n);
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int q = 0; q < n; ++q) {
        rule.nodes[q] = 0.5 * spec.delta * (1.0 + gl.nodes[q]);
        rule.weights[q] = 0.5 * spec.delta * gl.weights[q];
    }
    return rule;
}

inline CorrectionRule make_correction_rule(ContourSide side, const ContourSpec& spec,
                                           double T) {
    return make_correction_rule_n(side, spec, correction_node_count(spec.delta, T));
}

/// Vertical-segment integral with the ContourSpec orientation:
///   right:  +i e^{-i W2 t} sum_q mu_q U(W2 + i v_q) e^{v_q t}
///   left:   -i e^{-i W1 t} sum_q mu_q U(W1 + i v_q) e^{v_q t}
/// The exponents stay within v_q t <= delta*T <= tau_mach ln2/150 ~ 4.73.
inline cplx correction_term(const CorrectionRule& rule,
                            const std::vector<cplx>& U_segment, double t) {
    if (U_segment.size() != rule.nodes.size())
        throw std::invalid_argument("correction_term: segment sample count mismatch");
    cplx acc = 0.0;
    for (size_t q = 0; q < rule.nodes.size(); ++q) {
        const cplx u = U_segment[q];
        if (!std::isfinite(u.real()) || !std::isfinite(u.imag()))
            throw std::runtime_error("correction_term: non-finite segment sample at node " +
                                     std::to_string(q));
        acc += rule.weights[q] * u * std::exp(rule.nodes[q] * t);
    }
    const cplx dir = (rule.side == ContourSide::right) ? cplx(0, 1) : cplx(0, -1);
    return dir * std::exp(cplx(0, -rule.W_side * t)) * acc;
}

/// I0 = I_delta - I_cR - I_cL.
inline cplx contour_assemble(cplx I_delta, cplx I_cL, cplx I_cR) {
    return I_delta - I_cR - I_cL;
}

}  // namespace tfwave
