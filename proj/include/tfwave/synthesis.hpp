#pragma once

// Time synthesis from equispaced frequency samples: trigonometric-polynomial
// coefficients (FFT), the truncated damped sinc expansion, the
// Gauss-Legendre / direct nonuniform-sum baseline, adaptive truncation
// selection, and a quadrature time oracle for validation.
//
// Conventions (pinned by the closed-form surrogate tests):
//   omega_l = W1 + P*(l-1)/(2m+1),  l = 1..2m+1,  P = W2-W1
//   c_j(x)  = 1/(2m+1) * sum_l U(x,omega_l) e^{-2 pi i j (l-1)/(2m+1)}
//             (discrete approximation of int_0^1 U(x,Py+W1) e^{-2 pi i j y} dy)
//   u_m(x,t) = P/(2 pi) e^{-it(P/2+W1)} e^{delta t}
//              * sum_{j=1}^m (-1)^j c_j(x) sinc(Pt/(2 pi) - j)
// With delta = 0 this is the undamped expansion; at the sample times
// t = 2 pi j / P it reduces to  u_m = P/(2 pi) e^{-2 pi i j W1/P} c_j.

#include <fftw3.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "tfwave/incident.hpp"
#include "tfwave/quadrature.hpp"

namespace tfwave {

struct FrequencyField {
    Eigen::MatrixXcd samples;  // targets x (2m+1), column l holds U(x, omega_l + i delta)
    Band band;
    double delta = 0.0;

    void validate() const {
        band.validate();
        if (samples.cols() != band.num_samples())
            throw std::invalid_argument("FrequencyField: column count must be 2m+1");
        if (!samples.allFinite())
            throw std::invalid_argument("FrequencyField: non-finite samples");
    }
};

struct SincExpansion {
    // column (j + m) holds c_j, j = -m..m; negative indices are retained as a
    // causality diagnostic (they vanish for a causal, well-bandlimited field)
    Eigen::MatrixXcd coeffs;
    Band band;
    double delta = 0.0;
    double causality_ratio = 0.0;  // max_{j<=0}|c_j| / max_j |c_j|
    bool causality_warning = false;
    bool unresolved = false;  // set by adaptive_m when m_max was insufficient
    std::string normalization =
        "c_j = 1/(2m+1) sum_l U(w_l) e^{-2pi i j(l-1)/(2m+1)}; "
        "u = P/(2pi) e^{-it(P/2+W1)} e^{dt} sum_{j>=1} (-1)^j c_j sinc(Pt/2pi - j)";

    cplx coeff(int target, int j) const { return coeffs(target, j + band.m); }
};

inline double sinc(double x) {
    const double px = M_PI * x;
    if (std::abs(px) < 1e-5) return 1.0 - px * px / 6.0;
    return std::sin(px) / px;
}

namespace detail {

inline std::mutex& fftw_plan_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace detail

/// Forward DFT per target row; O(m log m) via FFTW.
inline SincExpansion coeffs_from_samples(const FrequencyField& field) {
    field.validate();
    const int n = field.band.num_samples();
    const int m = field.band.m;
    const int targets = int(field.samples.rows());

    SincExpansion exp;
    exp.band = field.band;
    exp.delta = field.delta;
    exp.coeffs.resize(targets, n);

    fftw_complex* buf = fftw_alloc_complex(n);
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(detail::fftw_plan_mutex());
        plan = fftw_plan_dft_1d(n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    }
    for (int r = 0; r < targets; ++r) {
        for (int l = 0; l < n; ++l) {
            buf[l][0] = field.samples(r, l).real();
            buf[l][1] = field.samples(r, l).imag();
        }
        fftw_execute(plan);
        for (int j = -m; j <= m; ++j) {
            const int k = j >= 0 ? j : n + j;
            exp.coeffs(r, j + m) = cplx(buf[k][0], buf[k][1]) / double(n);
        }
    }
    {
        std::lock_guard<std::mutex> lock(detail::fftw_plan_mutex());
        fftw_destroy_plan(plan);
    }
    fftw_free(buf);

    double max_all = 0, max_noncausal = 0;
    for (int r = 0; r < targets; ++r)
        for (int j = -m; j <= m; ++j) {
            const double a = std::abs(exp.coeffs(r, j + m));
            max_all = std::max(max_all, a);
            if (j <= 0) max_noncausal = std::max(max_noncausal, a);
        }
    exp.causality_ratio = max_all > 0 ? max_noncausal / max_all : 0.0;
    exp.causality_warning = exp.causality_ratio > 1e-6;
    return exp;
}

/// Damped truncated sinc expansion, direct O(targets * times * m) summation.
/// The inner sum over j is the seam where a fast sinc transform would slot in.
inline Eigen::MatrixXcd sinc_synthesize(const SincExpansion& exp,
                                        const std::vector<double>& times) {
    exp.band.validate();
    const int m = exp.band.m;
    const double P = exp.band.width();
    double tmax = 0;
    for (double t : times) {
        if (!std::isfinite(t)) throw std::invalid_argument("sinc_synthesize: non-finite time");
        tmax = std::max(tmax, std::abs(t));
    }
    if (exp.delta * tmax > 600.0)
        throw std::overflow_error(
            "sinc_synthesize: exp(delta*t) would overflow; delta exceeds the "
            "horizon limit delta_limit(T) by a wide margin");

    const int targets = int(exp.coeffs.rows());
    Eigen::MatrixXcd out(targets, times.size());

    // pre-apply (-1)^j to the causal coefficients once per target
    Eigen::MatrixXcd alt(targets, m);
    for (int j = 1; j <= m; ++j) {
        const double sgn = (j % 2 == 0) ? 1.0 : -1.0;
        alt.col(j - 1) = sgn * exp.coeffs.col(j + m);
    }

    for (size_t k = 0; k < times.size(); ++k) {
        const double t = times[k];
        const cplx pref = (P / (2 * M_PI)) *
                          std::exp(cplx(0, -t * (P / 2 + exp.band.W1))) *
                          std::exp(exp.delta * t);
        const double pt = P * t / (2 * M_PI);
        Eigen::VectorXd sv(m);
        for (int j = 1; j <= m; ++j) sv[j - 1] = sinc(pt - j);
        out.col(k) = pref * (alt * sv);
    }
    return out;
}

/// Plain quadrature baseline  u(x,t) ~ (1/2 pi) sum_l eta_l U(x,w_l) e^{-i w_l t},
/// evaluated as a direct type-III nonuniform sum.
inline Eigen::MatrixXcd gl_synthesis(const Eigen::MatrixXcd& U_at_nodes,
                                     const std::vector<double>& gl_weights,
                                     const std::vector<double>& gl_nodes,
                                     const std::vector<double>& times) {
    if (U_at_nodes.cols() != long(gl_nodes.size()) ||
        gl_weights.size() != gl_nodes.size())
        throw std::invalid_argument("gl_synthesis: size mismatch");
    Eigen::MatrixXcd out(U_at_nodes.rows(), times.size());
    for (size_t k = 0; k < times.size(); ++k) {
        Eigen::VectorXcd phase(gl_nodes.size());
        for (size_t l = 0; l < gl_nodes.size(); ++l)
            phase[l] = gl_weights[l] * std::exp(cplx(0, -gl_nodes[l] * times[k]));
        out.col(k) = (U_at_nodes * phase) / (2 * M_PI);
    }
    return out;
}

/// Doubles m until the coefficient tail passes the plateau rule
///   max_{j > 0.9 m} |c_j|  <=  eps_chop * max_j |c_j|,
/// or m_max is reached (expansion flagged unresolved).  The 2m+1 grids do not
/// nest under doubling, so every step re-solves all frequencies; cost is
/// proportional to the sum of the attempted grid sizes.
inline SincExpansion adaptive_m(const std::function<FrequencyField(int)>& field_sampler,
                                double eps_chop, int m_max, int m_start = 64) {
    if (m_max < 16) throw std::invalid_argument("adaptive_m: m_max >= 16 required");
    int m = std::min(m_start, m_max);
    while (true) {
        FrequencyField field = field_sampler(m);
        if (field.band.m != m)
            throw std::invalid_argument("adaptive_m: sampler returned wrong m");
        SincExpansion exp = coeffs_from_samples(field);
        double max_all = 0, tail = 0;
        const int j_tail = int(0.9 * m);
        for (int r = 0; r < exp.coeffs.rows(); ++r)
            for (int j = -m; j <= m; ++j) {
                const double a = std::abs(exp.coeff(r, j));
                max_all = std::max(max_all, a);
                if (j > j_tail) tail = std::max(tail, a);
            }
        if (max_all == 0 || tail <= eps_chop * max_all) return exp;
        if (m >= m_max) {
            exp.unresolved = true;
            return exp;
        }
        m = std::min(2 * m, m_max);
    }
}

/// Reference evaluation of (1/2 pi) int_{W1}^{W2} U(w) e^{-i w t} dw by
/// adaptive panel quadrature seeded with >= 10 points per oscillation period.
/// Validation oracle only: cost grows linearly with t.
inline cplx time_oracle(const std::function<cplx(double)>& U, double W1, double W2,
                        double t, double tol) {
    const int init = std::max(4, int(std::ceil((W2 - W1) * std::abs(t) / (2 * M_PI))));
    auto res = adaptive_integrate(
        [&](double w) { return U(w) * std::exp(cplx(0, -w * t)); }, W1, W2,
        tol * 2 * M_PI, init);
    if (!res.converged)
        throw std::runtime_error("time_oracle: quadrature did not converge; estimate " +
                                 std::to_string(res.err / (2 * M_PI)));
    return res.value / (2 * M_PI);
}

}  // namespace tfwave
