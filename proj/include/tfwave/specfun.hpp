#pragma once

// Hankel functions H0^(1), H1^(1) for complex arguments in the closed
// upper-right quarter plane (Re z >= 0, Im z >= 0), which is the only
// region reached by kappa = (omega + i*delta)/c with omega, delta >= 0.
//
// Three evaluation regimes:
//   |z| <= 2   ascending series for J0, J1, Y0, Y1
//   |z| <= 16  backward (Miller) recurrence normalized by exp(-iz),
//              plus a Steed-type continued fraction for H1/H0, joined
//              through the Wronskian  H0*J1 - H1*J0 = 2i/(pi z)
//   |z| > 16   Hankel asymptotic expansions
//
// The regime boundaries are pinned by overlap regression tests against an
// extended-precision oracle (tests/data/hankel_reference.inc).

#include <complex>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace tfwave {

using cplx = std::complex<double>;

struct HankelPair {
    cplx h0;  // H0^(1)(z)
    cplx h1;  // H1^(1)(z)
};

namespace detail {

inline constexpr double euler_gamma = 0.57721566490153286060651209;

// Ascending series, adequate in double precision for |z| <= ~2 where the
// alternating-sum cancellation is bounded by e^{|Re z|}.
inline HankelPair hankel01_series(cplx z) {
    const cplx q = 0.25 * z * z;
    // J0 and the harmonic-weighted companion sum for Y0
    cplx j0 = 1.0, s0 = 0.0;
    {
        cplx term = 1.0;  // (-1)^k q^k/(k!)^2 after k steps
        double hk = 0.0;
        for (int k = 1; k <= 48; ++k) {
            term *= -q / double(k * k);
            hk += 1.0 / k;
            j0 += term;
            s0 -= hk * term;  // accumulates (-1)^{k+1} H_k q^k/(k!)^2
            if (std::abs(term) < 1e-18 * (1.0 + std::abs(j0))) break;
        }
    }
    // J1 and the companion sum for Y1
    cplx j1s = 1.0, s1 = 1.0;  // sums over k of (-1)^k q^k/(k!(k+1)!) and (H_k+H_{k+1}) likewise
    {
        cplx term = 1.0;
        double hk = 0.0, hk1 = 1.0;
        for (int k = 1; k <= 48; ++k) {
            term *= -q / double(k * (k + 1));
            hk += 1.0 / k;
            hk1 += 1.0 / (k + 1);
            j1s += term;
            s1 += (hk + hk1) * term;
            if (std::abs(term) < 1e-18 * (1.0 + std::abs(j1s))) break;
        }
    }
    const cplx j1 = 0.5 * z * j1s;
    const cplx lg = std::log(0.5 * z) + euler_gamma;
    const double two_over_pi = 2.0 / M_PI;
    const cplx y0 = two_over_pi * (lg * j0 + s0);
    const cplx y1 = two_over_pi * lg * j1 - 2.0 / (M_PI * z) - (0.5 * z / M_PI) * s1;
    return {j0 + cplx(0, 1) * y0, j1 + cplx(0, 1) * y1};
}

// J0, J1 by backward recurrence, normalized with  e^{-iz} = J0 + 2*sum (-i)^k J_k.
// That identity has no zeros and, for Im z >= 0, no cancellation (|e^{-iz}| grows
// with Im z exactly as the J_k do).
inline void bessel_j01_miller(cplx z, cplx& j0, cplx& j1) {
    const double az = std::abs(z);
    const int nstart = int(1.3 * az) + 45;
    cplx jp = 0.0, jc = 1e-30;
    cplx norm = 0.0;
    cplx c0 = 0.0, c1 = 0.0;
    // (-i)^k cycles with period 4
    static const cplx ik[4] = {cplx(1, 0), cplx(0, -1), cplx(-1, 0), cplx(0, 1)};
    for (int n = nstart; n >= 1; --n) {
        cplx jm = (2.0 * n / z) * jc - jp;
        jp = jc;
        jc = jm;
        // jc now holds ~J_{n-1}, jp holds ~J_n
        if (n - 1 >= 1) norm += ik[(n - 1) % 4] * jc;
        if (n - 1 == 1) c1 = jc;
        if (n - 1 == 0) c0 = jc;
        if (std::abs(jc.real()) > 1e250 || std::abs(jc.imag()) > 1e250) {
            jp *= 1e-250;
            jc *= 1e-250;
            norm *= 1e-250;
            c1 *= 1e-250;
        }
    }
    norm = 2.0 * norm + c0;
    const cplx scale = std::exp(cplx(0, -1) * z) / norm;
    j0 = c0 * scale;
    j1 = c1 * scale;
}

// Steed/Lentz continued fraction for H0'(z)/H0(z); converges for Im z >= 0
// away from the origin (used for |z| >= 2).
inline cplx hankel_ratio_cf2(cplx z) {
    const cplx i(0, 1);
    const double tiny = 1e-290;
    cplx f(tiny, 0), C = f, D = 0.0;
    for (int k = 1; k <= 20000; ++k) {
        const double a = (k - 0.5) * (k - 0.5);
        const cplx b = 2.0 * (z + double(k) * i);
        D = b + a * D;
        if (D == cplx(0, 0)) D = tiny;
        D = 1.0 / D;
        C = b + a / C;
        if (C == cplx(0, 0)) C = tiny;
        const cplx delta = C * D;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    const cplx g = i - 0.5 / z + (i / z) * f;  // H0'/H0
    return -g;                                 // H1/H0  (since H0' = -H1)
}

inline HankelPair hankel01_wronskian(cplx z) {
    cplx j0, j1;
    bessel_j01_miller(z, j0, j1);
    const cplx r = hankel_ratio_cf2(z);
    const cplx h0 = cplx(0, 2) / (M_PI * z * (j1 - r * j0));
    return {h0, r * h0};
}

// DLMF 10.17.5 with a_k(nu) built by recurrence; truncated at the smallest term.
inline cplx hankel_asymptotic(cplx z, int nu) {
    const cplx i(0, 1);
    const cplx iz = i / z;
    const double fournu2 = 4.0 * nu * nu;
    cplx sum = 1.0, term = 1.0;
    double prev = 1e300;
    for (int k = 1; k <= 40; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= (fournu2 - odd * odd) / (8.0 * k) * iz;
        const double at = std::abs(term);
        if (at >= prev) break;  // divergence onset
        sum += term;
        prev = at;
        if (at < 1e-17 * std::abs(sum)) break;
    }
    const cplx omega = z - double(nu) * (M_PI / 2) - M_PI / 4;
    return std::sqrt(2.0 / (M_PI * z)) * std::exp(i * omega) * sum;
}

// Unchecked core evaluator: any z != 0 in the closed quarter plane.
// Needed internally for quadrature points that approach the boundary
// closer than the public operation's supported range.
inline HankelPair hankel01_raw(cplx z) {
    const double az = std::abs(z);
    if (az <= 2.0) return hankel01_series(z);
    if (az <= 16.0) return hankel01_wronskian(z);
    return {hankel_asymptotic(z, 0), hankel_asymptotic(z, 1)};
}

}  // namespace detail

/// H0^(1)(z) and H1^(1)(z) for Re z >= 0, Im z >= 0, 1e-8 <= |z| <= 1e4.
/// Relative accuracy <= 1e-12 over the supported range (regression-tested
/// against an extended-precision series oracle).
inline HankelPair hankel01(cplx z) {
    if (!(z.real() >= 0.0) || !(z.imag() >= 0.0))
        throw std::domain_error("hankel01: argument outside the upper-right quarter plane");
    const double az = std::abs(z);
    if (az == 0.0) throw std::domain_error("hankel01: logarithmic singularity at z = 0");
    if (az < 1e-8 || az > 1e4)
        throw std::out_of_range("hankel01: |z| outside supported range [1e-8, 1e4]");
    return detail::hankel01_raw(z);
}

namespace detail {

// J_0..J_nmax by the same Miller scheme (used by the disk series oracle).
inline std::vector<cplx> bessel_j_array(cplx z, int nmax) {
    const double az = std::abs(z);
    const int nstart = std::max(nmax + 20, int(1.3 * az) + 45);
    std::vector<cplx> out(nmax + 1, cplx(0, 0));
    static const cplx ik[4] = {cplx(1, 0), cplx(0, -1), cplx(-1, 0), cplx(0, 1)};
    cplx jp = 0.0, jc = 1e-30, norm = 0.0;
    for (int n = nstart; n >= 1; --n) {
        cplx jm = (2.0 * n / z) * jc - jp;
        jp = jc;
        jc = jm;
        const int idx = n - 1;
        if (idx >= 1) norm += ik[idx % 4] * jc;
        if (idx <= nmax) out[idx] = jc;
        if (std::abs(jc.real()) > 1e250 || std::abs(jc.imag()) > 1e250) {
            jp *= 1e-250;
            jc *= 1e-250;
            norm *= 1e-250;
            for (auto& v : out) v *= 1e-250;
        }
    }
    norm = 2.0 * norm + out[0];
    const cplx scale = std::exp(cplx(0, -1) * z) / norm;
    for (auto& v : out) v *= scale;
    return out;
}

// H_0..H_nmax by upward recurrence (stable: H grows with order).
inline std::vector<cplx> hankel1_array(cplx z, int nmax) {
    std::vector<cplx> out(nmax + 1);
    const HankelPair h = hankel01_raw(z);
    out[0] = h.h0;
    if (nmax >= 1) out[1] = h.h1;
    for (int n = 1; n < nmax; ++n) out[n + 1] = (2.0 * n / z) * out[n] - out[n - 1];
    return out;
}

}  // namespace detail
}  // namespace tfwave
