#pragma once

// Gaussian incident packet, its closed-form Fourier transform at complex
// frequencies, and relevant-band selection.

#include <cmath>
#include <complex>
#include <stdexcept>

namespace tfwave {

using cplx = std::complex<double>;

/// Gaussian wave packet  g(x,t) = (1/(sqrt(2 pi) sigma))
///   exp(-((t-s(x))^2/(2 sigma^2) + i omega0 (t-s(x)))),  s(x) = x.z0/c + t0.
struct WavePacket {
    double sigma = 1.0;   // envelope width
    double omega0 = 30.0; // carrier frequency
    double t0 = 20.0;     // time shift
    cplx z0{1.0, 0.0};    // unit propagation direction
    double c = 1.0;       // wave speed
    double amplitude = 1.0;

    void validate() const {
        if (!(sigma > 0)) throw std::invalid_argument("WavePacket: sigma > 0 required");
        if (!(omega0 > 0)) throw std::invalid_argument("WavePacket: omega0 > 0 required");
        if (!(c > 0)) throw std::invalid_argument("WavePacket: c > 0 required");
        if (std::abs(std::abs(z0) - 1.0) > 1e-14)
            throw std::invalid_argument("WavePacket: direction must be a unit vector");
    }

    double s(cplx x) const {
        return (x.real() * z0.real() + x.imag() * z0.imag()) / c + t0;
    }
};

struct Band {
    double W1 = 0, W2 = 0;  // band edges, W2 > W1 > 0
    int m = 0;              // truncation count; 2m+1 equispaced samples on [W1, W2)

    double width() const { return W2 - W1; }
    int num_samples() const { return 2 * m + 1; }
    double frequency(int l) const {  // l = 0..2m
        return W1 + width() * l / num_samples();
    }
    void validate() const {
        if (!(W2 > W1 && W1 > 0)) throw std::invalid_argument("Band: W2 > W1 > 0 required");
    }
};

inline cplx packet_value(const WavePacket& p, cplx x, double t) {
    const double u = t - p.s(x);
    return p.amplitude / (std::sqrt(2 * M_PI) * p.sigma) *
           std::exp(cplx(-u * u / (2 * p.sigma * p.sigma), -p.omega0 * u));
}

/// Closed-form transform  e^{i omega s(x)} e^{-sigma^2 (omega-omega0)^2 / 2},
/// analytic in omega; verified against adaptive quadrature of the transform
/// integral in the tests.
inline cplx packet_transform(const WavePacket& p, cplx x, cplx omega) {
    if (omega.imag() < 0)
        throw std::invalid_argument("packet_transform: Im(omega) >= 0 required");
    const cplx d = omega - p.omega0;
    return p.amplitude *
           std::exp(cplx(0, 1) * omega * p.s(x) - 0.5 * p.sigma * p.sigma * d * d);
}

/// Band outside which |packet_transform| <= eps_band (relative), clipped
/// below at omega_min since the solver excludes omega = 0.
inline Band select_band(const WavePacket& p, double eps_band, double omega_min = 0.5) {
    if (!(eps_band > 0 && eps_band < 1))
        throw std::invalid_argument("select_band: 0 < eps_band < 1 required");
    const double half = std::sqrt(2.0 * std::log(1.0 / eps_band)) / p.sigma;
    Band b;
    b.W1 = std::max(p.omega0 - half, omega_min);
    b.W2 = p.omega0 + half;
    if (!(b.W2 > b.W1))
        throw std::invalid_argument("select_band: band collapsed after clipping");
    return b;
}

}  // namespace tfwave
