#include <catch2/catch_amalgamated.hpp>

#include "tfwave/incident.hpp"
#include "tfwave/quadrature.hpp"

#include <cmath>
#include <random>

using namespace tfwave;

namespace {
WavePacket ref_packet() {
    WavePacket p;
    p.sigma = 1.0;
    p.omega0 = 30.0;
    p.t0 = 20.0;
    p.z0 = cplx(1, 0);
    p.c = 1.0;
    return p;
}

// transform integral evaluated numerically over the packet's time support
cplx transform_by_quadrature(const WavePacket& p, cplx x, cplx omega) {
    const double sc = p.s(x);
    auto f = [&](double t) { return packet_value(p, x, t) * std::exp(cplx(0, 1) * omega * t); };
    auto res = adaptive_integrate(f, sc - 14 * p.sigma, sc + 14 * p.sigma, 1e-13,
                                  std::max(4, int((std::abs(omega) + p.omega0) * 28 *
                                                  p.sigma / (2 * M_PI))));
    REQUIRE(res.converged);
    return res.value;
}
}  // namespace

TEST_CASE("packet peak and tail") {
    auto p = ref_packet();
    const cplx x(3.0, -1.0);
    const double peak = 1.0 / (std::sqrt(2 * M_PI) * p.sigma);
    CHECK(std::abs(packet_value(p, x, p.s(x)) - peak) < 1e-15);
    CHECK(std::abs(packet_value(p, x, p.s(x) + 10 * p.sigma)) <=
          std::exp(-50.0) * peak * (1 + 1e-12));
    // reference configuration: packet at the origin peaks at t = t0
    CHECK(std::abs(packet_value(p, cplx(0, 0), 20.0) - peak) < 1e-15);
}

TEST_CASE("packet transform closed form") {
    auto p = ref_packet();
    // s(x) = 0 at x = -t0 * c * z0
    const cplx x0 = -p.t0 * p.c * p.z0;
    REQUIRE(std::abs(p.s(x0)) < 1e-12);
    CHECK(std::abs(packet_transform(p, x0, cplx(p.omega0, 0)) - 1.0) < 1e-14);
    // band-edge magnitude
    const cplx v = packet_transform(p, x0, cplx(p.omega0 + 6 / p.sigma, 0));
    CHECK(std::abs(std::abs(v) - std::exp(-18.0)) < 1e-12 * std::exp(-18.0));
    CHECK_THROWS_AS(packet_transform(p, x0, cplx(30, -0.01)), std::invalid_argument);
}

TEST_CASE("closed-form transform agrees with quadrature of the integral") {
    auto p = ref_packet();
    for (cplx omega : {cplx(30, 0), cplx(26.5, 0), cplx(33, 0.02), cplx(30, 0.1)}) {
        for (cplx x : {cplx(0, 0), cplx(1.5, 2.0)}) {
            const cplx closed = packet_transform(p, x, omega);
            const cplx quad = transform_by_quadrature(p, x, omega);
            CHECK(std::abs(closed - quad) < 1e-10 * std::max(1.0, std::abs(closed)));
        }
    }
    // damped value at the packet origin, spelled out
    const cplx om(p.omega0, 0.02);
    const cplx got = packet_transform(p, cplx(0, 0), om);
    const cplx want = std::exp(cplx(0, 1) * om * 20.0) *
                      std::exp(-0.5 * p.sigma * p.sigma * cplx(0, 0.02) * cplx(0, 0.02));
    CHECK(std::abs(got - want) < 1e-14);
}

TEST_CASE("select_band formula and clipping") {
    auto p = ref_packet();
    Band b = select_band(p, std::exp(-18.0));
    CHECK(std::abs(b.W1 - 24.0) < 1e-12);
    CHECK(std::abs(b.W2 - 36.0) < 1e-12);

    WavePacket q = p;
    q.sigma = 2.0;
    q.omega0 = 10.0;
    Band b2 = select_band(q, std::exp(-18.0));
    CHECK(std::abs(b2.W1 - 7.0) < 1e-12);
    CHECK(std::abs(b2.W2 - 13.0) < 1e-12);

    WavePacket low = p;
    low.omega0 = 3.0;
    CHECK(std::abs(select_band(low, std::exp(-18.0)).W1 - 0.5) < 1e-15);

    WavePacket tiny = p;
    tiny.omega0 = 0.05;
    CHECK_THROWS_AS(select_band(tiny, 0.99), std::invalid_argument);
}

TEST_CASE("transform pair round trip at random points in the support") {
    auto p = ref_packet();
    Band wide = select_band(p, 1e-16);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> ux(-2, 2), ut(-4, 4);
    for (int k = 0; k < 10; ++k) {
        const cplx x(ux(rng), ux(rng));
        const double t = p.s(x) + ut(rng);
        auto f = [&](double w) {
            return packet_transform(p, x, cplx(w, 0)) * std::exp(cplx(0, -w * t));
        };
        auto res = adaptive_integrate(f, wide.W1, wide.W2, 1e-13,
                                      std::max(8, int(wide.width() * std::abs(t) / 4)));
        REQUIRE(res.converged);
        CHECK(std::abs(res.value / (2 * M_PI) - packet_value(p, x, t)) < 1e-10);
    }
}

TEST_CASE("initial conditions approximately satisfied for large enough t0") {
    auto p = ref_packet();
    const double radius = 5.0;
    p.t0 = 7.44 * p.sigma + radius / p.c + 0.1;
    const double bound = 1e-12 / (std::sqrt(2 * M_PI) * p.sigma);
    for (int k = 0; k < 200; ++k) {
        const double th = 2 * M_PI * k / 200.0;
        for (double r : {0.0, 2.5, 5.0}) {
            const cplx x = std::polar(r, th);
            CHECK(std::abs(packet_value(p, x, 0.0)) <= bound);
        }
    }
}

TEST_CASE("damped transform growth bound on boundary-scale points") {
    auto p = ref_packet();
    const double delta = 0.05;
    double smax = 0;
    for (int k = 0; k < 64; ++k) {
        const cplx x = std::polar(3.0, 2 * M_PI * k / 64.0);
        smax = std::max(smax, std::abs(p.s(x)));
    }
    for (int k = 0; k < 64; ++k) {
        const cplx x = std::polar(3.0, 2 * M_PI * k / 64.0);
        for (double w : {25.0, 30.0, 34.0}) {
            const double damped = std::abs(packet_transform(p, x, cplx(w, delta)));
            const double undamped = std::abs(packet_transform(p, x, cplx(w, 0)));
            CHECK(damped <= undamped * std::exp(delta * smax) * (1 + 1e-12));
        }
    }
}

TEST_CASE("packet validation") {
    WavePacket p = ref_packet();
    p.sigma = 0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = ref_packet();
    p.z0 = cplx(1, 1);
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}
