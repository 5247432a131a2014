#include "doctest.h"
#include "oracles.hpp"

#include "fgqa/error.hpp"
#include "fgqa/tunneling.hpp"

using namespace fgqa;

namespace {

CellGeometry cell(double l, double d_ox, double z) { return CellGeometry::square(l, z, d_ox, d_ox * 7.0 / 3.0); }

TunnelBarrier barrier(double d_ox) {
    TunnelBarrier b;
    b.d_ox_nm = d_ox;
    return b;
}

// The closed-form amplitude in eV, written directly from its definition.
double amplitude_oracle_ev(double l, double d_ox, double z, double v_cg) {
    const double ef = oracle::fermi_energy_ev(1e20, 0.19);
    const double kf = std::sqrt(2.0 * 0.19 * oracle::m0 * ef * oracle::e) / oracle::hbar;
    const double n = l * l * z * 1e-27 * std::pow(kf, 3) / (3.0 * oracle::pi * oracle::pi);
    const double lat = oracle::pi * 0.0529 / l;
    const double decay = std::sqrt(0.5 * (3.0 - (ef - v_cg)) / 13.6) / 0.0529;
    return n * n * (13.6 / 0.19) * lat * lat * std::exp(-decay * d_ox);
}

}  // namespace

TEST_SUITE("tunneling") {

TEST_CASE("participants vanish with an empty Fermi sphere") {
    CHECK(participants(cell(10, 3.5, 100), 0.0, 0.19) == 0.0);
    CHECK(participants(cell(10, 3.5, 100), 1e-12, 0.19) < 1e-6);
    CHECK_THROWS_AS(participants(cell(10, 3.5, 100), -0.1, 0.19), InputError);
}

TEST_CASE("participants scale with the volume") {
    const double base = participants(cell(10, 3.5, 100), 0.414, 0.19);
    CHECK(participants(cell(10, 3.5, 300), 0.414, 0.19) == doctest::Approx(3.0 * base).epsilon(1e-12));
}

TEST_CASE("participants agree with the Fermi-disk quadrature") {
    const auto g = cell(10, 3.5, 100);
    for (double ef : {0.05, 0.414, 1.2}) {
        const double kf = std::sqrt(2.0 * 0.19 * oracle::m0 * ef * oracle::e) / oracle::hbar;
        const double quad = oracle::participants_quadrature(10 * 10 * 100 * 1e-27, kf);
        CHECK(participants(g, ef, 0.19) == doctest::Approx(quad).epsilon(1e-8));
    }
    // At the doping Fermi level the count is just doping times volume.
    const double ef = phys::fermi_energy(1e20, 0.19);
    CHECK(participants(g, ef, 0.19) == doctest::Approx(1e20 * 1e6 * 1e-23).epsilon(1e-9));
}

TEST_CASE("amplitude matches the closed form") {
    for (double v : {-1.0, 0.0, 0.5}) {
        const double lib = tunnel_amplitude_ev(cell(15, 3.5, 100), barrier(3.5), v);
        CHECK(lib == doctest::Approx(amplitude_oracle_ev(15, 3.5, 100, v)).epsilon(1e-9));
    }
}

TEST_CASE("table tunnelling rows") {
    struct Row {
        double l, d_ox, z, ghz;
    };
    const Row rows[] = {{5, 2.5, 10, 5.61},  {10, 2.5, 10, 22.5},  {15, 2.5, 10, 50.5},
                        {5, 3.5, 100, 1.65}, {10, 3.5, 100, 6.61}, {15, 3.5, 100, 14.9}};
    for (const auto& r : rows) {
        const double ghz = tunnel_amplitude(cell(r.l, r.d_ox, r.z), barrier(r.d_ox), 0.0) * 1e-9;
        CHECK(ghz == doctest::Approx(r.ghz).epsilon(0.01));
    }
}

TEST_CASE("thin oxide is normally on") {
    const double hz = tunnel_amplitude(cell(15, 1.5, 10), barrier(1.5), 0.0);
    CHECK(hz == doctest::Approx(17.1e12).epsilon(0.01));
    CHECK(classify(cell(15, 1.5, 10), barrier(1.5), 1e12) == TunnelingMode::NormallyOn);
}

TEST_CASE("thick oxide classification") {
    // 14.8 GHz with the physical eV-to-Hz factor: on against 1 kHz, off against 1 THz.
    const auto g = cell(15, 3.5, 100);
    CHECK(classify(g, barrier(3.5), 1e3) == TunnelingMode::NormallyOn);
    CHECK(classify(g, barrier(3.5), 1e12) == TunnelingMode::NormallyOff);
}

TEST_CASE("low-frequency anchors use the figure-caption conversion") {
    // 26.4 Hz at 0 V and 2.2 kHz at -1 V follow from 2.41799e5 Hz/eV and L = 20 nm.
    const auto g = cell(20, 3.5, 100);
    CHECK(tunnel_amplitude_ev(g, barrier(3.5), 0.0) * 2.41799e5 == doctest::Approx(26.4).epsilon(0.01));
    CHECK(tunnel_amplitude_ev(g, barrier(3.5), -1.0) * 2.41799e5 == doctest::Approx(2.2e3).epsilon(0.01));
    const auto g15 = cell(15, 3.5, 100);
    CHECK(tunnel_amplitude(g15, barrier(3.5), -1.0) / tunnel_amplitude(g15, barrier(3.5), 0.0) ==
          doctest::Approx(2.2e3 / 26.4).epsilon(0.01));
}

TEST_CASE("classification boundary is inclusive") {
    const auto g = cell(10, 3.5, 100);
    const double hz = tunnel_amplitude(g, barrier(3.5), 0.0);
    CHECK(classify(g, barrier(3.5), hz) == TunnelingMode::NormallyOn);
    CHECK(classify(g, barrier(3.5), hz * (1 + 1e-12)) == TunnelingMode::NormallyOff);
    CHECK_THROWS_AS(classify(g, barrier(3.5), 0.0), InputError);
}

TEST_CASE("thick oxide suppresses the amplitude") {
    CHECK(tunnel_amplitude(cell(15, 200, 100), barrier(200), 0.0) < 1e-300);
}

TEST_CASE("log amplitude is affine in the oxide thickness") {
    const auto g = cell(15, 3.5, 100);
    for (double v : {-1.0, 0.0, 1.0}) {
        const double h = 1e-3;
        auto log_amp = [&](double d) { return std::log(tunnel_amplitude_ev(g, barrier(d), v)); };
        const double slope = (log_amp(3.5 + h) - log_amp(3.5 - h)) / (2.0 * h);
        const double ef = phys::fermi_energy(1e20, 0.19);
        const double expected = -std::sqrt(0.5 * (3.0 - (ef - v)) / 13.6) / 0.0529;
        CHECK(slope == doctest::Approx(expected).epsilon(1e-7));
        CHECK(wkb_decay_per_nm(barrier(3.5), v) == doctest::Approx(-expected).epsilon(1e-12));
        // Second difference vanishes for an affine function.
        const double curv = log_amp(2.0) - 2.0 * log_amp(3.0) + log_amp(4.0);
        CHECK(std::abs(curv) < 1e-9);
    }
}

TEST_CASE("amplitude grows with the shifted Fermi level until the barrier collapses") {
    const auto g = cell(15, 3.5, 100);
    double prev = 0.0;
    for (double v = 1.5; v > -2.5; v -= 0.1) {
        const double a = tunnel_amplitude(g, barrier(3.5), v);
        CHECK(a > prev);
        prev = a;
    }
    // E_F' = E_F - V_CG reaches V_ox = 3 eV just below V_CG = -2.586 V.
    CHECK_THROWS_AS(tunnel_amplitude(g, barrier(3.5), -2.6), PhysicsError);

    auto pos = barrier(3.5);
    pos.polarity = GatePolarity::PositiveRaises;
    CHECK(tunnel_amplitude(g, pos, 1.0) == doctest::Approx(tunnel_amplitude(g, barrier(3.5), -1.0)).epsilon(1e-12));
    CHECK(shifted_fermi_ev(pos, 0.3) == doctest::Approx(phys::fermi_energy(1e20, 0.19) + 0.3));
}

TEST_CASE("trends in geometry") {
    const double base = tunnel_amplitude(cell(10, 3.5, 100), barrier(3.5), 0.0);
    CHECK(tunnel_amplitude(cell(15, 3.5, 100), barrier(3.5), 0.0) > base);
    CHECK(tunnel_amplitude(cell(10, 3.5, 150), barrier(3.5), 0.0) > base);
    CHECK(tunnel_amplitude(cell(10, 3.0, 100), barrier(3.0), 0.0) > base);
}

TEST_CASE("polarity tags") {
    CHECK(parse_polarity("negative_raises") == GatePolarity::NegativeRaises);
    CHECK(parse_polarity(to_string(GatePolarity::PositiveRaises)) == GatePolarity::PositiveRaises);
    CHECK_THROWS_AS(parse_polarity("up"), InputError);
    CHECK(to_string(TunnelingMode::NormallyOn) == "normally-on");
}

TEST_CASE("barrier validation") {
    auto b = barrier(3.5);
    b.d_ox_nm = 0.0;
    CHECK_THROWS_AS(b.validate(), InputError);
    b = barrier(3.5);
    b.m_ox = -1;
    CHECK_THROWS_AS(tunnel_amplitude(cell(10, 3.5, 100), b, 0.0), InputError);
}

}
