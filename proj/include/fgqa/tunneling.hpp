#pragma once

#include <string_view>

#include "fgqa/capnet.hpp"

namespace fgqa {

// How a gate voltage shifts the FG Fermi level.
enum class GatePolarity {
    NegativeRaises,  // E_F' = E_F - V_CG
    PositiveRaises,  // E_F' = E_F + V_CG
};

// Volume that supplies the tunnelling electrons on each side of the barrier.
enum class VolumeRule {
    FloatingGate,  // v = L * W * Z_FG on both sides
};

struct TunnelBarrier {
    double d_ox_nm = 3.5;
    double barrier_ev = 3.0;
    double m_ox = 0.5;
    double m_si = 0.19;
    double doping_cm3 = 1e20;
    VolumeRule volume = VolumeRule::FloatingGate;
    GatePolarity polarity = GatePolarity::NegativeRaises;

    static TunnelBarrier from(const CellGeometry& geom, const MaterialStack& mat);
    void validate() const;
};

enum class TunnelingMode { NormallyOn, NormallyOff };

std::string_view to_string(TunnelingMode mode);
GatePolarity parse_polarity(std::string_view tag);
std::string_view to_string(GatePolarity polarity);

double tunneling_volume_m3(const CellGeometry& geom, VolumeRule rule);

/// Number of electrons taking part in tunnelling on one side of the barrier:
/// every occupied state of the Fermi sphere (both spins) in the volume v,
/// v k_F^3 / (3 pi^2).
double participants(const CellGeometry& geom, double fermi_ev, double m_si, VolumeRule rule = VolumeRule::FloatingGate);

/// Shifted Fermi level for the given gate voltage.
double shifted_fermi_ev(const TunnelBarrier& barrier, double v_cg);

/// WKB tunnelling amplitude in eV.
double tunnel_amplitude_ev(const CellGeometry& geom, const TunnelBarrier& barrier, double v_cg);
/// Same amplitude converted to Hz.
double tunnel_amplitude(const CellGeometry& geom, const TunnelBarrier& barrier, double v_cg);

/// Decay constant of log(amplitude) per nm of oxide at the given gate voltage.
double wkb_decay_per_nm(const TunnelBarrier& barrier, double v_cg);

/// NormallyOn when the zero-bias amplitude is at least `threshold_hz`.
TunnelingMode classify(const CellGeometry& geom, const TunnelBarrier& barrier, double threshold_hz);

}  // namespace fgqa
