#include "fgqa/tunneling.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "fgqa/error.hpp"

namespace fgqa {

using detail::require;
namespace p = phys;

TunnelBarrier TunnelBarrier::from(const CellGeometry& geom, const MaterialStack& mat) {
    TunnelBarrier b;
    b.d_ox_nm = geom.d_ox_nm;
    b.barrier_ev = mat.barrier_ev;
    b.m_ox = mat.m_ox;
    b.m_si = mat.m_si;
    b.doping_cm3 = mat.doping_cm3;
    return b;
}

void TunnelBarrier::validate() const {
    require(d_ox_nm > 0.0, "tunnel barrier: d_ox must be positive");
    require(barrier_ev > 0.0, "tunnel barrier: V_ox must be positive");
    require(m_ox > 0.0 && m_si > 0.0, "tunnel barrier: effective masses must be positive");
    require(doping_cm3 > 0.0, "tunnel barrier: doping must be positive");
}

std::string_view to_string(TunnelingMode mode) {
    return mode == TunnelingMode::NormallyOn ? "normally-on" : "normally-off";
}

GatePolarity parse_polarity(std::string_view tag) {
    if (tag == "negative_raises") return GatePolarity::NegativeRaises;
    if (tag == "positive_raises") return GatePolarity::PositiveRaises;
    throw InputError("unknown gate polarity '" + std::string(tag) + "' (expected negative_raises or positive_raises)");
}

std::string_view to_string(GatePolarity polarity) {
    return polarity == GatePolarity::NegativeRaises ? "negative_raises" : "positive_raises";
}

double tunneling_volume_m3(const CellGeometry& geom, VolumeRule rule) {
    switch (rule) {
        case VolumeRule::FloatingGate:
            return geom.length_nm * geom.width_nm * geom.height_nm * 1e-27;
    }
    throw InputError("unknown volume rule");
}

double participants(const CellGeometry& geom, double fermi_ev, double m_si, VolumeRule rule) {
    require(fermi_ev >= 0.0, "participants: Fermi energy must be non-negative");
    require(m_si > 0.0, "participants: effective mass must be positive");
    const double kf = std::sqrt(2.0 * m_si * p::kElectronMass * fermi_ev * p::kElectronCharge) / p::kHbar;
    return tunneling_volume_m3(geom, rule) * kf * kf * kf / (3.0 * p::kPi * p::kPi);
}

double shifted_fermi_ev(const TunnelBarrier& barrier, double v_cg) {
    const double ef = p::fermi_energy(barrier.doping_cm3, barrier.m_si);
    return barrier.polarity == GatePolarity::NegativeRaises ? ef - v_cg : ef + v_cg;
}

double wkb_decay_per_nm(const TunnelBarrier& barrier, double v_cg) {
    barrier.validate();
    const double height = barrier.barrier_ev - shifted_fermi_ev(barrier, v_cg);
    if (!(height > 0.0)) {
        std::ostringstream msg;
        msg << "tunnel barrier collapsed: V_ox - E_F' = " << height << " eV at V_CG = " << v_cg << " V";
        throw PhysicsError(msg.str());
    }
    return std::sqrt(barrier.m_ox * height / p::kRydbergEv) / p::kBohrRadiusNm;
}

double tunnel_amplitude_ev(const CellGeometry& geom, const TunnelBarrier& barrier, double v_cg) {
    geom.validate();
    const double decay = wkb_decay_per_nm(barrier, v_cg);
    const double ef = p::fermi_energy(barrier.doping_cm3, barrier.m_si);
    const double n_side = participants(geom, ef, barrier.m_si, barrier.volume);
    const double lateral = p::kPi * p::kBohrRadiusNm / geom.length_nm;
    const double prefactor = n_side * n_side * (p::kRydbergEv / barrier.m_si) * lateral * lateral;
    return prefactor * std::exp(-decay * barrier.d_ox_nm);
}

double tunnel_amplitude(const CellGeometry& geom, const TunnelBarrier& barrier, double v_cg) {
    return p::ev_to_hz(tunnel_amplitude_ev(geom, barrier, v_cg));
}

TunnelingMode classify(const CellGeometry& geom, const TunnelBarrier& barrier, double threshold_hz) {
    require(threshold_hz > 0.0, "classify: threshold must be positive");
    return tunnel_amplitude(geom, barrier, 0.0) >= threshold_hz ? TunnelingMode::NormallyOn
                                                                : TunnelingMode::NormallyOff;
}

}  // namespace fgqa
