#include "fgqa/capnet.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "fgqa/error.hpp"

namespace fgqa {

using detail::require;

CellGeometry CellGeometry::square(double length_nm, double height_nm, double d_ox_nm, double d_a_nm) {
    CellGeometry g;
    g.length_nm = length_nm;
    g.width_nm = length_nm;
    g.gap_nm = length_nm;
    g.height_nm = height_nm;
    g.d_ox_nm = d_ox_nm;
    g.d_a_nm = d_a_nm;
    return g;
}

double CellGeometry::x_e_nm() const { return std::hypot(0.5 * length_nm, d_a_nm); }
double CellGeometry::x_h_nm() const { return std::hypot(0.5 * length_nm, d_ox_nm); }

void CellGeometry::validate() const {
    require(length_nm > 0.0, "geometry: L must be positive");
    require(width_nm > 0.0, "geometry: W must be positive");
    require(height_nm > 0.0, "geometry: Z_FG must be positive");
    require(d_ox_nm > 0.0, "geometry: d_ox must be positive");
    require(d_a_nm > 0.0, "geometry: d_A must be positive");
    require(gap_nm > 0.0, "geometry: x_gap must be positive");
}

void MaterialStack::validate() const {
    require(eps_ox > 0.0, "materials: eps_ox must be positive");
    require(eps_a > 0.0, "materials: eps_A must be positive");
    require(barrier_ev > 0.0, "materials: V_ox must be positive");
    require(m_ox > 0.0 && m_si > 0.0, "materials: effective masses must be positive");
    require(doping_cm3 > 0.0, "materials: doping must be positive");
}

CapacitanceNetwork::CapacitanceNetwork(std::vector<CellCapacitances> cells) : cells_(std::move(cells)) {
    require(!cells_.empty(), "capacitance network needs at least one cell");
    for (const auto& c : cells_) {
        require(c.a >= 0 && c.b >= 0 && c.d >= 0 && c.e >= 0 && c.f >= 0 && c.h >= 0 && c.i >= 0,
                "capacitance network: negative capacitance");
    }
    // Branches that would reach past the last cell do not exist.
    auto& last = cells_.back();
    require(last.d == 0.0 && last.e == 0.0 && last.f == 0.0,
            "capacitance network: last cell cannot couple beyond the chain");
}

CapacitanceNetwork CapacitanceNetwork::scaled(double factor) const {
    auto cells = cells_;
    for (auto& c : cells) {
        c.a *= factor; c.b *= factor; c.d *= factor; c.e *= factor;
        c.f *= factor; c.h *= factor; c.i *= factor;
    }
    return CapacitanceNetwork(std::move(cells));
}

CapacitanceNetwork CapacitanceNetwork::mirrored() const {
    const std::size_t m = cells_.size();
    std::vector<CellCapacitances> out(m);
    for (std::size_t k = 0; k < m; ++k) {
        const auto& src = cells_[m - 1 - k];
        out[k].a = src.a;
        out[k].b = src.b;
        out[k].h = src.i;
        out[k].i = src.h;
        if (k + 1 < m) {
            // Pair (k, k+1) in the mirror is pair (m-2-k, m-1-k) in the original.
            const auto& left = cells_[m - 2 - k];
            out[k].d = left.d;
            out[k].e = left.f;
            out[k].f = left.e;
        }
    }
    return CapacitanceNetwork(std::move(out));
}

BiasSet::BiasSet(std::vector<double> v_cg, double v_sub, std::vector<double> v_node)
    : v_cg_(std::move(v_cg)), v_sub_(v_sub), v_node_(std::move(v_node)) {
    require(!v_cg_.empty(), "bias: at least one control gate");
    require(v_node_.size() == v_cg_.size() + 1, "bias: need one more diffusion node than cells");
}

BiasSet BiasSet::zero(std::size_t cells) {
    return BiasSet(std::vector<double>(cells, 0.0), 0.0, std::vector<double>(cells + 1, 0.0));
}

double d_a_from_coupling_ratio(double cr, double d_ox_nm, double eps_a, double eps_ox) {
    require(cr > 0.0 && cr < 1.0, "coupling ratio must lie in (0, 1)");
    require(d_ox_nm > 0.0 && eps_a > 0.0 && eps_ox > 0.0, "d_A: thickness and permittivities must be positive");
    return (1.0 - cr) / cr * (eps_a / eps_ox) * d_ox_nm;
}

CapacitanceNetwork build_network(const CellGeometry& geom, const MaterialStack& mat, std::size_t cells) {
    require(cells >= 1, "build_network: need at least one cell");
    geom.validate();
    mat.validate();

    const double area = geom.area_nm2();
    CellCapacitances interior;
    interior.a = mat.eps_a * area / geom.d_a_nm;
    interior.b = mat.eps_ox * area / geom.d_ox_nm;
    interior.d = mat.eps_ox * geom.height_nm * geom.width_nm / geom.gap_nm;
    interior.e = mat.eps_ox * (0.5 * area) / geom.x_e_nm();
    interior.f = interior.e;
    interior.h = mat.eps_ox * (0.5 * area) / geom.x_h_nm();
    interior.i = interior.h;

    std::vector<CellCapacitances> out(cells, interior);
    out.back().d = 0.0;
    out.back().e = 0.0;
    out.back().f = 0.0;
    return CapacitanceNetwork(std::move(out));
}

double fg_potential(double charge_c, double c_a, double c_b, double v_cg, double v_sub) {
    const double total = c_a + c_b;
    require(total > 0.0, "fg_potential: total capacitance must be positive");
    return charge_c / total + (c_a * v_cg + c_b * v_sub) / total;
}

double single_electron_shift_v(double c_eff) {
    require(c_eff > 0.0, "single-electron shift: capacitance must be positive");
    return phys::kElectronCharge / c_eff;
}

double single_electron_margin(double c_eff, double temperature_k) {
    require(temperature_k > 0.0, "single-electron margin: temperature must be positive");
    return phys::ev_to_kelvin(single_electron_shift_v(c_eff)) / temperature_k;
}

double single_electron_margin(const CellGeometry& geom, const MaterialStack& mat, double temperature_k) {
    geom.validate();
    mat.validate();
    const double c_a = mat.eps_a * geom.area_nm2() / geom.d_a_nm;
    const double c_b = mat.eps_ox * geom.area_nm2() / geom.d_ox_nm;
    return single_electron_margin(c_a + c_b, temperature_k);
}

}  // namespace fgqa
