#pragma once

#include <cstddef>
#include <vector>

#include "fgqa/physbase.hpp"

namespace fgqa {

// Floating-gate cell dimensions, all in nm.
struct CellGeometry {
    double length_nm = 10.0;     // L
    double width_nm = 10.0;      // W
    double height_nm = 100.0;    // Z_FG
    double d_ox_nm = 3.5;        // tunnel oxide
    double d_a_nm = 8.1666667;   // control-gate oxide
    double gap_nm = 10.0;        // spacing to the neighbouring FG

    /// Square cell with W = gap = L (the usual NAND layout).
    static CellGeometry square(double length_nm, double height_nm, double d_ox_nm, double d_a_nm);

    double x_e_nm() const;  // FG to neighbouring CG diagonal
    double x_h_nm() const;  // FG to source/drain diagonal
    double area_nm2() const { return length_nm * width_nm; }

    void validate() const;
};

struct MaterialStack {
    double eps_ox = phys::kSiO2Permittivity;  // F/nm
    double eps_a = phys::kSiO2Permittivity;   // F/nm
    double barrier_ev = 3.0;                  // V_ox
    double m_ox = 0.5;                        // multiples of m0
    double m_si = 0.19;
    double doping_cm3 = 1e20;

    void validate() const;
};

// Branch capacitances touching one cell, in farads. Branch naming follows the
// chain network: A FG-CG, B FG-substrate, D FG-next FG, E CG-next FG,
// F FG-next CG, H FG-source, I FG-drain.
struct CellCapacitances {
    double a = 0.0;
    double b = 0.0;
    double d = 0.0;
    double e = 0.0;
    double f = 0.0;
    double h = 0.0;
    double i = 0.0;
};

class CapacitanceNetwork {
public:
    explicit CapacitanceNetwork(std::vector<CellCapacitances> cells);

    std::size_t size() const { return cells_.size(); }
    const CellCapacitances& operator[](std::size_t k) const { return cells_[k]; }
    const std::vector<CellCapacitances>& cells() const { return cells_; }

    CapacitanceNetwork scaled(double factor) const;
    // Cell order reversed; E and F swap roles, as do H and I.
    CapacitanceNetwork mirrored() const;

private:
    std::vector<CellCapacitances> cells_;
};

// Gate, substrate and diffusion voltages of a chain. Diffusion node k sits
// between cell k-1 and cell k, so the drain of cell k is the source of cell k+1.
class BiasSet {
public:
    BiasSet() = default;
    BiasSet(std::vector<double> v_cg, double v_sub, std::vector<double> v_node);

    static BiasSet zero(std::size_t cells);

    std::size_t size() const { return v_cg_.size(); }
    double v_cg(std::size_t k) const { return v_cg_[k]; }
    double v_sub() const { return v_sub_; }
    double v_source(std::size_t k) const { return v_node_[k]; }
    double v_drain(std::size_t k) const { return v_node_[k + 1]; }

    void set_v_cg(std::size_t k, double v) { v_cg_[k] = v; }
    void set_v_sub(double v) { v_sub_ = v; }
    const std::vector<double>& v_cg_all() const { return v_cg_; }
    const std::vector<double>& v_node_all() const { return v_node_; }

private:
    std::vector<double> v_cg_;
    double v_sub_ = 0.0;
    std::vector<double> v_node_;
};

/// Control-gate oxide thickness that gives coupling ratio `cr` for a tunnel
/// oxide of `d_ox_nm`.
double d_a_from_coupling_ratio(double cr, double d_ox_nm, double eps_a, double eps_ox);

CapacitanceNetwork build_network(const CellGeometry& geom, const MaterialStack& mat, std::size_t cells);

double fg_potential(double charge_c, double c_a, double c_b, double v_cg, double v_sub);

double single_electron_shift_v(double c_eff);
double single_electron_margin(double c_eff, double temperature_k);
/// (e / (C_A + C_B) expressed in K) / T.
double single_electron_margin(const CellGeometry& geom, const MaterialStack& mat, double temperature_k);

}  // namespace fgqa
