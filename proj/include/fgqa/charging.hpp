#pragma once

#include <span>
#include <vector>

#include "fgqa/capnet.hpp"

namespace fgqa {

// Closed-form reduction of the chain charging energy. The effective
// capacitances c_a are the pivots of the LDL^T factorisation of the
// tridiagonal island capacitance matrix:
//   c_a[0] = C_sum[0],  c_a[k] = C_sum[k] - C_D[k-1]^2 / c_a[k-1],
// where C_sum[k] is the total capacitance hanging on FG k.
struct ReducedChargingForm {
    std::vector<double> c_a;       // F
    std::vector<double> q_v;       // bias-induced offset charge, units of e
    std::vector<double> w;         // bias work per cell, J
    CapacitanceNetwork network;

    std::size_t size() const { return c_a.size(); }
    // Element (i, j) of the inverse capacitance matrix, 1/F.
    double inverse_capacitance(std::size_t i, std::size_t j) const;
};

struct IsingParameters {
    std::vector<double> h_ev;      // Zeeman term per cell
    std::vector<double> j_ev;      // nearest-neighbour couplings, pair (k, k+1)
    double constant_ev = 0.0;
    std::vector<double> u_h_ev;    // charging height per cell that has a right neighbour
    std::vector<double> u_w_v;     // parabola spacing e/C_A per cell

    double j_kelvin(std::size_t pair = 0) const;
    double u_h_kelvin(std::size_t cell = 0) const;
    /// Ising energy of spins s in {-1, +1}.
    double energy(std::span<const int> spins) const;
};

ReducedChargingForm reduce(const CapacitanceNetwork& network, const BiasSet& bias);

/// Minimum of the branch-charge energy at fixed island charges n (units of e),
/// evaluated from the closed form. Result in eV.
double charging_energy(const ReducedChargingForm& form, std::span<const int> n);

/// Same quantity obtained by solving the constrained branch-charge problem
/// directly (KKT system, dense LU). Independent of reduce().
double minimize_charge_oracle(const CapacitanceNetwork& network, const BiasSet& bias, std::span<const int> n);

/// Effective gate charge n_G = n + Q_v + 1/2 for each cell.
std::vector<double> effective_gate_charge(const ReducedChargingForm& form, std::span<const int> n);

/// Leading-order quadratic in x = n + Q_v: diagonal terms keep one
/// next-neighbour correction, cross terms only nearest neighbours.
/// Real-valued x so that it can be evaluated on n_G +/- 1/2.
double leading_order_energy(const ReducedChargingForm& form, std::span<const double> x);

IsingParameters ising_parameters(const ReducedChargingForm& form, std::span<const double> n_g);

struct ParabolaPoint {
    double v_cg;   // swept gate voltage, V
    int n;         // charge on the swept cell
    double u_ev;
};

struct ParabolaSweep {
    double v_min = -1.0;
    double v_max = 1.0;
    int points = 201;
    int n_min = -2;
    int n_max = 2;
    std::size_t cell = 0;                 // cell whose gate is swept
    std::vector<std::size_t> tied_gates{2};  // gates that follow the swept one
    bool tie_substrate = false;
};

/// Charging parabolas of one cell as a function of its gate voltage: the
/// self-energy (e/2) (K^-1)_tt (n + Q_v_t(V))^2 for each n. Rows are ordered
/// by voltage, then n.
std::vector<ParabolaPoint> charging_parabolas(const CapacitanceNetwork& network, const BiasSet& bias,
                                              const ParabolaSweep& sweep);

/// Same curves at a single gate voltage, one point per n.
std::vector<ParabolaPoint> charging_parabolas_at(const CapacitanceNetwork& network, const BiasSet& bias,
                                                 const ParabolaSweep& sweep, double v_cg);
/// Voltage of sweep point `point` (0-based).
double sweep_voltage(const ParabolaSweep& sweep, int point);

/// Gate voltage at which the n and n+1 parabolas of the swept cell cross.
double parabola_crossing(const CapacitanceNetwork& network, const BiasSet& bias, const ParabolaSweep& sweep, int n);

}  // namespace fgqa
