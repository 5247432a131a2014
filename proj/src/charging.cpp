#include "fgqa/charging.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "fgqa/error.hpp"

namespace fgqa {

using detail::require;
using phys::kElectronCharge;

namespace {

double total_capacitance(const CapacitanceNetwork& net, std::size_t k) {
    const auto& c = net[k];
    double sum = c.a + c.b + c.d + c.f + c.h + c.i;
    if (k > 0) sum += net[k - 1].d + net[k - 1].e;
    return sum;
}

// Diagonal coefficient a_k and nearest-neighbour coefficient c_k of the
// leading-order quadratic, both in eV.
double diag_coefficient(const ReducedChargingForm& form, std::size_t k) {
    const double ca = form.c_a[k];
    if (k + 1 == form.size()) return kElectronCharge / (2.0 * ca);
    const double d = form.network[k].d;
    return kElectronCharge / (2.0 * ca) * (1.0 + d * d / (ca * form.c_a[k + 1]));
}

double cross_coefficient(const ReducedChargingForm& form, std::size_t k) {
    return kElectronCharge * form.network[k].d / (form.c_a[k] * form.c_a[k + 1]);
}

double bias_work_ev(const ReducedChargingForm& form) {
    double total = 0.0;
    for (double w : form.w) total += w;
    return total / (2.0 * kElectronCharge);
}

void check_size(std::size_t expected, std::size_t got, const char* what) {
    if (expected != got) {
        throw InputError(std::string(what) + ": expected " + std::to_string(expected) + " cells, got " +
                         std::to_string(got));
    }
}

}  // namespace

double ReducedChargingForm::inverse_capacitance(std::size_t i, std::size_t j) const {
    const std::size_t m = size();
    require(i < m && j < m, "inverse_capacitance: index out of range");
    // Solve K z = e_j with K = L D L^T.
    std::vector<double> y(m, 0.0);
    for (std::size_t k = 0; k < m; ++k) {
        y[k] = (k == j) ? 1.0 : 0.0;
        if (k > 0) y[k] += network[k - 1].d / c_a[k - 1] * y[k - 1];
    }
    std::vector<double> z(m);
    for (std::size_t k = m; k-- > 0;) {
        z[k] = y[k] / c_a[k];
        if (k + 1 < m) z[k] += network[k].d / c_a[k] * z[k + 1];
    }
    return z[i];
}

double IsingParameters::j_kelvin(std::size_t pair) const { return phys::ev_to_kelvin(j_ev.at(pair)); }
double IsingParameters::u_h_kelvin(std::size_t cell) const { return phys::ev_to_kelvin(u_h_ev.at(cell)); }

double IsingParameters::energy(std::span<const int> spins) const {
    check_size(h_ev.size(), spins.size(), "IsingParameters::energy");
    double e = constant_ev;
    for (std::size_t k = 0; k < spins.size(); ++k) {
        e += h_ev[k] * spins[k];
        if (k + 1 < spins.size()) e += j_ev[k] * spins[k] * spins[k + 1];
    }
    return e;
}

ReducedChargingForm reduce(const CapacitanceNetwork& network, const BiasSet& bias) {
    const std::size_t m = network.size();
    check_size(m, bias.size(), "reduce");

    ReducedChargingForm form{{}, {}, {}, network};
    form.c_a.resize(m);
    form.q_v.resize(m);
    form.w.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
        const auto& c = network[k];
        double ca = total_capacitance(network, k);
        if (k > 0) ca -= network[k - 1].d * network[k - 1].d / form.c_a[k - 1];
        if (!(ca > 0.0)) throw PhysicsError("reduce: non-positive effective capacitance at cell " + std::to_string(k));
        form.c_a[k] = ca;

        const double vg = bias.v_cg(k);
        const double vs = bias.v_source(k);
        const double vd = bias.v_drain(k);
        const double vsub = bias.v_sub();
        double q = c.a * vg + c.b * vsub + c.h * vs + c.i * vd;
        double w = c.a * vg * vg + c.b * vsub * vsub + c.h * vs * vs + c.i * vd * vd;
        if (k + 1 < m) {
            const double vn = bias.v_cg(k + 1);
            q += c.f * vn;
            w += c.f * vn * vn;
        }
        if (k > 0) {
            const double vp = bias.v_cg(k - 1);
            q += network[k - 1].e * vp;
            w += network[k - 1].e * vp * vp;
        }
        form.q_v[k] = q / kElectronCharge;
        form.w[k] = w;
    }
    return form;
}

double charging_energy(const ReducedChargingForm& form, std::span<const int> n) {
    check_size(form.size(), n.size(), "charging_energy");
    double sum = 0.0;
    double y_prev = 0.0;
    for (std::size_t k = 0; k < n.size(); ++k) {
        double y = n[k] + form.q_v[k];
        if (k > 0) y += form.network[k - 1].d / form.c_a[k - 1] * y_prev;
        sum += y * y / form.c_a[k];
        y_prev = y;
    }
    return 0.5 * kElectronCharge * sum - bias_work_ev(form);
}

double minimize_charge_oracle(const CapacitanceNetwork& network, const BiasSet& bias, std::span<const int> n) {
    const std::size_t m = network.size();
    check_size(m, bias.size(), "minimize_charge_oracle");
    check_size(m, n.size(), "minimize_charge_oracle");

    // One entry per existing branch: capacitance (aF), driving voltage and the
    // islands it touches with their orientation in the charge constraint.
    struct Branch {
        double cap_af;
        double volts;
        int island0;
        double sign0;
        int island1;
        double sign1;
    };
    std::vector<Branch> branches;
    auto add = [&](double cap, double volts, int i0, double s0, int i1 = -1, double s1 = 0.0) {
        if (cap > 0.0) branches.push_back({cap * 1e18, volts, i0, s0, i1, s1});
    };
    for (std::size_t k = 0; k < m; ++k) {
        const auto& c = network[k];
        const int ik = static_cast<int>(k);
        add(c.a, bias.v_cg(k), ik, -1.0);
        add(c.b, bias.v_sub(), ik, -1.0);
        add(c.h, bias.v_source(k), ik, -1.0);
        add(c.i, bias.v_drain(k), ik, -1.0);
        if (k + 1 < m) {
            add(c.f, bias.v_cg(k + 1), ik, -1.0);
            add(c.e, bias.v_cg(k), ik + 1, -1.0);
            add(c.d, 0.0, ik, -1.0, ik + 1, 1.0);
        }
    }

    // Charges in units of e, capacitances in aF, energies in eV.
    const double kappa = kElectronCharge / 1e-18;
    const auto nb = static_cast<Eigen::Index>(branches.size());
    const auto ni = static_cast<Eigen::Index>(m);
    Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(nb + ni, nb + ni);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nb + ni);
    for (Eigen::Index b = 0; b < nb; ++b) {
        const auto& br = branches[static_cast<std::size_t>(b)];
        kkt(b, b) = kappa / br.cap_af;
        rhs(b) = br.volts;
        kkt(b, nb + br.island0) = -br.sign0;
        kkt(nb + br.island0, b) = br.sign0;
        if (br.island1 >= 0) {
            kkt(b, nb + br.island1) = -br.sign1;
            kkt(nb + br.island1, b) = br.sign1;
        }
    }
    for (Eigen::Index i = 0; i < ni; ++i) rhs(nb + i) = n[static_cast<std::size_t>(i)];

    Eigen::FullPivLU<Eigen::MatrixXd> lu(kkt);
    if (!lu.isInvertible()) {
        throw PhysicsError("minimize_charge_oracle: singular KKT system (an island has no capacitive branch)");
    }
    const Eigen::VectorXd sol = lu.solve(rhs);

    double energy = 0.0;
    for (Eigen::Index b = 0; b < nb; ++b) {
        const auto& br = branches[static_cast<std::size_t>(b)];
        const double q = sol(b);
        energy += 0.5 * kappa * q * q / br.cap_af - q * br.volts;
    }
    return energy;
}

std::vector<double> effective_gate_charge(const ReducedChargingForm& form, std::span<const int> n) {
    check_size(form.size(), n.size(), "effective_gate_charge");
    std::vector<double> ng(n.size());
    for (std::size_t k = 0; k < n.size(); ++k) ng[k] = n[k] + form.q_v[k] + 0.5;
    return ng;
}

double leading_order_energy(const ReducedChargingForm& form, std::span<const double> x) {
    check_size(form.size(), x.size(), "leading_order_energy");
    double e = -bias_work_ev(form);
    for (std::size_t k = 0; k < x.size(); ++k) {
        e += diag_coefficient(form, k) * x[k] * x[k];
        if (k + 1 < x.size()) e += cross_coefficient(form, k) * x[k] * x[k + 1];
    }
    return e;
}

IsingParameters ising_parameters(const ReducedChargingForm& form, std::span<const double> n_g) {
    const std::size_t m = form.size();
    check_size(m, n_g.size(), "ising_parameters");

    IsingParameters p;
    p.h_ev.assign(m, 0.0);
    p.u_w_v.resize(m);
    p.constant_ev = -bias_work_ev(form);
    for (std::size_t k = 0; k < m; ++k) {
        const double a = diag_coefficient(form, k);
        p.h_ev[k] += a * n_g[k];
        p.constant_ev += a * (n_g[k] * n_g[k] + 0.25);
        p.u_w_v[k] = kElectronCharge / form.network[k].a;
        if (k + 1 < m) {
            const double c = cross_coefficient(form, k);
            p.j_ev.push_back(0.25 * c);
            p.u_h_ev.push_back(0.25 * a);
            p.h_ev[k] += 0.5 * c * n_g[k + 1];
            p.h_ev[k + 1] += 0.5 * c * n_g[k];
            p.constant_ev += c * n_g[k] * n_g[k + 1];
        }
    }
    return p;
}

namespace {

void validate_sweep(const CapacitanceNetwork& network, const ParabolaSweep& sweep) {
    require(sweep.points >= 2, "parabola sweep: need at least two points");
    require(sweep.v_min < sweep.v_max, "parabola sweep: v_min must be below v_max");
    require(sweep.n_min <= sweep.n_max, "parabola sweep: empty occupation range");
    require(sweep.cell < network.size(), "parabola sweep: swept cell out of range");
    for (auto g : sweep.tied_gates) require(g < network.size(), "parabola sweep: tied gate out of range");
}

BiasSet bias_at(const BiasSet& base, const ParabolaSweep& sweep, double v) {
    BiasSet b = base;
    b.set_v_cg(sweep.cell, v);
    for (auto g : sweep.tied_gates) b.set_v_cg(g, v);
    if (sweep.tie_substrate) b.set_v_sub(v);
    return b;
}

}  // namespace

std::vector<ParabolaPoint> charging_parabolas_at(const CapacitanceNetwork& network, const BiasSet& bias,
                                                 const ParabolaSweep& sweep, double v_cg) {
    validate_sweep(network, sweep);
    const std::size_t t = sweep.cell;
    const double kappa = reduce(network, bias).inverse_capacitance(t, t);
    const double qv = reduce(network, bias_at(bias, sweep, v_cg)).q_v[t];
    std::vector<ParabolaPoint> out;
    for (int n = sweep.n_min; n <= sweep.n_max; ++n) {
        const double x = n + qv;
        out.push_back({v_cg, n, 0.5 * kElectronCharge * kappa * x * x});
    }
    return out;
}

double sweep_voltage(const ParabolaSweep& sweep, int point) {
    return sweep.v_min + (sweep.v_max - sweep.v_min) * point / (sweep.points - 1);
}

std::vector<ParabolaPoint> charging_parabolas(const CapacitanceNetwork& network, const BiasSet& bias,
                                              const ParabolaSweep& sweep) {
    validate_sweep(network, sweep);
    std::vector<ParabolaPoint> out;
    out.reserve(static_cast<std::size_t>(sweep.points) * static_cast<std::size_t>(sweep.n_max - sweep.n_min + 1));
    for (int p = 0; p < sweep.points; ++p) {
        const auto row = charging_parabolas_at(network, bias, sweep, sweep_voltage(sweep, p));
        out.insert(out.end(), row.begin(), row.end());
    }
    return out;
}

double parabola_crossing(const CapacitanceNetwork& network, const BiasSet& bias, const ParabolaSweep& sweep, int n) {
    validate_sweep(network, sweep);
    const std::size_t t = sweep.cell;
    const double q0 = reduce(network, bias_at(bias, sweep, 0.0)).q_v[t];
    const double q1 = reduce(network, bias_at(bias, sweep, 1.0)).q_v[t];
    const double slope = q1 - q0;
    if (slope == 0.0) throw PhysicsError("parabola_crossing: swept gate does not couple to the cell");
    return (-0.5 - n - q0) / slope;
}

}  // namespace fgqa
