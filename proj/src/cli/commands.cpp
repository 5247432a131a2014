#include "fgqa/cli/commands.hpp"

#include <atomic>
#include <limits>
#include <cmath>
#include <exception>
#include <functional>
#include <thread>

#include "fgqa/charging.hpp"
#include "fgqa/cli/csv.hpp"
#include "fgqa/decoherence.hpp"
#include "fgqa/physbase.hpp"

namespace fgqa::cli {

namespace {

using Row = std::vector<std::string>;

std::string num(double x) { return format_number(x); }
std::string num(long long x) { return std::to_string(x); }

TunnelBarrier barrier_for(const RunConfig& c, const CellGeometry& geom) {
    auto b = TunnelBarrier::from(geom, c.materials.stack());
    b.polarity = c.tunneling.polarity;
    return b;
}

DatasheetRow datasheet_row(const RunConfig& c, const GeometryConfig& gc, double v_cg) {
    const auto mat = c.materials.stack();
    const auto geom = resolve_geometry(gc, c.materials);
    const auto form = reduce(build_network(geom, mat, c.bias.v_cg.size()), c.bias.bias());
    const auto ising = ising_parameters(form, c.n_g);
    const auto barrier = barrier_for(c, geom);
    const auto env = c.decoherence.environment();

    DatasheetRow r{};
    r.geometry = geom;
    r.j_k = ising.j_kelvin(0);
    r.u_h_k = ising.u_h_kelvin(0);
    r.u_w_ev = ising.u_w_v.front();
    r.tunnel_hz = tunnel_amplitude(geom, barrier, v_cg);
    r.mode = classify(geom, barrier, c.tunneling.threshold_hz);
    r.renorm_exponent = renormalization_exponent(env);
    r.t_coh_s = env.alpha() > 0.0 && r.tunnel_hz > 0.0 ? coherence_time(r.tunnel_hz, env.alpha())
                                                        : std::numeric_limits<double>::infinity();
    return r;
}

// Evaluates fn(0..n-1) on up to `threads` workers and returns the results in
// index order. The first failure (by index) is rethrown.
template <class T>
std::vector<T> parallel_map(std::size_t n, unsigned threads, const std::function<T(std::size_t)>& fn) {
    std::vector<std::optional<T>> out(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t k = next++; k < n; k = next++) {
            try {
                out[k] = fn(k);
            } catch (...) {
                errors[k] = std::current_exception();
            }
        }
    };
    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
        work();
    }
    std::vector<T> result;
    result.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        if (errors[k]) std::rethrow_exception(errors[k]);
        result.push_back(std::move(*out[k]));
    }
    return result;
}

double sweep_value(const SweepConfig& s, std::size_t k) {
    if (s.points == 1) return s.min;
    return s.min + (s.max - s.min) * static_cast<double>(k) / (s.points - 1);
}

const std::vector<Column> kDatasheetColumns = {
    {"L_nm", "FG length"},
    {"W_nm", "FG width"},
    {"Z_FG_nm", "FG height"},
    {"d_ox_nm", "tunnel oxide thickness"},
    {"d_A_nm", "control-gate oxide thickness"},
    {"J_K", "nearest-neighbour coupling of cells 1-2"},
    {"U_h_K", "charging height of cell 1"},
    {"U_w_eV", "parabola spacing e/C_A"},
    {"tunnel_Hz", "FG-substrate tunnelling amplitude at the configured V_CG"},
    {"tunnel_GHz", "same amplitude in GHz"},
    {"mode", "normally_on or normally_off at zero bias against threshold_Hz"},
    {"renorm_exponent", "phonon suppression exponent of the amplitude"},
    {"t_coh_s", "ohmic coherence time at this tunnelling amplitude"},
};

std::string_view mode_tag(TunnelingMode m) {
    return m == TunnelingMode::NormallyOn ? "normally_on" : "normally_off";
}

}  // namespace

std::vector<std::string> csv_preamble(const RunConfig& config, std::string_view command) {
    return {"fgqa " + std::string(command), "schema_version: " + std::to_string(config.schema_version),
            "config_hash: fnv1a64:" + config_hash(config), "seed: " + std::to_string(config.seed)};
}

std::vector<DatasheetRow> derive_rows(const RunConfig& config) {
    validate(config);
    std::vector<DatasheetRow> rows;
    for (double l : config.derive.lengths_nm) {
        GeometryConfig g = config.geometry;
        g.length_nm = l;
        rows.push_back(datasheet_row(config, g, config.tunneling.v_cg));
    }
    return rows;
}

void cmd_derive(const RunConfig& config, std::ostream& csv) {
    const auto rows = derive_rows(config);
    CsvWriter w(csv, kDatasheetColumns, csv_preamble(config, "derive"));
    for (const auto& r : rows) {
        const auto& g = r.geometry;
        w.row({num(g.length_nm), num(g.width_nm), num(g.height_nm), num(g.d_ox_nm), num(g.d_a_nm), num(r.j_k),
               num(r.u_h_k), num(r.u_w_ev), num(r.tunnel_hz), num(r.tunnel_hz * 1e-9), std::string(mode_tag(r.mode)),
               num(r.renorm_exponent), num(r.t_coh_s)});
    }
}

void cmd_sweep(const RunConfig& config, std::ostream& csv, unsigned threads) {
    validate(config);
    const auto& s = config.sweep;
    const std::size_t n = static_cast<std::size_t>(s.points);

    if (s.parameter == SweepParameter::Parabola) {
        const auto mat = config.materials.stack();
        const auto geom = resolve_geometry(config.geometry, config.materials);
        const auto network = build_network(geom, mat, config.bias.v_cg.size());
        const auto bias = config.bias.bias();
        ParabolaSweep ps;
        ps.v_min = s.min;
        ps.v_max = s.max;
        ps.points = s.points;
        ps.n_min = s.n_min;
        ps.n_max = s.n_max;
        ps.cell = s.cell;
        ps.tied_gates = s.tied_gates;
        ps.tie_substrate = s.tie_substrate;
        const auto blocks = parallel_map<std::vector<ParabolaPoint>>(n, threads, [&](std::size_t k) {
            return charging_parabolas_at(network, bias, ps, sweep_voltage(ps, static_cast<int>(k)));
        });
        CsvWriter w(csv,
                    {{"V_CG1_V", "swept control-gate voltage"},
                     {"n", "excess electrons on the swept cell"},
                     {"U_eV", "self charging energy of the swept cell"}},
                    csv_preamble(config, "sweep"));
        for (const auto& block : blocks) {
            for (const auto& p : block) w.row({num(p.v_cg), num(static_cast<long long>(p.n)), num(p.u_ev)});
        }
        return;
    }

    const auto rows = parallel_map<Row>(n, threads, [&](std::size_t k) {
        const double x = sweep_value(s, k);
        GeometryConfig g = config.geometry;
        double v_cg = config.tunneling.v_cg;
        switch (s.parameter) {
            case SweepParameter::Length: g.length_nm = x; break;
            case SweepParameter::OxideThickness: g.d_ox_nm = x; break;
            case SweepParameter::Height: g.height_nm = x; break;
            case SweepParameter::GateVoltage: v_cg = x; break;
            case SweepParameter::Parabola: break;
        }
        const auto r = datasheet_row(config, g, v_cg);
        return Row{num(r.geometry.length_nm), num(r.geometry.d_ox_nm), num(r.geometry.height_nm), num(v_cg),
                   num(r.geometry.d_a_nm),     num(r.j_k),              num(r.u_h_k),             num(r.u_w_ev),
                   num(r.tunnel_hz)};
    });
    CsvWriter w(csv,
                {{"L_nm", "FG length"},
                 {"d_ox_nm", "tunnel oxide thickness"},
                 {"Z_FG_nm", "FG height"},
                 {"V_CG_V", "gate voltage used for the tunnelling amplitude"},
                 {"d_A_nm", "control-gate oxide thickness"},
                 {"J_K", "nearest-neighbour coupling of cells 1-2"},
                 {"U_h_K", "charging height of cell 1"},
                 {"U_w_eV", "parabola spacing e/C_A"},
                 {"tunnel_Hz", "FG-substrate tunnelling amplitude"}},
                csv_preamble(config, "sweep " + std::string(to_string(s.parameter))));
    for (const auto& r : rows) w.row(r);
}

AnnealReport cmd_anneal(const RunConfig& config, std::ostream& histogram, std::ostream* trace,
                        std::ostream& report) {
    validate(config);
    const auto& a = config.anneal;

    std::optional<IsingModel> model;
    double delta0 = a.delta0_ev.value_or(1.0);
    switch (a.problem) {
        case ProblemKind::MaxCut: model.emplace(maxcut_to_ising(a.sites, a.edges)); break;
        case ProblemKind::Ising: {
            auto h = a.h.empty() ? std::vector<double>(a.sites, 0.0) : a.h;
            model.emplace(a.sites, std::move(h), a.couplings);
            break;
        }
        case ProblemKind::FgGrid: {
            const std::size_t cells = a.rows * a.cols;
            const auto n_g = a.n_g.empty() ? std::vector<double>(cells, 0.0) : a.n_g;
            auto fg = fg_grid_model(resolve_geometry(config.geometry, config.materials), config.materials.stack(),
                                    config.bias.bias(), a.rows, a.cols, n_g, a.v_cg);
            if (!a.delta0_ev) delta0 = fg.delta0_ev;
            model.emplace(std::move(fg.model));
            break;
        }
    }

    const Schedule schedule{delta0, a.profile, a.total_time, a.steps};
    const bool exact = model->size() <= kMaxBruteForceSites;
    std::optional<GroundStates> ground;
    if (exact) ground = ground_state_bruteforce(*model);

    std::optional<CsvWriter> trace_csv;
    if (trace) {
        trace_csv.emplace(*trace,
                          std::vector<Column>{{"step", "integration step"},
                                              {"t_hbar_per_eV", "time in units of hbar/eV"},
                                              {"t_s", "time in seconds"},
                                              {"delta_eV", "transverse field"},
                                              {"energy_eV", "<H(t)> including the transverse term"},
                                              {"p_ground", "probability of the Ising ground states"}},
                          csv_preamble(config, "anneal trace"));
    }
    EvolutionObserver observer;
    if (trace_csv) {
        observer = [&](const EvolutionSample& s) {
            const double pg = ground ? ground_state_probability(s.state, *ground) : std::nan("");
            trace_csv->row({num(static_cast<long long>(s.step)), num(s.time), num(Schedule::natural_to_seconds(s.time)),
                            num(s.delta_ev), num(energy_expectation(*model, s.delta_ev, s.state)), num(pg)});
        };
    }
    const auto psi = evolve(*model, schedule, std::nullopt, observer, a.trace_every);
    const auto hist = measure(psi, a.shots, config.seed);

    AnnealReport r;
    r.sites = model->size();
    r.delta0_ev = delta0;
    if (ground) {
        r.ground_energy_ev = ground->energy_ev;
        r.ground_states = ground->configs;
        r.success_probability = ground_state_probability(psi, *ground);
    }

    const bool maxcut = a.problem == ProblemKind::MaxCut;
    std::vector<Column> cols = {{"bitstring", "site 0 first, 1 means s = +1"},
                                {"count", "shots"},
                                {"frequency", "count / shots"},
                                {"energy_eV", "Ising energy of the string"},
                                {"ground", "1 if the string is a brute-force ground state"}};
    if (maxcut) cols.push_back({"cut", "cut weight of the partition"});
    CsvWriter w(histogram, cols, csv_preamble(config, "anneal"));

    std::size_t ground_hits = 0;
    bool first = true;
    for (const auto& [cfg, count] : hist) {
        const double e = model->energy(cfg);
        bool is_ground = false;
        if (ground) {
            for (auto g : ground->configs) is_ground = is_ground || g == cfg;
        }
        if (is_ground) ground_hits += count;
        if (first || e < r.best_sampled_energy_ev) {
            r.best_sampled = cfg;
            r.best_sampled_energy_ev = e;
            first = false;
        }
        Row row{to_bitstring(cfg, model->size()), std::to_string(count),
                num(static_cast<double>(count) / static_cast<double>(a.shots)), num(e),
                ground ? std::string(is_ground ? "1" : "0") : std::string("")};
        if (maxcut) row.push_back(num(cut_value(a.edges, cfg)));
        w.row(row);
    }
    r.success_frequency = static_cast<double>(ground_hits) / static_cast<double>(a.shots);
    if (maxcut) r.cut = cut_value(a.edges, r.best_sampled);

    report << "problem: " << to_string(a.problem) << '\n';
    report << "sites: " << r.sites << '\n';
    report << "delta0_eV: " << num(r.delta0_ev) << '\n';
    report << "schedule: " << to_string(a.profile) << ", T_total " << num(a.total_time) << " hbar/eV ("
           << num(Schedule::natural_to_seconds(a.total_time)) << " s), " << a.steps << " steps\n";
    if (ground) {
        report << "ground_energy_eV: " << num(r.ground_energy_ev) << '\n';
        report << "ground_states:";
        for (auto g : r.ground_states) report << ' ' << to_bitstring(g, r.sites);
        report << '\n';
        report << "success_probability: " << num(r.success_probability) << '\n';
        report << "success_frequency: " << num(r.success_frequency) << '\n';
    }
    report << "best_sampled: " << to_bitstring(r.best_sampled, r.sites) << " (" << num(r.best_sampled_energy_ev)
           << " eV)\n";
    if (r.cut) report << "cut: " << num(*r.cut) << '\n';
    return r;
}

DecoherenceReport cmd_decohere(const RunConfig& config, std::ostream& csv, std::ostream& report) {
    validate(config);
    const auto& d = config.decoherence;
    const auto env = d.environment();

    DecoherenceReport r{};
    r.exponent = renormalization_exponent(env);
    r.log10_renorm_factor = -r.exponent / std::log(10.0);
    r.alpha = env.alpha();
    r.delta_hz = delta_from_kelvin(d.delta_kelvin);
    r.log10_renorm_delta_hz = log10_renorm_delta(r.delta_hz, env);
    r.gamma_so_hz = gamma_superohmic(renorm_delta(r.delta_hz, env), env);
    r.t_coh_s = r.alpha > 0.0 ? coherence_time(r.delta_hz, r.alpha) : std::numeric_limits<double>::infinity();

    const double t_max = d.t_max_s ? *d.t_max_s : (std::isfinite(r.t_coh_s) ? 3.0 * r.t_coh_s : 1.0 / r.delta_hz);
    CsvWriter w(csv,
                {{"t_s", "time"},
                 {"P_coherent", "cos(Delta t) exp(-pi alpha Delta t / 2)"},
                 {"P_incoherent", "ohmic incoherent correction"},
                 {"envelope", "exp(-pi alpha Delta t / 2)"}},
                csv_preamble(config, "decohere"));
    for (int k = 0; k < d.points; ++k) {
        const double t = t_max * k / (d.points - 1);
        w.row({num(t), num(p_coherent(t, r.delta_hz, r.alpha)), num(p_incoherent(t, r.delta_hz, r.alpha)),
               num(std::exp(-0.5 * phys::kPi * r.alpha * r.delta_hz * t))});
    }

    report << "renormalization_exponent: " << num(r.exponent) << '\n';
    report << "renormalized_delta: Delta * 10^" << num(r.log10_renorm_factor) << '\n';
    report << "alpha: " << num(r.alpha) << '\n';
    report << "delta_K: " << num(d.delta_kelvin) << " (" << num(r.delta_hz) << " Hz)\n";
    report << "log10_renormalized_delta_Hz: " << num(r.log10_renorm_delta_hz) << '\n';
    report << "gamma_so_Hz: " << num(r.gamma_so_hz) << '\n';
    report << "t_coh_s: " << num(r.t_coh_s) << '\n';
    return r;
}

}  // namespace fgqa::cli
