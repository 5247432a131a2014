#pragma once

#include <optional>
#include <ostream>
#include <vector>

#include "fgqa/anneal.hpp"
#include "fgqa/cli/config.hpp"
#include "fgqa/tunneling.hpp"

namespace fgqa::cli {

enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitPhysics = 3 };

struct DatasheetRow {
    CellGeometry geometry;
    double j_k;
    double u_h_k;
    double u_w_ev;
    double tunnel_hz;
    TunnelingMode mode;
    double renorm_exponent;
    double t_coh_s;  // at the row's own tunnelling amplitude
};

/// One datasheet row per length in config.derive.
std::vector<DatasheetRow> derive_rows(const RunConfig& config);
void cmd_derive(const RunConfig& config, std::ostream& csv);

/// Points are evaluated on `threads` workers; rows come out in sweep order.
void cmd_sweep(const RunConfig& config, std::ostream& csv, unsigned threads = 1);

struct AnnealReport {
    std::size_t sites = 0;
    double delta0_ev = 0.0;
    double ground_energy_ev = 0.0;
    std::vector<Config> ground_states;
    double success_probability = 0.0;  // exact, from the final state
    double success_frequency = 0.0;    // from the sampled shots
    Config best_sampled = 0;
    double best_sampled_energy_ev = 0.0;
    std::optional<double> cut;  // MAX-CUT only: cut of the best sampled string
};

/// Histogram CSV to `histogram`, energy trace to `trace` when given, and a
/// short key: value summary to `report`.
AnnealReport cmd_anneal(const RunConfig& config, std::ostream& histogram, std::ostream* trace,
                        std::ostream& report);

struct DecoherenceReport {
    double exponent;
    double log10_renorm_factor;
    double alpha;
    double delta_hz;
    double log10_renorm_delta_hz;
    double gamma_so_hz;  // at the renormalised amplitude
    double t_coh_s;
};

DecoherenceReport cmd_decohere(const RunConfig& config, std::ostream& csv, std::ostream& report);

/// Preamble lines shared by every CSV: command, schema version, config hash, seed.
std::vector<std::string> csv_preamble(const RunConfig& config, std::string_view command);

}  // namespace fgqa::cli
