// fgqa: floating-gate quantum annealer device calculator.
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "CLI11.hpp"

#include "fgqa/cli/commands.hpp"
#include "fgqa/cli/config.hpp"
#include "fgqa/error.hpp"

namespace {

using namespace fgqa::cli;

struct Options {
    std::string config_path;
    std::string out_path;
    std::string trace_path;
    std::optional<std::uint64_t> seed;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    bool dump_config = false;
    // anneal overrides
    std::optional<std::string> problem;
    std::optional<std::string> profile;
    std::optional<double> total_time;
    std::optional<double> total_time_s;
    std::optional<long> steps;
    std::optional<std::size_t> shots;
    std::optional<std::size_t> rows;
    std::optional<std::size_t> cols;
};

RunConfig effective_config(const Options& o, const std::string& command) {
    RunConfig c = o.config_path.empty() ? RunConfig{} : load_config(o.config_path);
    if (o.seed) c.seed = *o.seed;
    if (command == "anneal") {
        auto& a = c.anneal;
        if (o.problem) {
            // Reuse the config parser for the enum spelling.
            a.problem = parse_config("{\"schema_version\":1,\"anneal\":{\"problem\":\"" + *o.problem + "\"}}")
                            .anneal.problem;
        }
        if (o.profile) {
            try {
                a.profile = fgqa::parse_profile(*o.profile);
            } catch (const fgqa::InputError&) {
                throw ConfigError("--profile: expected linear or exponential");
            }
        }
        if (o.total_time && o.total_time_s) throw ConfigError("--T-total and --T-total-s are exclusive");
        if (o.total_time) a.total_time = *o.total_time;
        if (o.total_time_s) a.total_time = fgqa::Schedule::seconds_to_natural(*o.total_time_s);
        if (o.steps) a.steps = *o.steps;
        if (o.shots) a.shots = *o.shots;
        if (o.rows) a.rows = *o.rows;
        if (o.cols) a.cols = *o.cols;
    }
    validate(c);
    return c;
}

// Opens --out (or stdout). Failure to open is a configuration problem.
class Output {
public:
    explicit Output(const std::string& path) {
        if (path.empty()) return;
        file_.open(path, std::ios::out | std::ios::trunc);
        if (!file_) throw ConfigError("cannot write output file " + path);
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }
    void close(const std::string& path) {
        if (!file_.is_open()) {
            std::cout.flush();
            return;
        }
        file_.close();
        if (!file_) throw ConfigError("error while writing " + path);
    }

private:
    std::ofstream file_;
};

int run(const std::string& command, const Options& o) {
    const RunConfig config = effective_config(o, command);
    if (o.dump_config) {
        Output out(o.out_path);
        out.stream() << emit_config(config);
        out.close(o.out_path);
        return kExitOk;
    }
    Output out(o.out_path);
    // With the CSV on stdout the human-readable report goes to stderr.
    std::ostream& report = o.out_path.empty() ? std::cerr : std::cout;
    if (command == "derive") {
        cmd_derive(config, out.stream());
    } else if (command == "sweep") {
        cmd_sweep(config, out.stream(), o.threads);
    } else if (command == "anneal") {
        std::optional<Output> trace;
        if (!o.trace_path.empty()) trace.emplace(o.trace_path);
        cmd_anneal(config, out.stream(), trace ? &trace->stream() : nullptr, report);
        if (trace) trace->close(o.trace_path);
    } else if (command == "decohere") {
        cmd_decohere(config, out.stream(), report);
    }
    out.close(o.out_path);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Floating-gate quantum annealer: device datasheets, sweeps, annealing and decoherence"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--config", o.config_path, "JSON run configuration (defaults apply when omitted)")
            ->check(CLI::ExistingFile);
        sub->add_option("--out", o.out_path, "output CSV path (stdout when omitted)");
        sub->add_option("--seed", o.seed, "override the configured RNG seed");
        sub->add_option("--threads", o.threads, "worker threads for sweeps")->check(CLI::PositiveNumber);
        sub->add_flag("--dump-config", o.dump_config, "write the effective configuration as JSON and exit");
    };

    auto* derive = app.add_subcommand("derive", "device datasheet: J, U_h, U_w, tunnelling, coherence per L");
    auto* sweep = app.add_subcommand("sweep", "parameter sweep over L, d_ox, Z_FG, V_CG or the parabola family");
    auto* anneal = app.add_subcommand("anneal", "state-vector annealing run with histogram and trace output");
    auto* decohere = app.add_subcommand("decohere", "phonon renormalisation and coherence-time report");
    for (auto* sub : {derive, sweep, anneal, decohere}) common(sub);

    anneal->add_option("--trace", o.trace_path, "energy trace CSV path");
    anneal->add_option("--problem", o.problem, "maxcut, ising or fg_grid");
    anneal->add_option("--profile", o.profile, "schedule profile: linear or exponential");
    anneal->add_option("--T-total", o.total_time, "anneal duration in hbar/eV");
    anneal->add_option("--T-total-s", o.total_time_s, "anneal duration in seconds");
    anneal->add_option("--steps", o.steps, "integration steps");
    anneal->add_option("--shots", o.shots, "measurement shots");
    anneal->add_option("--rows", o.rows, "fg_grid rows");
    anneal->add_option("--cols", o.cols, "fg_grid columns");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        return run(command, o);
    } catch (const ConfigError& e) {
        std::cerr << "fgqa: config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const fgqa::InputError& e) {
        std::cerr << "fgqa: invalid input: " << e.what() << '\n';
        return kExitConfig;
    } catch (const fgqa::PhysicsError& e) {
        std::cerr << "fgqa: physics precondition failed: " << e.what() << '\n';
        return kExitPhysics;
    } catch (const std::exception& e) {
        std::cerr << "fgqa: " << e.what() << '\n';
        return 1;
    }
}
