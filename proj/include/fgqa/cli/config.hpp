#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fgqa/anneal.hpp"
#include "fgqa/capnet.hpp"
#include "fgqa/decoherence.hpp"
#include "fgqa/tunneling.hpp"

namespace fgqa::cli {

inline constexpr int kSchemaVersion = 1;

// Invalid or unreadable configuration; the message names the offending field.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GeometryConfig {
    double length_nm = 10.0;
    std::optional<double> width_nm;  // defaults to L
    std::optional<double> gap_nm;    // defaults to L
    double height_nm = 100.0;
    double d_ox_nm = 3.5;
    std::optional<double> d_a_nm;    // derived from the coupling ratio when absent
    double coupling_ratio = 0.3;

    bool operator==(const GeometryConfig&) const = default;
};

struct MaterialConfig {
    double eps_ox_rel = 3.9;
    double eps_a_rel = 3.9;
    double barrier_ev = 3.0;
    double m_ox = 0.5;
    double m_si = 0.19;
    double doping_cm3 = 1e20;

    MaterialStack stack() const;
    bool operator==(const MaterialConfig&) const = default;
};

struct BiasConfig {
    std::vector<double> v_cg{0.0, 0.0, 0.0};
    double v_sub = 0.0;
    std::vector<double> v_node{0.0, 0.0, 0.0, 0.0};

    BiasSet bias() const;
    bool operator==(const BiasConfig&) const = default;
};

struct TunnelConfig {
    double v_cg = 0.0;
    GatePolarity polarity = GatePolarity::NegativeRaises;
    double threshold_hz = 1e12;

    bool operator==(const TunnelConfig&) const = default;
};

struct DeriveConfig {
    std::vector<double> lengths_nm{5.0, 10.0, 15.0};
    bool operator==(const DeriveConfig&) const = default;
};

enum class SweepParameter { Length, OxideThickness, Height, GateVoltage, Parabola };

struct SweepConfig {
    SweepParameter parameter = SweepParameter::Length;
    double min = 5.0;
    double max = 20.0;
    int points = 16;
    // Parabola sweeps only.
    int n_min = -2;
    int n_max = 2;
    std::size_t cell = 0;
    std::vector<std::size_t> tied_gates{2};
    bool tie_substrate = false;

    bool operator==(const SweepConfig&) const = default;
};

enum class ProblemKind { MaxCut, Ising, FgGrid };

struct AnnealConfig {
    ProblemKind problem = ProblemKind::MaxCut;
    std::size_t sites = 4;
    std::vector<WeightedEdge> edges{{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {3, 0, 1.0}};
    std::vector<double> h;                // ising
    std::vector<Coupling> couplings;      // ising
    std::size_t rows = 2;                 // fg_grid
    std::size_t cols = 3;
    std::vector<double> n_g;              // fg_grid, one per cell (empty = all zero)
    double v_cg = -1.0;                   // fg_grid tunnelling bias
    std::optional<double> delta0_ev;      // unset: 1 eV, or the derived value for fg_grid
    Schedule::Profile profile = Schedule::Profile::Linear;
    double total_time = 50.0;             // hbar/eV
    long steps = 5000;
    std::size_t shots = 1000;
    long trace_every = 50;

    bool operator==(const AnnealConfig&) const = default;
};

struct DecoherenceConfig {
    double gamma_ev = 10.0;
    double sound_speed = 4300.0;
    double density = 2200.0;
    double debye_temperature = 450.0;
    std::optional<double> nu;
    std::optional<double> d;
    double alpha = 7.05e-9;
    double delta_kelvin = 10.0;
    std::optional<double> t_max_s;  // defaults to 3 t_coh
    int points = 201;

    PhononEnvironment environment() const;
    bool operator==(const DecoherenceConfig&) const = default;
};

struct RunConfig {
    int schema_version = kSchemaVersion;
    std::uint64_t seed = 1;
    GeometryConfig geometry;
    MaterialConfig materials;
    BiasConfig bias;
    std::vector<double> n_g{0.0, 0.0, 0.0};
    TunnelConfig tunneling;
    DeriveConfig derive;
    SweepConfig sweep;
    AnnealConfig anneal;
    DecoherenceConfig decoherence;

    bool operator==(const RunConfig&) const = default;
};

/// Resolved cell geometry: W and gap follow L, d_A follows the coupling ratio.
CellGeometry resolve_geometry(const GeometryConfig& geom, const MaterialConfig& mat);

RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);
std::string emit_config(const RunConfig& config);
/// Checks every physical field; throws ConfigError naming the field.
void validate(const RunConfig& config);
/// FNV-1a 64 of the canonical JSON form, as 16 hex digits.
std::string config_hash(const RunConfig& config);

std::string_view to_string(SweepParameter p);
std::string_view to_string(ProblemKind k);

}  // namespace fgqa::cli
