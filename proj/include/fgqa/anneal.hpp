#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fgqa/capnet.hpp"
#include "fgqa/charging.hpp"

namespace fgqa {

inline constexpr std::size_t kMaxSites = 24;
inline constexpr std::size_t kMaxBruteForceSites = 20;

// Basis configurations are bit masks: bit k set means site k has s = +1
// (the |n_k + 1> charge state), clear means s = -1.
using Config = std::uint64_t;

inline int spin(Config config, std::size_t site) { return (config >> site) & 1U ? 1 : -1; }
/// Site 0 first, '1' for s = +1.
std::string to_bitstring(Config config, std::size_t sites);
Config from_bitstring(std::string_view bits);

struct Coupling {
    std::size_t i;
    std::size_t j;
    double j_ev;

    bool operator==(const Coupling&) const = default;
};

struct Topology {
    enum class Kind { Chain, Grid, Arbitrary };
    Kind kind = Kind::Arbitrary;
    std::size_t rows = 0;
    std::size_t cols = 0;

    static Topology chain() { return {Kind::Chain, 0, 0}; }
    static Topology grid(std::size_t rows, std::size_t cols) { return {Kind::Grid, rows, cols}; }
    static Topology arbitrary() { return {Kind::Arbitrary, 0, 0}; }
};

std::string to_string(const Topology& topology);

// H = sum_{i<j} J_ij s_i s_j + sum_i h_i s_i, energies in eV.
class IsingModel {
public:
    IsingModel(std::size_t sites, std::vector<double> h, std::vector<Coupling> couplings,
               Topology topology = Topology::arbitrary());

    /// Nearest-neighbour couplings of a chain or a rows x cols grid (row-major sites).
    static std::vector<Coupling> chain_couplings(std::size_t sites, double j_ev);
    static std::vector<Coupling> grid_couplings(std::size_t rows, std::size_t cols, double j_ev);

    std::size_t size() const { return h_.size(); }
    std::size_t dimension() const { return std::size_t{1} << size(); }
    const std::vector<double>& fields() const { return h_; }
    const std::vector<Coupling>& couplings() const { return couplings_; }
    const Topology& topology() const { return topology_; }

    double energy(Config config) const;
    /// Energies of all 2^N basis states.
    std::vector<double> diagonal() const;
    /// Dense symmetric coupling lookup, zero where no edge.
    double coupling(std::size_t i, std::size_t j) const;

private:
    std::vector<double> h_;
    std::vector<Coupling> couplings_;
    Topology topology_;
};

struct Schedule {
    enum class Profile { Linear, Exponential };

    double delta0_ev = 1.0;
    Profile profile = Profile::Linear;
    double total_time = 100.0;  // units of hbar/eV
    long steps = 10000;

    // Exponential profile: Delta0 * exp(-kExponentialRate * t / T).
    static constexpr double kExponentialRate = 14.0;

    void validate() const;
    double delta_at(double t) const;
    double time_step() const { return total_time / static_cast<double>(steps); }

    static double seconds_to_natural(double seconds);
    static double natural_to_seconds(double natural);
};

Schedule::Profile parse_profile(std::string_view tag);
std::string_view to_string(Schedule::Profile profile);

class StateVector {
public:
    /// |0...0>, every site at s = -1.
    explicit StateVector(std::size_t sites);
    StateVector(std::size_t sites, std::vector<std::complex<double>> amplitudes);

    static StateVector basis(std::size_t sites, Config config);
    /// Ground state of +Delta sum_k sigma^x_k (Delta > 0): each site in (|0> - |1>)/sqrt(2).
    static StateVector transverse_ground(std::size_t sites);

    std::size_t sites() const { return sites_; }
    std::size_t dimension() const { return amps_.size(); }
    std::span<std::complex<double>> amplitudes() { return amps_; }
    std::span<const std::complex<double>> amplitudes() const { return amps_; }
    std::complex<double>& operator[](std::size_t k) { return amps_[k]; }
    const std::complex<double>& operator[](std::size_t k) const { return amps_[k]; }

    double norm() const;
    double probability(Config config) const { return std::norm(amps_[config]); }
    std::complex<double> inner(const StateVector& other) const;  // <this|other>

private:
    std::size_t sites_;
    std::vector<std::complex<double>> amps_;
};

/// H psi with H = sum J s^z s^z + sum (h s^z + Delta s^x).
StateVector apply_hamiltonian(const IsingModel& model, double delta_ev, const StateVector& psi);
double energy_expectation(const IsingModel& model, double delta_ev, const StateVector& psi);

struct EvolutionSample {
    long step;
    double time;
    double delta_ev;
    const StateVector& state;
};
using EvolutionObserver = std::function<void(const EvolutionSample&)>;

/// Second-order split-operator evolution under the schedule. Starts from the
/// transverse ground state unless `initial` is given. The observer, if set,
/// sees the state after every `observe_every` steps and after the last one.
StateVector evolve(const IsingModel& model, const Schedule& schedule,
                   const std::optional<StateVector>& initial = std::nullopt,
                   const EvolutionObserver& observer = {}, long observe_every = 0);

using Histogram = std::map<Config, std::size_t>;
Histogram measure(const StateVector& psi, std::size_t shots, std::uint64_t seed);

struct GroundStates {
    std::vector<Config> configs;
    double energy_ev;
};
GroundStates ground_state_bruteforce(const IsingModel& model);
double ground_state_probability(const StateVector& psi, const GroundStates& ground);

struct WeightedEdge {
    std::size_t u;
    std::size_t v;
    double weight;

    bool operator==(const WeightedEdge&) const = default;
};

IsingModel maxcut_to_ising(std::size_t vertices, std::span<const WeightedEdge> edges);
double cut_value(std::span<const WeightedEdge> edges, Config config);

struct FgGridModel {
    IsingModel model;
    double delta0_ev;
    IsingParameters chain;  // three-cell reduction the grid parameters come from
};

/// Ising model of a rows x cols FG array. Every edge carries J_12 of the
/// three-cell reduction; h_i = 4 U_h n_Gi + 2 J sum_nbr n_Gj. Delta0 is the
/// tunnelling amplitude at `v_cg`.
FgGridModel fg_grid_model(const CellGeometry& geom, const MaterialStack& mat, const BiasSet& bias,
                          std::size_t rows, std::size_t cols, std::span<const double> n_g, double v_cg);

}  // namespace fgqa
