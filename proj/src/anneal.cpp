#include "fgqa/anneal.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <utility>

#include "fgqa/error.hpp"
#include "fgqa/physbase.hpp"
#include "fgqa/tunneling.hpp"

namespace fgqa {

using detail::require;
using cplx = std::complex<double>;

std::string to_bitstring(Config config, std::size_t sites) {
    std::string s(sites, '0');
    for (std::size_t k = 0; k < sites; ++k) {
        if ((config >> k) & 1U) s[k] = '1';
    }
    return s;
}

Config from_bitstring(std::string_view bits) {
    require(bits.size() <= 64, "bitstring too long");
    Config c = 0;
    for (std::size_t k = 0; k < bits.size(); ++k) {
        require(bits[k] == '0' || bits[k] == '1', "bitstring must contain only 0 and 1");
        if (bits[k] == '1') c |= Config{1} << k;
    }
    return c;
}

std::string to_string(const Topology& topology) {
    switch (topology.kind) {
        case Topology::Kind::Chain: return "chain";
        case Topology::Kind::Grid: return "grid(" + std::to_string(topology.rows) + "x" + std::to_string(topology.cols) + ")";
        case Topology::Kind::Arbitrary: return "arbitrary";
    }
    return "?";
}

IsingModel::IsingModel(std::size_t sites, std::vector<double> h, std::vector<Coupling> couplings, Topology topology)
    : h_(std::move(h)), couplings_(std::move(couplings)), topology_(topology) {
    require(sites >= 1 && sites <= kMaxSites, "Ising model: site count must be in [1, 24]");
    require(h_.size() == sites, "Ising model: need one field per site");
    if (topology_.kind == Topology::Kind::Grid) {
        require(topology_.rows * topology_.cols == sites, "Ising model: grid shape does not match site count");
    }
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (auto& c : couplings_) {
        require(c.i < sites && c.j < sites, "Ising model: coupling index out of range");
        require(c.i != c.j, "Ising model: self-coupling");
        require(std::isfinite(c.j_ev), "Ising model: coupling must be finite");
        if (c.i > c.j) std::swap(c.i, c.j);
        require(seen.emplace(c.i, c.j).second, "Ising model: duplicate coupling");
    }
    for (double f : h_) require(std::isfinite(f), "Ising model: field must be finite");
}

std::vector<Coupling> IsingModel::chain_couplings(std::size_t sites, double j_ev) {
    std::vector<Coupling> out;
    for (std::size_t k = 0; k + 1 < sites; ++k) out.push_back({k, k + 1, j_ev});
    return out;
}

std::vector<Coupling> IsingModel::grid_couplings(std::size_t rows, std::size_t cols, double j_ev) {
    std::vector<Coupling> out;
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            const std::size_t k = r * cols + c;
            if (c + 1 < cols) out.push_back({k, k + 1, j_ev});
            if (r + 1 < rows) out.push_back({k, k + cols, j_ev});
        }
    }
    return out;
}

double IsingModel::energy(Config config) const {
    double e = 0.0;
    for (std::size_t k = 0; k < h_.size(); ++k) e += h_[k] * spin(config, k);
    for (const auto& c : couplings_) e += c.j_ev * spin(config, c.i) * spin(config, c.j);
    return e;
}

std::vector<double> IsingModel::diagonal() const {
    const std::size_t dim = dimension();
    std::vector<double> out(dim);
    for (Config z = 0; z < dim; ++z) out[z] = energy(z);
    return out;
}

double IsingModel::coupling(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    for (const auto& c : couplings_) {
        if (c.i == i && c.j == j) return c.j_ev;
    }
    return 0.0;
}

void Schedule::validate() const {
    require(std::isfinite(delta0_ev) && delta0_ev >= 0.0, "schedule: delta0 must be non-negative");
    require(total_time > 0.0, "schedule: total time must be positive");
    require(steps > 0, "schedule: steps must be positive");
}

double Schedule::delta_at(double t) const {
    const double s = std::clamp(t / total_time, 0.0, 1.0);
    switch (profile) {
        case Profile::Linear: return delta0_ev * (1.0 - s);
        case Profile::Exponential: return delta0_ev * std::exp(-kExponentialRate * s);
    }
    return 0.0;
}

double Schedule::seconds_to_natural(double seconds) { return seconds / phys::kNaturalTimeS; }
double Schedule::natural_to_seconds(double natural) { return natural * phys::kNaturalTimeS; }

Schedule::Profile parse_profile(std::string_view tag) {
    if (tag == "linear") return Schedule::Profile::Linear;
    if (tag == "exponential") return Schedule::Profile::Exponential;
    throw InputError("unknown schedule profile '" + std::string(tag) + "' (expected linear or exponential)");
}

std::string_view to_string(Schedule::Profile profile) {
    return profile == Schedule::Profile::Linear ? "linear" : "exponential";
}

StateVector::StateVector(std::size_t sites) : sites_(sites) {
    require(sites >= 1 && sites <= kMaxSites, "state vector: site count must be in [1, 24]");
    amps_.assign(std::size_t{1} << sites, cplx(0.0, 0.0));
    amps_[0] = 1.0;
}

StateVector::StateVector(std::size_t sites, std::vector<cplx> amplitudes) : sites_(sites), amps_(std::move(amplitudes)) {
    require(sites >= 1 && sites <= kMaxSites, "state vector: site count must be in [1, 24]");
    require(amps_.size() == (std::size_t{1} << sites), "state vector: amplitude count must be 2^sites");
}

StateVector StateVector::basis(std::size_t sites, Config config) {
    StateVector psi(sites);
    require(config < psi.dimension(), "state vector: basis index out of range");
    psi.amps_[0] = 0.0;
    psi.amps_[config] = 1.0;
    return psi;
}

StateVector StateVector::transverse_ground(std::size_t sites) {
    StateVector psi(sites);
    const double mag = std::pow(2.0, -0.5 * static_cast<double>(sites));
    for (Config z = 0; z < psi.dimension(); ++z) {
        psi.amps_[z] = (std::popcount(z) % 2 == 0) ? mag : -mag;
    }
    return psi;
}

double StateVector::norm() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return std::sqrt(s);
}

cplx StateVector::inner(const StateVector& other) const {
    require(other.dimension() == dimension(), "inner product: dimension mismatch");
    cplx s = 0.0;
    for (std::size_t k = 0; k < amps_.size(); ++k) s += std::conj(amps_[k]) * other.amps_[k];
    return s;
}

StateVector apply_hamiltonian(const IsingModel& model, double delta_ev, const StateVector& psi) {
    require(psi.sites() == model.size(), "apply_hamiltonian: state and model sizes differ");
    const auto diag = model.diagonal();
    std::vector<cplx> out(psi.dimension());
    for (Config z = 0; z < psi.dimension(); ++z) {
        cplx acc = diag[z] * psi[z];
        for (std::size_t k = 0; k < psi.sites(); ++k) acc += delta_ev * psi[z ^ (Config{1} << k)];
        out[z] = acc;
    }
    return StateVector(psi.sites(), std::move(out));
}

double energy_expectation(const IsingModel& model, double delta_ev, const StateVector& psi) {
    return psi.inner(apply_hamiltonian(model, delta_ev, psi)).real();
}

namespace {

// exp(-i theta sigma^x) on every site.
void rotate_transverse(StateVector& psi, double theta) {
    const double c = std::cos(theta);
    const cplx ms(0.0, -std::sin(theta));
    auto amps = psi.amplitudes();
    const std::size_t dim = psi.dimension();
    for (std::size_t k = 0; k < psi.sites(); ++k) {
        const std::size_t bit = std::size_t{1} << k;
        for (std::size_t z = 0; z < dim; ++z) {
            if (z & bit) continue;
            const cplx a = amps[z];
            const cplx b = amps[z | bit];
            amps[z] = c * a + ms * b;
            amps[z | bit] = c * b + ms * a;
        }
    }
}

void apply_phases(StateVector& psi, const std::vector<cplx>& phases) {
    auto amps = psi.amplitudes();
    for (std::size_t z = 0; z < amps.size(); ++z) amps[z] *= phases[z];
}

}  // namespace

StateVector evolve(const IsingModel& model, const Schedule& schedule, const std::optional<StateVector>& initial,
                   const EvolutionObserver& observer, long observe_every) {
    schedule.validate();
    StateVector psi = initial ? *initial : StateVector::transverse_ground(model.size());
    require(psi.sites() == model.size(), "evolve: initial state and model sizes differ");

    const double dt = schedule.time_step();
    const auto diag = model.diagonal();
    std::vector<cplx> half(diag.size());
    for (std::size_t z = 0; z < diag.size(); ++z) half[z] = std::polar(1.0, -0.5 * dt * diag[z]);

    if (observer) observer({0, 0.0, schedule.delta_at(0.0), psi});
    for (long s = 0; s < schedule.steps; ++s) {
        const double t_mid = (static_cast<double>(s) + 0.5) * dt;
        apply_phases(psi, half);
        rotate_transverse(psi, schedule.delta_at(t_mid) * dt);
        apply_phases(psi, half);
        const long done = s + 1;
        if (observer && (done == schedule.steps || (observe_every > 0 && done % observe_every == 0))) {
            const double t = static_cast<double>(done) * dt;
            observer({done, t, schedule.delta_at(t), psi});
        }
    }
    return psi;
}

Histogram measure(const StateVector& psi, std::size_t shots, std::uint64_t seed) {
    require(shots >= 1, "measure: need at least one shot");
    std::vector<double> cumulative(psi.dimension());
    double total = 0.0;
    for (std::size_t z = 0; z < psi.dimension(); ++z) {
        total += psi.probability(z);
        cumulative[z] = total;
    }
    require(total > 0.0, "measure: zero state");

    std::mt19937_64 rng(seed);
    Histogram hist;
    for (std::size_t s = 0; s < shots; ++s) {
        // 53 random bits -> [0, 1); avoids implementation-defined distributions.
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * total;
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        if (it == cumulative.end()) --it;
        ++hist[static_cast<Config>(it - cumulative.begin())];
    }
    return hist;
}

GroundStates ground_state_bruteforce(const IsingModel& model) {
    require(model.size() <= kMaxBruteForceSites, "ground_state_bruteforce: at most 20 sites");
    const auto diag = model.diagonal();
    double scale = 0.0;
    for (double f : model.fields()) scale += std::abs(f);
    for (const auto& c : model.couplings()) scale += std::abs(c.j_ev);
    const double tol = 1e-12 * std::max(scale, std::numeric_limits<double>::min());

    const double emin = *std::min_element(diag.begin(), diag.end());
    GroundStates gs{{}, emin};
    for (Config z = 0; z < diag.size(); ++z) {
        if (diag[z] - emin <= tol) gs.configs.push_back(z);
    }
    return gs;
}

double ground_state_probability(const StateVector& psi, const GroundStates& ground) {
    double p = 0.0;
    for (Config z : ground.configs) p += psi.probability(z);
    return p;
}

IsingModel maxcut_to_ising(std::size_t vertices, std::span<const WeightedEdge> edges) {
    std::vector<Coupling> couplings;
    for (const auto& e : edges) {
        require(e.u != e.v, "maxcut: self-loops are not allowed");
        require(e.weight > 0.0, "maxcut: edge weights must be positive");
        couplings.push_back({e.u, e.v, e.weight});
    }
    return IsingModel(vertices, std::vector<double>(vertices, 0.0), std::move(couplings));
}

double cut_value(std::span<const WeightedEdge> edges, Config config) {
    double cut = 0.0;
    for (const auto& e : edges) {
        if (spin(config, e.u) != spin(config, e.v)) cut += e.weight;
    }
    return cut;
}

FgGridModel fg_grid_model(const CellGeometry& geom, const MaterialStack& mat, const BiasSet& bias,
                          std::size_t rows, std::size_t cols, std::span<const double> n_g, double v_cg) {
    require(rows >= 1 && cols >= 1, "fg grid: need at least one row and column");
    const std::size_t sites = rows * cols;
    require(sites <= kMaxSites, "fg grid: at most 24 cells");
    require(n_g.size() == sites, "fg grid: need one n_G per cell");
    require(bias.size() == 3, "fg grid: the reduction uses a three-cell bias set");

    const auto form = reduce(build_network(geom, mat, 3), bias);
    const std::vector<double> zero(3, 0.0);
    auto chain = ising_parameters(form, zero);
    const double j = chain.j_ev.front();
    const double self = 4.0 * chain.u_h_ev.front();

    auto couplings = IsingModel::grid_couplings(rows, cols, j);
    std::vector<double> h(sites);
    for (std::size_t k = 0; k < sites; ++k) h[k] = self * n_g[k];
    for (const auto& c : couplings) {
        h[c.i] += 2.0 * j * n_g[c.j];
        h[c.j] += 2.0 * j * n_g[c.i];
    }
    const double delta0 = tunnel_amplitude_ev(geom, TunnelBarrier::from(geom, mat), v_cg);
    return {IsingModel(sites, std::move(h), std::move(couplings), Topology::grid(rows, cols)), delta0, std::move(chain)};
}

}  // namespace fgqa
