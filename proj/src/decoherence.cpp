#include "fgqa/decoherence.hpp"

#include <cmath>

#include "fgqa/error.hpp"
#include "fgqa/physbase.hpp"
#include "fgqa/specfun.hpp"

namespace fgqa {

using detail::require;
namespace p = phys;

void PhononEnvironment::validate() const {
    require(gamma_ev >= 0.0, "phonon bath: gamma must be non-negative");
    require(sound_speed > 0.0, "phonon bath: sound speed must be positive");
    require(density > 0.0, "phonon bath: density must be positive");
    require(debye_temperature > 0.0, "phonon bath: Debye temperature must be positive");
    require(nu.has_value() == d.has_value(), "phonon bath: nu and d must be given together");
    if (d) require(*d > 0.0, "phonon bath: d must be positive");
    require(alpha_override >= 0.0, "phonon bath: alpha must be non-negative");
}

double PhononEnvironment::alpha() const {
    if (nu && d) {
        const double g = gamma_ev * p::kElectronCharge;
        return g * g * (*nu) * (*nu) /
               (2.0 * p::kPi * p::kPi * p::kHbar * density * std::pow(sound_speed, 3) * (*d) * (*d));
    }
    return alpha_override;
}

double PhononEnvironment::cutoff_frequency() const { return p::kBoltzmannJ * debye_temperature / p::kHbar; }

namespace {
double rho_c5(const PhononEnvironment& env) { return env.density * std::pow(env.sound_speed, 5); }
double gamma_joule(const PhononEnvironment& env) { return env.gamma_ev * p::kElectronCharge; }
}  // namespace

double spectral_density_superohmic(double omega, const PhononEnvironment& env) {
    require(omega >= 0.0, "spectral_density: omega must be non-negative");
    env.validate();
    const double g = gamma_joule(env);
    return g * g * omega * omega * omega / (p::kPi * rho_c5(env));
}

double spectral_density(double omega, const PhononEnvironment& env) {
    return spectral_density_superohmic(omega, env) + 2.0 * p::kPi * p::kPi * p::kHbar * env.alpha() * omega;
}

double renormalization_exponent(const PhononEnvironment& env) {
    env.validate();
    const double g = gamma_joule(env);
    const double wc = env.cutoff_frequency();
    return g * g * wc * wc / (2.0 * p::kPi * p::kPi * p::kHbar * rho_c5(env));
}

double renorm_delta(double delta_hz, const PhononEnvironment& env) {
    require(delta_hz > 0.0, "renorm_delta: amplitude must be positive");
    return delta_hz * std::exp(-renormalization_exponent(env));
}

double log10_renorm_delta(double delta_hz, const PhononEnvironment& env) {
    require(delta_hz > 0.0, "renorm_delta: amplitude must be positive");
    return std::log10(delta_hz) - renormalization_exponent(env) / std::log(10.0);
}

double gamma_superohmic(double delta_tilde_hz, const PhononEnvironment& env) {
    require(delta_tilde_hz >= 0.0, "gamma_superohmic: amplitude must be non-negative");
    env.validate();
    const double g = gamma_joule(env);
    const double w = 2.0 * p::kPi * delta_tilde_hz;
    return g * g * w * w * w / (4.0 * p::kPi * p::kHbar * rho_c5(env));
}

double p_coherent(double t, double delta, double alpha) {
    require(t >= 0.0, "p_coherent: time must be non-negative");
    require(alpha >= 0.0, "p_coherent: alpha must be non-negative");
    const double x = delta * t;
    return std::cos(x) * std::exp(-0.5 * p::kPi * alpha * x);
}

double p_incoherent(double t, double delta, double alpha) {
    require(t >= 0.0, "p_incoherent: time must be non-negative");
    require(alpha >= 0.0, "p_incoherent: alpha must be non-negative");
    require(delta >= 0.0, "p_incoherent: amplitude must be non-negative");
    const double x = delta * t;
    if (x == 0.0) return 0.0;
    const auto [si, ci] = specfun::sici(x);
    return alpha * x * (ci * std::sin(x) - si * std::cos(x));
}

double coherence_time(double delta, double alpha) {
    require(delta > 0.0, "coherence_time: amplitude must be positive");
    require(alpha > 0.0, "coherence_time: alpha must be positive");
    return 2.0 / (p::kPi * alpha * delta);
}

double delta_from_kelvin(double kelvin) {
    return p::convert(kelvin, p::EnergyUnit::Kelvin, p::EnergyUnit::Hertz);
}

}  // namespace fgqa
