#pragma once

#include <optional>

namespace fgqa {

// Acoustic-phonon bath of the tunnel oxide.
struct PhononEnvironment {
    double gamma_ev = 10.0;           // deformation coupling
    double sound_speed = 4300.0;      // m/s
    double density = 2200.0;          // kg/m^3
    double debye_temperature = 450.0; // K
    std::optional<double> nu;         // two-level-system parameters of the ohmic term
    std::optional<double> d;
    double alpha_override = 7.05e-9;

    void validate() const;
    /// Ohmic damping strength: from nu and d when both are set, else alpha_override.
    double alpha() const;
    double cutoff_frequency() const;  // omega_c = k_B Theta_D / hbar, rad/s
};

/// J(omega) = gamma^2 omega^3 / (pi rho c^5) + 2 pi^2 hbar alpha omega, in J.
double spectral_density(double omega, const PhononEnvironment& env);
double spectral_density_superohmic(double omega, const PhononEnvironment& env);

/// gamma^2 omega_c^2 / (2 pi^2 hbar rho c^5): the suppression exponent of Delta.
double renormalization_exponent(const PhononEnvironment& env);
double renorm_delta(double delta_hz, const PhononEnvironment& env);
/// log10 of the renormalised amplitude; finite even when renorm_delta underflows.
double log10_renorm_delta(double delta_hz, const PhononEnvironment& env);

/// T = 0 superohmic damping rate (1/s) for a renormalised amplitude in Hz.
double gamma_superohmic(double delta_tilde_hz, const PhononEnvironment& env);

double p_coherent(double t, double delta, double alpha);
double p_incoherent(double t, double delta, double alpha);
/// t such that pi alpha Delta t / 2 = 1.
double coherence_time(double delta, double alpha);

/// Amplitude in Hz that corresponds to an energy given in K (k_B T / h).
double delta_from_kelvin(double kelvin);

}  // namespace fgqa
