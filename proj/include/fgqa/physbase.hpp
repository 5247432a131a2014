#pragma once

#include <numbers>
#include <string_view>

namespace fgqa::phys {

inline constexpr double kPi = std::numbers::pi;

inline constexpr double kElectronCharge = 1.602176634e-19;  // C
// Boltzmann constant as used throughout the device estimates (eV/K).
inline constexpr double kBoltzmannEv = 8.617e-5;
inline constexpr double kBoltzmannJ = kBoltzmannEv * kElectronCharge;  // J/K
inline constexpr double kElectronMass = 9.1093837015e-31;            // kg
inline constexpr double kBohrRadiusNm = 0.0529;
inline constexpr double kRydbergEv = 13.6;
inline constexpr double kPlanck = 6.62607015e-34;  // J s
inline constexpr double kHbar = kPlanck / (2.0 * kPi);
inline constexpr double kVacuumPermittivity = 8.854e-21;  // F/nm
inline constexpr double kSiO2Permittivity = 3.9 * kVacuumPermittivity;
inline constexpr double kHzPerEv = 2.41799e14;
// hbar/eV in seconds: one natural time unit of the annealer.
inline constexpr double kNaturalTimeS = kHbar / kElectronCharge;

enum class EnergyUnit { ElectronVolt, Kelvin, Hertz, Joule };

/// Parses "eV", "K", "Hz" or "J". Throws InputError on anything else.
EnergyUnit parse_energy_unit(std::string_view tag);
std::string_view to_string(EnergyUnit unit);

double convert(double value, EnergyUnit from, EnergyUnit to);

inline double ev_to_kelvin(double ev) { return convert(ev, EnergyUnit::ElectronVolt, EnergyUnit::Kelvin); }
inline double kelvin_to_ev(double k) { return convert(k, EnergyUnit::Kelvin, EnergyUnit::ElectronVolt); }
inline double ev_to_hz(double ev) { return convert(ev, EnergyUnit::ElectronVolt, EnergyUnit::Hertz); }
inline double hz_to_ev(double hz) { return convert(hz, EnergyUnit::Hertz, EnergyUnit::ElectronVolt); }

/// Free-electron Fermi energy in eV for a carrier density in cm^-3 and an
/// effective mass given as a multiple of m0. No valley degeneracy.
double fermi_energy(double doping_cm3, double mass_ratio);

/// Fermi wave vector in 1/m for the same free-electron gas.
double fermi_wavevector(double doping_cm3);

}  // namespace fgqa::phys
