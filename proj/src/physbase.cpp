#include "fgqa/physbase.hpp"

#include <cmath>
#include <string>

#include "fgqa/error.hpp"

namespace fgqa::phys {

namespace {

// eV carried by one unit of each scale.
double ev_per_unit(EnergyUnit unit) {
    switch (unit) {
        case EnergyUnit::ElectronVolt: return 1.0;
        case EnergyUnit::Kelvin: return kBoltzmannEv;
        case EnergyUnit::Hertz: return 1.0 / kHzPerEv;
        case EnergyUnit::Joule: return 1.0 / kElectronCharge;
    }
    throw InputError("unknown energy unit");
}

}  // namespace

EnergyUnit parse_energy_unit(std::string_view tag) {
    if (tag == "eV") return EnergyUnit::ElectronVolt;
    if (tag == "K") return EnergyUnit::Kelvin;
    if (tag == "Hz") return EnergyUnit::Hertz;
    if (tag == "J") return EnergyUnit::Joule;
    throw InputError("unknown energy unit '" + std::string(tag) + "' (expected eV, K, Hz or J)");
}

std::string_view to_string(EnergyUnit unit) {
    switch (unit) {
        case EnergyUnit::ElectronVolt: return "eV";
        case EnergyUnit::Kelvin: return "K";
        case EnergyUnit::Hertz: return "Hz";
        case EnergyUnit::Joule: return "J";
    }
    return "?";
}

double convert(double value, EnergyUnit from, EnergyUnit to) {
    detail::require(std::isfinite(value), "convert: value must be finite");
    if (from == to) return value;
    return value * (ev_per_unit(from) / ev_per_unit(to));
}

double fermi_wavevector(double doping_cm3) {
    detail::require(doping_cm3 > 0.0, "fermi_wavevector: doping must be positive");
    const double n_m3 = doping_cm3 * 1e6;
    return std::cbrt(3.0 * kPi * kPi * n_m3);
}

double fermi_energy(double doping_cm3, double mass_ratio) {
    detail::require(doping_cm3 > 0.0, "fermi_energy: doping must be positive");
    detail::require(mass_ratio > 0.0, "fermi_energy: effective mass must be positive");
    const double kf = fermi_wavevector(doping_cm3);
    const double joules = kHbar * kHbar * kf * kf / (2.0 * mass_ratio * kElectronMass);
    return joules / kElectronCharge;
}

}  // namespace fgqa::phys
