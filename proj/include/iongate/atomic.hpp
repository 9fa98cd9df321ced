#pragma once

#include <string>
#include <utility>
#include <vector>

#include "iongate/roots.hpp"

namespace iongate {

// S1/2 -> P1/2, P3/2 fine-structure data of an alkaline-earth ion.
// All frequencies and linewidths are angular (rad/s), mass in kg.
struct IonSpecies {
    std::string name;
    double mass = 0.0;
    double omega_half = 0.0;       // S1/2 - P1/2 transition frequency
    double omega_threehalf = 0.0;  // S1/2 - P3/2 transition frequency
    double gamma_half = 0.0;       // P1/2 linewidth
    double gamma_threehalf = 0.0;  // P3/2 linewidth
    std::string source;            // free-text citation from the data file
};

// Dipole-potential coefficients for sigma+ / sigma- light at omega_laser:
// the potential of |down> is psi_plus*I_plus + psi_minus*I_minus and of
// |up> is psi_minus*I_plus + psi_plus*I_minus. Units J m^2 / W.
struct DipoleCoefficients {
    double psi_plus = 0.0;
    double psi_minus = 0.0;
    double omega_laser = 0.0;

    double differential() const { return psi_plus - psi_minus; }
    double total() const { return psi_plus + psi_minus; }
};

inline constexpr double kDefaultGuardBandLinewidths = 1e3;

// Throws ConfigError when a species record violates basic sanity
// (ordering of the fine-structure frequencies, linewidths small compared
// to transition frequencies, positive mass).
void validate_species(const IonSpecies& species);

// Throws GuardBandViolation when omega_laser is within
// guard_band_linewidths of either transition (measured in that
// transition's own linewidth). The dispersive formulas below are only
// trustworthy well outside the natural linewidth.
void check_guard_band(const IonSpecies& species, double omega_laser,
                      double guard_band_linewidths = kDefaultGuardBandLinewidths);

// psi_plus / psi_minus at the given laser frequency, including the
// counter-rotating denominators 1/(omega0 - omega_L) + 1/(omega0 + omega_L).
DipoleCoefficients dipole_coefficients(
    const IonSpecies& species, double omega_laser,
    double guard_band_linewidths = kDefaultGuardBandLinewidths);

// (u_down, u_up) in J for the given circular-component intensities in W/m^2.
std::pair<double, double> state_potentials(const DipoleCoefficients& coeffs,
                                           double i_plus, double i_minus);

// Scattering coefficient Gamma_sc / I: multiply by intensity (W/m^2) to get
// the off-resonant photon scattering rate (1/s) of one ion.
double scattering_coefficient(
    const IonSpecies& species, double omega_laser,
    double guard_band_linewidths = kDefaultGuardBandLinewidths);

struct WavelengthRange {
    double lo = 0.0;  // m
    double hi = 0.0;  // m
};

// Wavelength in [range.lo, range.hi] where psi_plus = psi_minus, found by a
// bracketed root solve to 1e-6 relative. Throws NoSignChange when the
// differential coefficient does not change sign on the interval.
double cancellation_wavelength(
    const IonSpecies& species, const WavelengthRange& range,
    double guard_band_linewidths = kDefaultGuardBandLinewidths,
    const RootControl& ctrl = {});

// Parses the plain-text atomic data file (one [section] per species with
// keys name, mass_u, lambda_half_nm, lambda_threehalf_nm, gamma_half_2pi_MHz,
// gamma_threehalf_2pi_MHz, source). Schema violations throw ConfigError with
// the offending line number.
std::vector<IonSpecies> load_species_file(const std::string& path);

const IonSpecies& find_species(const std::vector<IonSpecies>& table,
                               const std::string& name);

} // namespace iongate
