#pragma once

// Physical constants (CODATA 2018), strict SI.

namespace iongate {

inline constexpr double kHbar = 1.054571817e-34;          // J s
inline constexpr double kSpeedOfLight = 2.99792458e8;     // m/s
inline constexpr double kElementaryCharge = 1.602176634e-19;   // C
inline constexpr double kVacuumPermittivity = 8.8541878128e-12; // F/m
inline constexpr double kAtomicMassUnit = 1.66053906660e-27;   // kg
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Angular frequency of light at vacuum wavelength lambda (m).
constexpr double omega_from_wavelength(double lambda) {
    return kTwoPi * kSpeedOfLight / lambda;
}

constexpr double wavelength_from_omega(double omega) {
    return kTwoPi * kSpeedOfLight / omega;
}

} // namespace iongate
