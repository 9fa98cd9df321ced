#pragma once

#include <array>
#include <utility>

#include "iongate/atomic.hpp"
#include "iongate/states.hpp"

namespace iongate {

struct TrapConfig {
    double omega_z = 0.0;  // single-ion axial frequency, rad/s
    IonSpecies species;
};

// Beam/ion layouts:
//   A: one beam, both ions on the same flank, centers W/2 +- dz/2 from peak
//   B: one beam centered between the ions, W = dz, ions at -+ W/2
//   C: one tightly focussed beam per ion, each ion W/2 from its beam center
enum class Geometry { A, B, C };

struct BeamConfig {
    double waist = 0.0;           // m
    double center = 0.0;          // m
    double peak_intensity = 0.0;  // W/m^2
    double omega_laser = 0.0;     // rad/s
    Geometry geometry = Geometry::A;
};

// Distance between the two ions minimizing trap + Coulomb energy.
double equilibrium_spacing(const IonSpecies& species, double omega_z);

// (center-of-mass, breathing) axial mode frequencies.
std::pair<double, double> mode_frequencies(double omega_z);

// Gaussian profile I0 exp(-2 (z - z0)^2 / W^2) along the trap axis.
double beam_intensity(const BeamConfig& beam, double z);

// Force scale F~ = -(1/2) dI/dz at the ion's equilibrium position; one
// factor of the state coefficient psi turns it into a force.
double beam_force_scale(const BeamConfig& beam, double z_eq);

struct IonPlacement {
    double z1_offset = 0.0;  // ion 1 relative to its beam center, m
    double z2_offset = 0.0;  // ion 2 relative to its beam center, m
    int beam_count = 1;
};

// Ion positions relative to the beam center(s) for the requested layout.
// Throws GeometryUnresolvable when geometry B is requested with a waist
// that does not match the ion spacing.
IonPlacement resolve_geometry(Geometry geometry, double delta_z, double waist);

// Oscillator drive coefficients. The per-state forces on the two modes are
// built from these six numbers; f0 carries the state-independent (psi_+ +
// psi_-) part, f1/f2 the differential (psi_+ - psi_-) part.
struct ForceCoefficients {
    double f0_plus = 0.0;   // J
    double f1_plus = 0.0;
    double f2_plus = 0.0;
    double f0_minus = 0.0;
    double f1_minus = 0.0;
    double f2_minus = 0.0;
    double f_tilde_1 = 0.0;  // W/m^3
    double f_tilde_2 = 0.0;
};

// Coefficients from the raw force scales at the two ion positions. The
// mode normalizations are sqrt(hbar/(8 m omega_z)) for the center-of-mass
// mode and sqrt(hbar/(8 m sqrt(3) omega_z)) for the breathing mode.
ForceCoefficients force_coefficients_from_gradients(
    double f_tilde_1, double f_tilde_2, const DipoleCoefficients& coeffs,
    double mass, double omega_z);

// Convenience wrapper: resolves the geometry, evaluates F~ at both ions and
// assembles the coefficients.
ForceCoefficients force_coefficients(Geometry geometry, double delta_z,
                                     double waist, double peak_intensity,
                                     const DipoleCoefficients& coeffs,
                                     const TrapConfig& trap);

// Drive on one mode for one basis state: f(t) = f_const + f_osc * g(t).
struct StateForce {
    double f_const = 0.0;  // J
    double f_osc = 0.0;    // J
};

struct StateForceTable {
    std::array<StateForce, 4> com;        // indexed by BasisState
    std::array<StateForce, 4> breathing;

    const StateForce& get(Mode m, BasisState s) const {
        return m == Mode::Com ? com[state_index(s)]
                              : breathing[state_index(s)];
    }
};

// Per-state mode forces for a perfectly balanced polarization drive.
StateForceTable state_forces(const ForceCoefficients& coeffs);

// Per-state mode forces with a fractional imbalance eps_p between the two
// circular polarization intensities, I_pm = (1/2) I (1 +- eps_p)(1 +- g).
// At eps_p = 0 this coincides with state_forces.
StateForceTable state_forces_imbalanced(double f_tilde_1, double f_tilde_2,
                                        const DipoleCoefficients& coeffs,
                                        double mass, double omega_z,
                                        double eps_p);

} // namespace iongate
