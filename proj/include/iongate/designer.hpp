#pragma once

#include <complex>
#include <string>
#include <vector>

#include "iongate/atomic.hpp"
#include "iongate/drive.hpp"
#include "iongate/trap.hpp"

namespace iongate {

struct DesignControl {
    // Solves that would need more than this much power per beam are
    // reported as unreachable instead of returning absurd numbers.
    double power_cap = 1.0e6;  // W
    double guard_band_linewidths = kDefaultGuardBandLinewidths;
    // "Much smaller than" thresholds are bound / safety_factor.
    double safety_factor = 10.0;
};

// Leading-order peak intensity for a pi differential phase,
// I0 = sqrt(2 e hbar omega_z^3 m W^2 / (n (psi_+ - psi_-))^2).
// Valid for the layouts where both ions sit half a waist from a beam
// center; design_gate refines it with the exact coefficients.
// Throws DifferentialCancellation when psi_+ - psi_- is so small that the
// implied beam power exceeds the cap.
double required_intensity(const TrapConfig& trap, double waist, int n,
                          double omega_laser,
                          const DesignControl& control = {});

// Total power of one Gaussian beam, P = I0 pi W^2 / 2.
double required_power(double peak_intensity, double waist);

// Off-resonant photon scattering probability of the two-ion crystal over
// one gate at the leading-order operating intensity,
//   P_sc = 2 Gamma_sc/I * sqrt(8 pi^2 hbar omega_z m W^2) / |psi_+ - psi_-|.
// The n dependences of intensity (1/n) and gate time (n) cancel, so this
// is independent of n. Counts both ions: scattering off either one spoils
// the gate.
double scattering_probability(const TrapConfig& trap, double omega_laser,
                              double waist, const DesignControl& control = {});

struct GateDesign {
    IonSpecies species;
    TrapConfig trap;
    DipoleCoefficients dipole;
    DriveProfile profile;
    Geometry geometry = Geometry::C;
    BeamConfig beam;  // carries the solved peak intensity
    IonPlacement placement;
    double delta_z = 0.0;         // m
    double waist = 0.0;           // m
    double peak_intensity = 0.0;  // W/m^2
    double power_per_beam = 0.0;  // W
    double power_total = 0.0;     // W
    int beam_count = 1;
    // Scattering probability over the gate, both ions, at the intensities
    // the ions actually see in this layout.
    double p_sc = 0.0;
    double effective_phase = 0.0;        // signed, rad
    double effective_phase_check = 0.0;  // |effective_phase|, target pi
    // Worst case over the four basis states of the end-of-gate mode
    // displacement. The center-of-mass entry vanishes by construction of
    // the drive; the breathing entry is the incommensurate leftover.
    std::complex<double> residual_displacement_com{0.0, 0.0};
    std::complex<double> residual_displacement_breathing{0.0, 0.0};
    ForceCoefficients coeffs;
    StateForceTable forces;
    std::vector<std::string> warnings;
};

// Full design: resolves the layout, seeds the intensity with
// required_intensity and rescales it so the closed-form effective phase
// (both modes, exact force coefficients) lands on pi. The phase is an
// exact quadratic in the intensity, so the rescale is the exact root.
// Throws NoSolution when the solved power exceeds the cap,
// DifferentialCancellation / GuardBandViolation as usual, and
// GeometryUnresolvable for a bad layout (for geometry B a non-positive
// waist means "use the ion spacing").
GateDesign design_gate(const TrapConfig& trap, Geometry geometry,
                       double waist, int n, double omega_laser,
                       const DesignControl& control = {});

struct SweepPoint {
    double lambda = 0.0;         // m
    double power_per_beam = 0.0;  // NaN when not solvable
    double p_sc = 0.0;            // NaN when not solvable
    std::string status;           // ok | guard_band | cancellation | no_solution
};

// design_gate for every grid wavelength. Points are evaluated on a thread
// pool; results come back in grid order regardless of completion order.
// Per-point physics failures land in the status column, everything else
// propagates.
std::vector<SweepPoint> wavelength_sweep(const TrapConfig& trap,
                                         Geometry geometry, double waist,
                                         int n,
                                         const std::vector<double>& lambda_grid,
                                         const DesignControl& control = {});

struct InfidelityBreakdown {
    double scattering = 0.0;
    double residual_displacement = 0.0;  // 1 - exp(-sum |beta(T)|^2)
    double phase_mismatch = 0.0;         // |check - pi|^2 / 4
    double total = 0.0;
};

// Ground-state coherent estimate; no thermal enhancement.
InfidelityBreakdown infidelity_estimate(const GateDesign& design);

} // namespace iongate
