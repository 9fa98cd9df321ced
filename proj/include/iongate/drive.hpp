#pragma once

#include <complex>
#include <vector>

#include "iongate/quadrature.hpp"
#include "iongate/states.hpp"
#include "iongate/trap.hpp"

namespace iongate {

// Polarization-rotation waveform g(t) = sin(Omega t) on [0, T], zero
// outside, with T an integer number n of trap periods and Omega tuned one
// modulation cycle short of the trap frequency. This combination puts exact
// zeros of the drive spectrum at 0 and omega_z while keeping the spectral
// weight concentrated next to the center-of-mass resonance.
struct DriveProfile {
    int n = 0;
    double omega_z = 0.0;  // rad/s
    double Omega = 0.0;    // rad/s, modulation frequency
    double T = 0.0;        // s, gate duration

    static DriveProfile make(int n, double omega_z);

    double g(double t) const;
};

// Fourier transform (2 pi)^(-1/2) int_0^T sin(Omega t) e^(-i omega t) dt.
std::complex<double> drive_fourier(const DriveProfile& profile, double omega);

// int_0^t e^(-i omega s) ds.
std::complex<double> const_kernel(double t, double omega);

// int_0^t sin(Omega s) e^(-i omega s) ds.
std::complex<double> osc_kernel(double t, double Omega, double omega);

// Mode displacement beta(t) = -(1/hbar) int_0^t f(s) e^(-i omega s) ds for
// f(t) = f_const + f_osc g(t), evaluated from the closed-form kernels.
std::complex<double> displacement_closed_at(double f_const, double f_osc,
                                            const DriveProfile& profile,
                                            double mode_omega, double t);

// Same at the end of the gate, t = T.
std::complex<double> displacement_closed(double f_const, double f_osc,
                                         const DriveProfile& profile,
                                         double mode_omega);

// Geometric phase accumulated on [t0, t1]: the double time integral is
// restructured as a single outer quadrature of
// Im[f(t) e^(-i omega t) conj(beta(t))] / hbar with the inner (running)
// integral supplied in closed form, so one evaluation costs O(N) not O(N^2).
double phase_quadrature(double f_const, double f_osc,
                        const DriveProfile& profile, double mode_omega,
                        double t0, double t1,
                        const QuadratureControl& ctrl = {});

enum class BetaMethod { ClosedForm, Quadrature };

struct TrajectorySample {
    double t = 0.0;
    std::complex<double> beta{0.0, 0.0};
    double phi = 0.0;
};

struct ModeResult {
    Mode mode = Mode::Com;
    BasisState basis_state = BasisState::DownDown;
    std::complex<double> beta_final{0.0, 0.0};
    double phi_final = 0.0;
    double beta_max_abs = 0.0;
    std::vector<TrajectorySample> trajectory;
};

// Uniform sample times covering [0, T] with the given density.
std::vector<double> sample_grid(const DriveProfile& profile,
                                int points_per_period = 400);

// Displacement and phase along the drive. The phase is always accumulated
// by quadrature increments between samples; the displacement comes either
// from the closed-form kernels or from piecewise adaptive quadrature of the
// defining integral.
ModeResult integrate_mode(double f_const, double f_osc,
                          const DriveProfile& profile, double mode_omega,
                          const std::vector<double>& t_samples,
                          BetaMethod method = BetaMethod::ClosedForm,
                          const QuadratureControl& ctrl = {});

// End-of-gate phases per mode and basis state from the resonant closed
// forms (state-dependent parts only; the drive-symmetric constant-force
// phase is common to all four states and drops out of the gate phase).
struct PhaseSet {
    std::array<double, 4> com{};        // indexed by BasisState
    std::array<double, 4> breathing{};
    double effective_phase = 0.0;

    double total(BasisState s) const {
        return com[state_index(s)] + breathing[state_index(s)];
    }
};

// Resonant closed form f_osc^2 omega T / (2 hbar^2 (omega^2 - Omega^2)).
// Exact at t = T for the commensurate center-of-mass mode; for the
// breathing mode the neglected terms are one power of n down and further
// suppressed when sqrt(3) n sits near an integer.
double phase_closed_oscillating(double f_osc, const DriveProfile& profile,
                                double mode_omega);

// Exact end-of-gate phase of a constant force:
// f_const^2 (omega T - sin omega T) / (hbar^2 omega^2).
double phase_closed_constant(double f_const, const DriveProfile& profile,
                             double mode_omega);

PhaseSet mode_phases_closed(const ForceCoefficients& coeffs,
                            const DriveProfile& profile);

// Closed-form effective phase 2 [phi(dd) - phi(du)] summed over both modes
// for an arbitrary per-state force table (used by the error-budget paths
// where the constant-force parts are no longer state independent).
double effective_phase_closed(const StateForceTable& forces,
                              const DriveProfile& profile);

// Phase from the state-independent dipole-potential offset of one ion,
// -U_const T / hbar. The oscillatory potential component integrates to
// zero over the gate by construction of the drive.
double stark_phase(double u_const_per_ion, const DriveProfile& profile);

struct OracleSample {
    double t = 0.0;
    double z = 0.0;  // m
    double p = 0.0;  // kg m/s
    std::complex<double> beta{0.0, 0.0};
};

// Independent cross-check of the displacement integral: integrates the
// classical equations of motion
//   dz/dt = p/m,   dp/dt = -m omega^2 z - f(t) sqrt(2 m omega / hbar)
// from the origin with fixed-step RK4 (substeps_per_sample steps between
// consecutive samples) and maps back through the rotating frame,
//   beta(t) = e^(-i omega t) (p + i m omega z) / sqrt(2 hbar m omega).
std::vector<OracleSample> ode_oracle(double f_const, double f_osc,
                                     const DriveProfile& profile,
                                     double mode_omega, double mass,
                                     const std::vector<double>& t_samples,
                                     int substeps_per_sample = 8);

} // namespace iongate
