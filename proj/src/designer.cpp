#include "iongate/designer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "iongate/constants.hpp"
#include "iongate/errors.hpp"

namespace iongate {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string cancellation_message(const DipoleCoefficients& dipole,
                                 double power, double cap) {
    std::ostringstream msg;
    msg << "differential dipole potential cancels near lambda = "
        << wavelength_from_omega(dipole.omega_laser) * 1e9
        << " nm (psi_+ - psi_- = " << dipole.differential()
        << " J m^2/W); required beam power " << power
        << " W exceeds the cap of " << cap << " W";
    return msg.str();
}

} // namespace

double required_intensity(const TrapConfig& trap, double waist, int n,
                          double omega_laser, const DesignControl& control) {
    if (waist <= 0.0) {
        throw GeometryUnresolvable("beam waist must be positive");
    }
    DriveProfile::make(n, trap.omega_z);  // validates n and omega_z
    const DipoleCoefficients dipole = dipole_coefficients(
        trap.species, omega_laser, control.guard_band_linewidths);
    const double dpsi = std::abs(dipole.differential());
    const double scale = std::sqrt(2.0 * std::exp(1.0) * kHbar *
                                   trap.species.mass) *
                         std::pow(trap.omega_z, 1.5) * waist;
    const double i0 = scale / (n * dpsi);
    if (!std::isfinite(i0) ||
        required_power(i0, waist) > control.power_cap) {
        throw DifferentialCancellation(
            cancellation_message(dipole, required_power(i0, waist),
                                 control.power_cap));
    }
    return i0;
}

double required_power(double peak_intensity, double waist) {
    return peak_intensity * kPi * waist * waist / 2.0;
}

double scattering_probability(const TrapConfig& trap, double omega_laser,
                              double waist, const DesignControl& control) {
    const DipoleCoefficients dipole = dipole_coefficients(
        trap.species, omega_laser, control.guard_band_linewidths);
    const double dpsi = std::abs(dipole.differential());
    const double gamma_per_intensity =
        scattering_coefficient(trap.species, omega_laser,
                               control.guard_band_linewidths);
    // e^(-1/2) I0 T = sqrt(8 pi^2 hbar omega_z m W^2) / |dpsi| for every n,
    // so P_sc needs no drive profile at all.
    const double exposure = std::sqrt(8.0 * kPi * kPi * kHbar * trap.omega_z *
                                      trap.species.mass) *
                            waist / dpsi;
    const double p_sc = 2.0 * gamma_per_intensity * exposure;
    // P_sc scales as 1/|psi_+ - psi_-|: once it saturates the probability
    // interpretation (>= 1) there is no usable operating point at any n,
    // which is the same pathology the intensity solve reports.
    if (!std::isfinite(p_sc) || p_sc >= 1.0) {
        std::ostringstream msg;
        msg << "differential dipole potential cancels near lambda = "
            << wavelength_from_omega(omega_laser) * 1e9
            << " nm: the scattering probability per gate saturates (2 "
               "Gamma_sc T = "
            << p_sc << ")";
        throw DifferentialCancellation(msg.str());
    }
    return p_sc;
}

GateDesign design_gate(const TrapConfig& trap, Geometry geometry,
                       double waist, int n, double omega_laser,
                       const DesignControl& control) {
    GateDesign design;
    design.species = trap.species;
    design.trap = trap;
    design.geometry = geometry;
    design.profile = DriveProfile::make(n, trap.omega_z);
    design.delta_z = equilibrium_spacing(trap.species, trap.omega_z);

    if (waist <= 0.0 && geometry == Geometry::B) {
        waist = design.delta_z;  // geometry B pins the waist to the spacing
    }
    design.waist = waist;
    design.placement = resolve_geometry(geometry, design.delta_z, waist);
    design.beam_count = design.placement.beam_count;

    design.dipole = dipole_coefficients(trap.species, omega_laser,
                                        control.guard_band_linewidths);

    const double seed =
        required_intensity(trap, waist, n, omega_laser, control);
    ForceCoefficients coeffs = force_coefficients(
        geometry, design.delta_z, waist, seed, design.dipole, trap);
    PhaseSet phases = mode_phases_closed(coeffs, design.profile);
    if (phases.effective_phase == 0.0) {
        throw NoSolution("this layout produces no differential phase at any "
                         "intensity");
    }
    // All six force coefficients are linear in I0 and the closed-form
    // phases quadratic, so the pi condition has the exact solution below.
    // Geometry B drives the differential phase negative; the magnitude is
    // what gets pinned to pi.
    const double intensity =
        seed * std::sqrt(kPi / std::abs(phases.effective_phase));
    design.peak_intensity = intensity;
    design.power_per_beam = required_power(intensity, waist);
    design.power_total = design.power_per_beam * design.beam_count;
    if (design.power_per_beam > control.power_cap) {
        std::ostringstream msg;
        msg << "solved beam power " << design.power_per_beam
            << " W exceeds the cap of " << control.power_cap << " W";
        throw NoSolution(msg.str());
    }

    design.coeffs = force_coefficients(geometry, design.delta_z, waist,
                                       intensity, design.dipole, trap);
    phases = mode_phases_closed(design.coeffs, design.profile);
    design.effective_phase = phases.effective_phase;
    design.effective_phase_check = std::abs(phases.effective_phase);
    design.forces = state_forces(design.coeffs);

    design.beam = BeamConfig{waist, 0.0, intensity, omega_laser, geometry};

    const double gamma_per_intensity =
        scattering_coefficient(trap.species, omega_laser,
                               control.guard_band_linewidths);
    const double exposure =
        beam_intensity(design.beam, design.placement.z1_offset) +
        beam_intensity(design.beam, design.placement.z2_offset);
    design.p_sc = gamma_per_intensity * exposure * design.profile.T;
    if (design.p_sc > 0.5) {
        std::ostringstream msg;
        msg << "scattering probability " << design.p_sc
            << " is outside the Gamma_sc T << 1 regime; treat it as an "
               "order-of-magnitude statement";
        design.warnings.push_back(msg.str());
    }

    const auto [omega_com, omega_bre] = mode_frequencies(trap.omega_z);
    auto worst_residual = [&](Mode mode, double mode_omega) {
        std::complex<double> worst{0.0, 0.0};
        for (BasisState s : kAllStates) {
            const StateForce& f = design.forces.get(mode, s);
            const std::complex<double> beta = displacement_closed(
                f.f_const, f.f_osc, design.profile, mode_omega);
            if (std::abs(beta) > std::abs(worst)) {
                worst = beta;
            }
        }
        return worst;
    };
    design.residual_displacement_com = worst_residual(Mode::Com, omega_com);
    design.residual_displacement_breathing =
        worst_residual(Mode::Breathing, omega_bre);

    return design;
}

std::vector<SweepPoint> wavelength_sweep(const TrapConfig& trap,
                                         Geometry geometry, double waist,
                                         int n,
                                         const std::vector<double>& lambda_grid,
                                         const DesignControl& control) {
    std::vector<SweepPoint> table(lambda_grid.size());
    if (lambda_grid.empty()) {
        return table;
    }

    std::atomic<std::size_t> cursor{0};
    std::mutex failure_mutex;
    std::exception_ptr failure;

    auto evaluate = [&](std::size_t i) {
        SweepPoint& point = table[i];
        point.lambda = lambda_grid[i];
        point.power_per_beam = kNan;
        point.p_sc = kNan;
        const double omega_laser = omega_from_wavelength(lambda_grid[i]);
        try {
            GateDesign design =
                design_gate(trap, geometry, waist, n, omega_laser, control);
            point.power_per_beam = design.power_per_beam;
            point.p_sc = design.p_sc;
            point.status = "ok";
        } catch (const GuardBandViolation&) {
            point.status = "guard_band";
        } catch (const DifferentialCancellation&) {
            point.status = "cancellation";
        } catch (const NoSolution&) {
            point.status = "no_solution";
        }
    };

    auto worker = [&] {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= table.size()) {
                return;
            }
            try {
                evaluate(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        }
    };

    const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t count = std::min(hw, table.size());
    if (count <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(count);
        for (std::size_t i = 0; i < count; ++i) {
            pool.emplace_back(worker);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return table;
}

InfidelityBreakdown infidelity_estimate(const GateDesign& design) {
    InfidelityBreakdown breakdown;
    breakdown.scattering = design.p_sc;
    const double beta_sq =
        std::norm(design.residual_displacement_com) +
        std::norm(design.residual_displacement_breathing);
    breakdown.residual_displacement = -std::expm1(-beta_sq);
    const double miss = design.effective_phase_check - kPi;
    breakdown.phase_mismatch = miss * miss / 4.0;
    breakdown.total = breakdown.scattering + breakdown.residual_displacement +
                      breakdown.phase_mismatch;
    return breakdown;
}

} // namespace iongate
