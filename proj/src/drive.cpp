#include "iongate/drive.hpp"

#include <algorithm>
#include <cmath>

#include "iongate/constants.hpp"
#include "iongate/errors.hpp"

namespace iongate {
namespace {

using cplx = std::complex<double>;
constexpr cplx kI{0.0, 1.0};

// (e^{i x t} - 1) / x. The naive form loses the real part to cancellation
// for small |x t| (cos u - 1 underflows against 1), so use the exact
// half-angle identity e^{iu} - 1 = 2 i sin(u/2) e^{iu/2}, which is well
// conditioned for every u and leaves only the x -> 0 limit as a branch.
cplx cexpm1_over(double x, double t) {
    const double u = x * t;
    if (t == 0.0) {
        return {0.0, 0.0};
    }
    if (u == 0.0) {  // x = 0 exactly, or so small the product underflows
        return kI * t;
    }
    return (2.0 * std::sin(u / 2.0) / x) * (kI * std::exp(kI * (u / 2.0)));
}

} // namespace

DriveProfile DriveProfile::make(int n, double omega_z) {
    if (n < 2) {
        throw ConfigError("drive profile requires n >= 2, got " +
                          std::to_string(n));
    }
    if (!(omega_z > 0.0)) {
        throw ConfigError("drive profile requires omega_z > 0");
    }
    DriveProfile p;
    p.n = n;
    p.omega_z = omega_z;
    p.Omega = (1.0 - 1.0 / n) * omega_z;
    p.T = kTwoPi * n / omega_z;
    return p;
}

double DriveProfile::g(double t) const {
    if (t < 0.0 || t > T) return 0.0;
    return std::sin(Omega * t);
}

cplx const_kernel(double t, double omega) {
    return -kI * cexpm1_over(-omega, t);
}

cplx osc_kernel(double t, double Omega, double omega) {
    return -0.5 * (cexpm1_over(Omega - omega, t) -
                   cexpm1_over(-(Omega + omega), t));
}

std::complex<double> drive_fourier(const DriveProfile& profile, double omega) {
    return osc_kernel(profile.T, profile.Omega, omega) / std::sqrt(kTwoPi);
}

std::complex<double> displacement_closed_at(double f_const, double f_osc,
                                            const DriveProfile& profile,
                                            double mode_omega, double t) {
    return -(f_const * const_kernel(t, mode_omega) +
             f_osc * osc_kernel(t, profile.Omega, mode_omega)) /
           kHbar;
}

std::complex<double> displacement_closed(double f_const, double f_osc,
                                         const DriveProfile& profile,
                                         double mode_omega) {
    return displacement_closed_at(f_const, f_osc, profile, mode_omega,
                                  profile.T);
}

double phase_quadrature(double f_const, double f_osc,
                        const DriveProfile& profile, double mode_omega,
                        double t0, double t1, const QuadratureControl& ctrl) {
    auto integrand = [&](double t) {
        const double f = f_const + f_osc * profile.g(t);
        const cplx beta =
            displacement_closed_at(f_const, f_osc, profile, mode_omega, t);
        const cplx rot = std::exp(-kI * mode_omega * t);
        return std::imag(f * rot * std::conj(beta)) / kHbar;
    };
    return integrate(integrand, t0, t1, ctrl).value;
}

std::vector<double> sample_grid(const DriveProfile& profile,
                                int points_per_period) {
    const int total = profile.n * points_per_period;
    std::vector<double> grid(total + 1);
    for (int k = 0; k <= total; ++k) {
        grid[k] = profile.T * static_cast<double>(k) / total;
    }
    return grid;
}

ModeResult integrate_mode(double f_const, double f_osc,
                          const DriveProfile& profile, double mode_omega,
                          const std::vector<double>& t_samples,
                          BetaMethod method, const QuadratureControl& ctrl) {
    ModeResult result;
    if (t_samples.empty()) return result;

    auto beta_integrand = [&](double t) {
        const double f = f_const + f_osc * profile.g(t);
        return -(f / kHbar) * std::exp(-kI * mode_omega * t);
    };
    auto phi_integrand = [&](double t) {
        const double f = f_const + f_osc * profile.g(t);
        const cplx beta =
            displacement_closed_at(f_const, f_osc, profile, mode_omega, t);
        return std::imag(f * std::exp(-kI * mode_omega * t) *
                         std::conj(beta)) /
               kHbar;
    };

    result.trajectory.reserve(t_samples.size());
    double prev_t = 0.0;
    cplx beta{0.0, 0.0};
    double phi = 0.0;
    for (const double t : t_samples) {
        if (method == BetaMethod::ClosedForm) {
            beta = displacement_closed_at(f_const, f_osc, profile, mode_omega,
                                          t);
        } else {
            beta += integrate_complex(beta_integrand, prev_t, t, ctrl).value;
        }
        phi += integrate(phi_integrand, prev_t, t, ctrl).value;
        result.trajectory.push_back({t, beta, phi});
        result.beta_max_abs = std::max(result.beta_max_abs, std::abs(beta));
        prev_t = t;
    }
    result.beta_final = result.trajectory.back().beta;
    result.phi_final = result.trajectory.back().phi;
    return result;
}

double phase_closed_oscillating(double f_osc, const DriveProfile& profile,
                                double mode_omega) {
    const double denom =
        mode_omega * mode_omega - profile.Omega * profile.Omega;
    return f_osc * f_osc * mode_omega * profile.T /
           (2.0 * kHbar * kHbar * denom);
}

double phase_closed_constant(double f_const, const DriveProfile& profile,
                             double mode_omega) {
    const double wt = mode_omega * profile.T;
    return f_const * f_const * (wt - std::sin(wt)) /
           (kHbar * kHbar * mode_omega * mode_omega);
}

PhaseSet mode_phases_closed(const ForceCoefficients& coeffs,
                            const DriveProfile& profile) {
    const double omega_bre = std::sqrt(3.0) * profile.omega_z;
    PhaseSet set;
    const double osc_plus[4] = {coeffs.f1_plus, coeffs.f2_plus,
                                coeffs.f2_plus, coeffs.f1_plus};
    const double osc_minus[4] = {coeffs.f1_minus, coeffs.f2_minus,
                                 coeffs.f2_minus, coeffs.f1_minus};
    for (int i = 0; i < 4; ++i) {
        set.com[i] =
            phase_closed_oscillating(osc_plus[i], profile, profile.omega_z);
        set.breathing[i] =
            phase_closed_oscillating(osc_minus[i], profile, omega_bre);
    }
    set.effective_phase =
        2.0 * (set.total(BasisState::DownDown) - set.total(BasisState::DownUp));
    return set;
}

double effective_phase_closed(const StateForceTable& forces,
                              const DriveProfile& profile) {
    const double omega_bre = std::sqrt(3.0) * profile.omega_z;
    auto state_total = [&](BasisState s) {
        const StateForce& com = forces.get(Mode::Com, s);
        const StateForce& bre = forces.get(Mode::Breathing, s);
        return phase_closed_oscillating(com.f_osc, profile, profile.omega_z) +
               phase_closed_constant(com.f_const, profile, profile.omega_z) +
               phase_closed_oscillating(bre.f_osc, profile, omega_bre) +
               phase_closed_constant(bre.f_const, profile, omega_bre);
    };
    return 2.0 * (state_total(BasisState::DownDown) -
                  state_total(BasisState::DownUp));
}

double stark_phase(double u_const_per_ion, const DriveProfile& profile) {
    return -u_const_per_ion * profile.T / kHbar;
}

std::vector<OracleSample> ode_oracle(double f_const, double f_osc,
                                     const DriveProfile& profile,
                                     double mode_omega, double mass,
                                     const std::vector<double>& t_samples,
                                     int substeps_per_sample) {
    const double coupling = std::sqrt(2.0 * mass * mode_omega / kHbar);
    const double map_scale =
        1.0 / std::sqrt(2.0 * kHbar * mass * mode_omega);

    auto force = [&](double t) {
        return -(f_const + f_osc * profile.g(t)) * coupling;
    };

    std::vector<OracleSample> samples;
    samples.reserve(t_samples.size());
    double z = 0.0, p = 0.0, t_now = 0.0;
    bool first = true;
    for (const double t_target : t_samples) {
        if (first && t_target == 0.0) {
            // keep the origin sample exact
        }
        first = false;
        if (t_target > t_now) {
            const int steps = std::max(1, substeps_per_sample);
            const double h = (t_target - t_now) / steps;
            for (int k = 0; k < steps; ++k) {
                const double t0 = t_now + k * h;
                // RK4 on (z, p).
                const double k1z = p / mass;
                const double k1p = -mass * mode_omega * mode_omega * z +
                                   force(t0);
                const double z2 = z + 0.5 * h * k1z;
                const double p2 = p + 0.5 * h * k1p;
                const double k2z = p2 / mass;
                const double k2p = -mass * mode_omega * mode_omega * z2 +
                                   force(t0 + 0.5 * h);
                const double z3 = z + 0.5 * h * k2z;
                const double p3 = p + 0.5 * h * k2p;
                const double k3z = p3 / mass;
                const double k3p = -mass * mode_omega * mode_omega * z3 +
                                   force(t0 + 0.5 * h);
                const double z4 = z + h * k3z;
                const double p4 = p + h * k3p;
                const double k4z = p4 / mass;
                const double k4p = -mass * mode_omega * mode_omega * z4 +
                                   force(t0 + h);
                z += h / 6.0 * (k1z + 2.0 * k2z + 2.0 * k3z + k4z);
                p += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
            }
            t_now = t_target;
        }
        const cplx rot = std::exp(-kI * mode_omega * t_target);
        const cplx beta = rot * map_scale * cplx{p, mass * mode_omega * z};
        samples.push_back({t_target, z, p, beta});
    }
    return samples;
}

} // namespace iongate
