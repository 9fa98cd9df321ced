#include "iongate/trap.hpp"

#include <cmath>

#include "iongate/constants.hpp"
#include "iongate/errors.hpp"

namespace iongate {

double equilibrium_spacing(const IonSpecies& species, double omega_z) {
    if (!(omega_z > 0.0)) {
        throw ConfigError("equilibrium_spacing: omega_z must be positive");
    }
    const double e2 = kElementaryCharge * kElementaryCharge;
    return std::cbrt(e2 / (2.0 * kPi * kVacuumPermittivity * species.mass *
                           omega_z * omega_z));
}

std::pair<double, double> mode_frequencies(double omega_z) {
    return {omega_z, std::sqrt(3.0) * omega_z};
}

double beam_intensity(const BeamConfig& beam, double z) {
    const double u = (z - beam.center) / beam.waist;
    return beam.peak_intensity * std::exp(-2.0 * u * u);
}

double beam_force_scale(const BeamConfig& beam, double z_eq) {
    const double dz = z_eq - beam.center;
    const double u = dz / beam.waist;
    return 2.0 * beam.peak_intensity * dz / (beam.waist * beam.waist) *
           std::exp(-2.0 * u * u);
}

IonPlacement resolve_geometry(Geometry geometry, double delta_z,
                              double waist) {
    if (!(waist > 0.0)) {
        throw GeometryUnresolvable("beam waist must be positive");
    }
    if (!(delta_z > 0.0)) {
        throw GeometryUnresolvable("ion spacing must be positive");
    }
    switch (geometry) {
        case Geometry::A:
            // Beam peak a distance W/2 beyond the string midpoint.
            return {-0.5 * waist - 0.5 * delta_z, -0.5 * waist + 0.5 * delta_z,
                    1};
        case Geometry::B:
            if (std::fabs(waist - delta_z) > 1e-9 * waist) {
                throw GeometryUnresolvable(
                    "geometry B requires the waist to equal the ion spacing "
                    "(got waist " + std::to_string(waist * 1e6) +
                    " um, spacing " + std::to_string(delta_z * 1e6) + " um)");
            }
            return {-0.5 * waist, 0.5 * waist, 1};
        case Geometry::C:
            // One beam per ion, both ions on the same flank of their beam.
            return {-0.5 * waist, -0.5 * waist, 2};
    }
    throw GeometryUnresolvable("unknown geometry");
}

ForceCoefficients force_coefficients_from_gradients(
    double f_tilde_1, double f_tilde_2, const DipoleCoefficients& coeffs,
    double mass, double omega_z) {
    const double norm_com = std::sqrt(kHbar / (8.0 * mass * omega_z));
    const double norm_bre =
        std::sqrt(kHbar / (8.0 * mass * std::sqrt(3.0) * omega_z));
    const double sum_psi = coeffs.total();
    const double diff_psi = coeffs.differential();

    ForceCoefficients f;
    f.f_tilde_1 = f_tilde_1;
    f.f_tilde_2 = f_tilde_2;
    f.f0_plus = norm_com * (f_tilde_1 + f_tilde_2) * sum_psi;
    f.f1_plus = norm_com * (f_tilde_1 + f_tilde_2) * diff_psi;
    f.f2_plus = norm_com * (f_tilde_1 - f_tilde_2) * diff_psi;
    f.f0_minus = norm_bre * (f_tilde_2 - f_tilde_1) * sum_psi;
    f.f1_minus = norm_bre * (f_tilde_2 - f_tilde_1) * diff_psi;
    f.f2_minus = -norm_bre * (f_tilde_2 + f_tilde_1) * diff_psi;
    return f;
}

ForceCoefficients force_coefficients(Geometry geometry, double delta_z,
                                     double waist, double peak_intensity,
                                     const DipoleCoefficients& coeffs,
                                     const TrapConfig& trap) {
    const IonPlacement placement = resolve_geometry(geometry, delta_z, waist);
    BeamConfig beam;
    beam.waist = waist;
    beam.center = 0.0;
    beam.peak_intensity = peak_intensity;
    beam.omega_laser = coeffs.omega_laser;
    beam.geometry = geometry;
    const double f1 = beam_force_scale(beam, placement.z1_offset);
    const double f2 = beam_force_scale(beam, placement.z2_offset);
    return force_coefficients_from_gradients(f1, f2, coeffs,
                                             trap.species.mass, trap.omega_z);
}

StateForceTable state_forces(const ForceCoefficients& f) {
    StateForceTable t;
    const double osc_plus[4] = {-f.f1_plus, -f.f2_plus, f.f2_plus, f.f1_plus};
    const double osc_minus[4] = {-f.f1_minus, -f.f2_minus, f.f2_minus,
                                 f.f1_minus};
    for (int i = 0; i < 4; ++i) {
        t.com[i] = {-f.f0_plus, osc_plus[i]};
        t.breathing[i] = {-f.f0_minus, osc_minus[i]};
    }
    return t;
}

StateForceTable state_forces_imbalanced(double f_tilde_1, double f_tilde_2,
                                        const DipoleCoefficients& coeffs,
                                        double mass, double omega_z,
                                        double eps_p) {
    const double norm_com = std::sqrt(kHbar / (8.0 * mass * omega_z));
    const double norm_bre =
        std::sqrt(kHbar / (8.0 * mass * std::sqrt(3.0) * omega_z));
    const double sum_psi = coeffs.total();
    const double diff_psi = coeffs.differential();

    // Per-ion potential coefficients: U(alpha) = (1/2) I(z) *
    // [sigma_c(alpha) + sigma_o(alpha) g(t)] with the imbalance mixing the
    // sum and difference channels.
    auto sigma_c = [&](int spin) {
        return sum_psi + spin * eps_p * diff_psi;
    };
    auto sigma_o = [&](int spin) {
        return spin * diff_psi + eps_p * sum_psi;
    };

    StateForceTable t;
    for (const BasisState s : kAllStates) {
        const int s1 = spin_sign(s, 0);
        const int s2 = spin_sign(s, 1);
        const int i = state_index(s);
        t.com[i].f_const =
            -norm_com * (f_tilde_1 * sigma_c(s1) + f_tilde_2 * sigma_c(s2));
        t.com[i].f_osc =
            -norm_com * (f_tilde_1 * sigma_o(s1) + f_tilde_2 * sigma_o(s2));
        t.breathing[i].f_const =
            -norm_bre * (f_tilde_2 * sigma_c(s2) - f_tilde_1 * sigma_c(s1));
        t.breathing[i].f_osc =
            -norm_bre * (f_tilde_2 * sigma_o(s2) - f_tilde_1 * sigma_o(s1));
    }
    return t;
}

} // namespace iongate
