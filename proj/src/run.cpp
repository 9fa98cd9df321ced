#include "iongate/run.hpp"

#include <filesystem>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "iongate/budget.hpp"
#include "iongate/constants.hpp"
#include "iongate/designer.hpp"
#include "iongate/errors.hpp"
#include "iongate/report.hpp"

namespace iongate {

namespace {

struct Inputs {
    IonSpecies species;
    TrapConfig trap;
    DesignControl control;
};

Inputs load_inputs(const RunConfig& config) {
    validate_config(config);
    // An explicit path in the config is already the result of the
    // flag > environment > file resolution; only fall back to the
    // environment / default chain when nothing was recorded at all.
    const std::string path = config.atomic_data.empty()
                                 ? resolve_atomic_data_path("", "")
                                 : config.atomic_data;
    const std::vector<IonSpecies> table = load_species_file(path);
    Inputs in;
    in.species = find_species(table, config.species);
    in.trap = TrapConfig{config.omega_z(), in.species};
    in.control = DesignControl{config.power_cap_w,
                               config.guard_band_linewidths,
                               config.safety_factor};
    return in;
}

const char* geometry_label(Geometry g) {
    switch (g) {
        case Geometry::A: return "a";
        case Geometry::B: return "b";
        case Geometry::C: return "c";
    }
    return "?";
}

void emit(const RunConfig& config, const std::string& content) {
    if (config.out.empty()) {
        std::cout << content;
    } else {
        write_file(config.out, content);
    }
}

void describe_design(TextReport& r, const GateDesign& design) {
    const auto [omega_com, omega_bre] =
        mode_frequencies(design.trap.omega_z);

    r.section("species");
    r.kv("name", design.species.name);
    r.kv("mass_kg", design.species.mass);
    r.kv("lambda_half_nm",
         wavelength_from_omega(design.species.omega_half) * 1e9);
    r.kv("lambda_threehalf_nm",
         wavelength_from_omega(design.species.omega_threehalf) * 1e9);
    r.kv("gamma_half_rad_s", design.species.gamma_half);
    r.kv("gamma_threehalf_rad_s", design.species.gamma_threehalf);

    r.section("trap");
    r.kv("omega_z_rad_s", design.trap.omega_z);
    r.kv("delta_z_m", design.delta_z);
    r.kv("omega_com_rad_s", omega_com);
    r.kv("omega_breathing_rad_s", omega_bre);

    r.section("drive");
    r.kv("n", design.profile.n);
    r.kv("Omega_rad_s", design.profile.Omega);
    r.kv("T_s", design.profile.T);

    r.section("beam");
    r.kv("geometry", geometry_label(design.geometry));
    r.kv("lambda_nm", wavelength_from_omega(design.dipole.omega_laser) * 1e9);
    r.kv("waist_m", design.waist);
    r.kv("beam_count", design.beam_count);
    r.kv("z1_offset_m", design.placement.z1_offset);
    r.kv("z2_offset_m", design.placement.z2_offset);
    r.kv("peak_intensity_W_m2", design.peak_intensity);
    r.kv("power_per_beam_W", design.power_per_beam);
    r.kv("power_total_W", design.power_total);

    r.section("dipole");
    r.kv("psi_plus", design.dipole.psi_plus);
    r.kv("psi_minus", design.dipole.psi_minus);
    r.kv("psi_differential", design.dipole.differential());
    r.kv("psi_total", design.dipole.total());
}

} // namespace

void run_trajectory(const RunConfig& config) {
    const Inputs in = load_inputs(config);
    const GateDesign design =
        design_gate(in.trap, config.geometry, config.waist(), config.n,
                    config.omega_laser(), in.control);
    const std::vector<double> grid =
        sample_grid(design.profile, config.points_per_period);
    const auto [omega_com, omega_bre] = mode_frequencies(in.trap.omega_z);

    auto run_one = [&](Mode mode, BasisState s) {
        const StateForce& f = design.forces.get(mode, s);
        return integrate_mode(f.f_const, f.f_osc, design.profile,
                              mode == Mode::Com ? omega_com : omega_bre,
                              grid);
    };

    std::vector<std::pair<std::string, std::string>> files;
    std::array<ModeResult, 4> com_runs;
    std::array<ModeResult, 4> bre_runs;
    for (BasisState s : kAllStates) {
        com_runs[state_index(s)] = run_one(Mode::Com, s);
        bre_runs[state_index(s)] = run_one(Mode::Breathing, s);
    }
    for (Mode mode : {Mode::Com, Mode::Breathing}) {
        for (BasisState s : kAllStates) {
            const ModeResult& run = mode == Mode::Com
                                        ? com_runs[state_index(s)]
                                        : bre_runs[state_index(s)];
            std::string csv = "t,re_beta,im_beta,phi\n";
            for (const TrajectorySample& sample : run.trajectory) {
                csv += format_double(sample.t);
                csv += ',';
                csv += format_double(sample.beta.real());
                csv += ',';
                csv += format_double(sample.beta.imag());
                csv += ',';
                csv += format_double(sample.phi);
                csv += '\n';
            }
            files.emplace_back(std::string("trajectory_") +
                                   std::string(mode_label(mode)) + "_" +
                                   std::string(state_label(s)) + ".csv",
                               std::move(csv));
        }
    }

    // Differential phase series 2 [phi_com(dd) - phi_bre(du)], with the
    // constant-force phase (common to all four states of a mode, hence
    // invisible to the gate) subtracted out of each mode.
    const ModeResult com_const =
        integrate_mode(design.forces.get(Mode::Com, BasisState::DownDown)
                           .f_const,
                       0.0, design.profile, omega_com, grid);
    const ModeResult bre_const =
        integrate_mode(design.forces.get(Mode::Breathing, BasisState::DownUp)
                           .f_const,
                       0.0, design.profile, omega_bre, grid);
    const ModeResult& com_dd = com_runs[state_index(BasisState::DownDown)];
    const ModeResult& bre_du = bre_runs[state_index(BasisState::DownUp)];
    std::string series = "t,phi\n";
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double value =
            2.0 * ((com_dd.trajectory[k].phi - com_const.trajectory[k].phi) -
                   (bre_du.trajectory[k].phi - bre_const.trajectory[k].phi));
        series += format_double(grid[k]);
        series += ',';
        series += format_double(value);
        series += '\n';
    }
    files.emplace_back("phase_series.csv", std::move(series));

    const std::string dir = config.out.empty() ? "." : config.out;
    try {
        std::filesystem::create_directories(dir);
    } catch (const std::filesystem::filesystem_error& e) {
        throw ConfigError("cannot create output directory '" + dir +
                          "': " + e.what());
    }
    for (const auto& [name, content] : files) {
        write_file(dir + "/" + name, content);
    }
}

void run_design(const RunConfig& config) {
    const Inputs in = load_inputs(config);
    const GateDesign design =
        design_gate(in.trap, config.geometry, config.waist(), config.n,
                    config.omega_laser(), in.control);
    const InfidelityBreakdown fid = infidelity_estimate(design);

    TextReport r;
    describe_design(r, design);

    r.section("forces");
    r.kv("f0_plus_J", design.coeffs.f0_plus);
    r.kv("f1_plus_J", design.coeffs.f1_plus);
    r.kv("f2_plus_J", design.coeffs.f2_plus);
    r.kv("f0_minus_J", design.coeffs.f0_minus);
    r.kv("f1_minus_J", design.coeffs.f1_minus);
    r.kv("f2_minus_J", design.coeffs.f2_minus);

    r.section("design");
    r.kv("effective_phase_rad", design.effective_phase);
    r.kv("effective_phase_check_rad", design.effective_phase_check);
    r.kv("p_sc", design.p_sc);
    r.kv("residual_com_re", design.residual_displacement_com.real());
    r.kv("residual_com_im", design.residual_displacement_com.imag());
    r.kv("residual_breathing_re",
         design.residual_displacement_breathing.real());
    r.kv("residual_breathing_im",
         design.residual_displacement_breathing.imag());

    r.section("infidelity");
    r.kv("scattering", fid.scattering);
    r.kv("residual_displacement", fid.residual_displacement);
    r.kv("phase_mismatch", fid.phase_mismatch);
    r.kv("total", fid.total);
    r.kv("note", "ground-state coherent estimate; thermal motion and pulse "
                 "errors are not modeled");

    r.section("warnings");
    r.kv("count", static_cast<int>(design.warnings.size()));
    for (std::size_t i = 0; i < design.warnings.size(); ++i) {
        r.kv("warning_" + std::to_string(i + 1), design.warnings[i]);
    }

    emit(config, r.str());
}

void run_sweep(const RunConfig& config) {
    const Inputs in = load_inputs(config);
    const std::vector<SweepPoint> table =
        wavelength_sweep(in.trap, config.geometry, config.waist(), config.n,
                         config.lambda_grid(), in.control);

    std::string csv = "lambda_nm,power_W,gamma_sc_T,status\n";
    for (std::size_t i = 0; i < table.size(); ++i) {
        csv += format_double(config.lambda_grid_nm[i]);
        csv += ',';
        csv += csv_field(table[i].power_per_beam);
        csv += ',';
        csv += csv_field(table[i].p_sc);
        csv += ',';
        csv += table[i].status;
        csv += '\n';
    }
    emit(config, csv);
}

void run_errors(const RunConfig& config) {
    const Inputs in = load_inputs(config);
    const GateDesign design =
        design_gate(in.trap, config.geometry, config.waist(), config.n,
                    config.omega_laser(), in.control);
    ErrorModel model;
    model.epsilon_p = config.epsilon_p;
    model.delta_t = config.delta_t_us * 1e-6;
    model.epsilon_f = config.epsilon_f;
    model.omega_f = kTwoPi * config.omega_f_khz * 1e3;
    model.position_jitter = config.position_jitter_um * 1e-6;
    model.safety_factor = config.safety_factor;
    const ErrorReport report = error_report(design, model);

    TextReport r;
    r.section("design");
    r.kv("species", design.species.name);
    r.kv("geometry", geometry_label(design.geometry));
    r.kv("lambda_nm", wavelength_from_omega(design.dipole.omega_laser) * 1e9);
    r.kv("omega_z_rad_s", design.trap.omega_z);
    r.kv("waist_m", design.waist);
    r.kv("n", design.profile.n);
    r.kv("T_s", design.profile.T);
    r.kv("peak_intensity_W_m2", design.peak_intensity);
    r.kv("effective_phase_rad", design.effective_phase);

    auto channel = [&](const ChannelReport& ch) {
        r.section(ch.name);
        r.kv("applied", ch.applied);
        r.kv("phase_error_rad", ch.phase_error);
        r.kv("bound", ch.bound);
        r.kv("tolerance", ch.tolerance);
        r.kv("pass", ch.pass);
        r.kv("note", ch.note);
    };
    channel(report.polarization);
    channel(report.timing);
    channel(report.power);
    channel(report.position);
    channel(report.frequency);

    const SpinEchoResult& echo = report.echo;
    r.section("spin_echo");
    r.kv("epsilon_p", model.epsilon_p);
    r.kv("phase_dd_rad", echo.state_phase[state_index(BasisState::DownDown)]);
    r.kv("phase_du_rad", echo.state_phase[state_index(BasisState::DownUp)]);
    r.kv("phase_ud_rad", echo.state_phase[state_index(BasisState::UpDown)]);
    r.kv("phase_uu_rad", echo.state_phase[state_index(BasisState::UpUp)]);
    r.kv("half_1_effective_rad", echo.half_effective[0]);
    r.kv("half_2_effective_rad", echo.half_effective[1]);
    r.kv("effective_phase_rad", echo.effective_phase);
    r.kv("effective_phase_error_rad", echo.effective_phase_error);
    r.kv("differential_stark_residual_rad", echo.differential_stark_residual);
    r.kv("uncorrected_differential_rad", echo.uncorrected_differential);
    r.kv("gate_time_scale", echo.gate_time_scale);
    r.kv("intensity_scale", echo.intensity_scale);

    emit(config, r.str());
}

} // namespace iongate
