#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "iongate/config.hpp"
#include "iongate/errors.hpp"
#include "iongate/run.hpp"

namespace {

// Flag values land here as strings so that "not given" is distinguishable
// from any real value; they are folded into the RunConfig after the config
// file (flags win).
struct FlagSet {
    std::string config_path;
    std::string species;
    std::string lambda_nm;
    std::string lambda_grid;
    std::string waist_um;
    std::string omega_z_khz;
    std::string n;
    std::string geometry;
    std::string out;
    std::string atomic_data;
    // error-model knobs, "errors" subcommand only
    std::string epsilon_p;
    std::string delta_t_us;
    std::string epsilon_f;
    std::string omega_f_khz;
    std::string position_jitter_um;
    std::string safety_factor;
};

void add_common_flags(CLI::App* cmd, FlagSet& flags) {
    cmd->add_option("--config", flags.config_path,
                    "config file (key = value, optional [sections])");
    cmd->add_option("--species", flags.species, "species name, e.g. Ca40");
    cmd->add_option("--lambda-nm", flags.lambda_nm, "laser wavelength, nm");
    cmd->add_option("--lambda-grid", flags.lambda_grid,
                    "sweep grid LO:HI:STEP in nm");
    cmd->add_option("--waist-um", flags.waist_um,
                    "beam waist, um (omit for geometry b to use the ion "
                    "spacing)");
    cmd->add_option("--omega-z-khz", flags.omega_z_khz,
                    "axial trap frequency, kHz");
    cmd->add_option("--n", flags.n, "number of trap periods per gate");
    cmd->add_option("--geometry", flags.geometry, "beam layout, one of a|b|c");
    cmd->add_option("--out", flags.out,
                    "output file (trajectory: output directory)");
    cmd->add_option("--atomic-data", flags.atomic_data,
                    "atomic data file (also via IONGATE_ATOMIC_DATA)");
}

void add_error_model_flags(CLI::App* cmd, FlagSet& flags) {
    cmd->add_option("--epsilon-p", flags.epsilon_p,
                    "polarization intensity imbalance to apply");
    cmd->add_option("--delta-t-us", flags.delta_t_us,
                    "gate duration mismatch, us");
    cmd->add_option("--epsilon-f", flags.epsilon_f,
                    "fractional power fluctuation amplitude");
    cmd->add_option("--omega-f-khz", flags.omega_f_khz,
                    "power fluctuation frequency, kHz");
    cmd->add_option("--position-jitter-um", flags.position_jitter_um,
                    "beam pointing error, um");
    cmd->add_option("--safety-factor", flags.safety_factor,
                    "tolerance = bound / safety factor");
}

iongate::RunConfig assemble(const FlagSet& flags) {
    iongate::RunConfig config;
    if (!flags.config_path.empty()) {
        config = iongate::parse_config_file(flags.config_path);
    }
    auto override_key = [&](const char* key, const std::string& value) {
        if (!value.empty()) {
            iongate::set_config_key(config, key, value);
        }
    };
    override_key("species", flags.species);
    override_key("lambda_nm", flags.lambda_nm);
    override_key("lambda_grid", flags.lambda_grid);
    override_key("waist_um", flags.waist_um);
    override_key("omega_z_khz", flags.omega_z_khz);
    override_key("n", flags.n);
    override_key("geometry", flags.geometry);
    override_key("out", flags.out);
    override_key("epsilon_p", flags.epsilon_p);
    override_key("delta_t_us", flags.delta_t_us);
    override_key("epsilon_f", flags.epsilon_f);
    override_key("omega_f_khz", flags.omega_f_khz);
    override_key("position_jitter_um", flags.position_jitter_um);
    override_key("safety_factor", flags.safety_factor);
    config.atomic_data = iongate::resolve_atomic_data_path(
        flags.atomic_data, config.atomic_data);
    return config;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-ion optical dipole force gate designer"};
    app.require_subcommand(1);

    FlagSet flags;
    CLI::App* trajectory = app.add_subcommand(
        "trajectory", "per-mode displacement and phase CSVs");
    CLI::App* design =
        app.add_subcommand("design", "solve the gate and report it");
    CLI::App* sweep =
        app.add_subcommand("sweep", "power and scattering vs wavelength");
    CLI::App* errors =
        app.add_subcommand("errors", "technical noise budget and spin echo");
    for (CLI::App* cmd : {trajectory, design, sweep, errors}) {
        add_common_flags(cmd, flags);
    }
    add_error_model_flags(errors, flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const iongate::RunConfig config = assemble(flags);
        if (trajectory->parsed()) {
            iongate::run_trajectory(config);
        } else if (design->parsed()) {
            iongate::run_design(config);
        } else if (sweep->parsed()) {
            iongate::run_sweep(config);
        } else if (errors->parsed()) {
            iongate::run_errors(config);
        }
        return 0;
    } catch (const iongate::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const iongate::PhysicsError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
