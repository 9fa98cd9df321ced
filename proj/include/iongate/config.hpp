#pragma once

#include <string>
#include <vector>

#include "iongate/trap.hpp"

namespace iongate {

// One flat bag of settings shared by every subcommand; the file parser,
// the CLI flags and the defaults all write into it. Angular quantities are
// kept in the units people type (kHz, nm, um) and converted on use.
struct RunConfig {
    std::string species = "Ca40";
    double omega_z_khz = 200.0;  // ordinary trap frequency, kHz
    Geometry geometry = Geometry::C;
    double waist_um = 5.0;  // <= 0 means "match the ion spacing" (geometry B)
    int n = 15;
    double lambda_nm = 395.1;
    std::vector<double> lambda_grid_nm;  // sweep grid, strictly increasing
    std::string out;          // output file (reports/sweep) or directory
    std::string atomic_data;  // resolved on demand, see below
    double power_cap_w = 1.0e6;
    double safety_factor = 10.0;
    double guard_band_linewidths = 1.0e3;
    int points_per_period = 400;
    // Error-model inputs for the errors subcommand.
    double epsilon_p = 1.0e-3;
    double delta_t_us = 0.0;
    double epsilon_f = 0.0;
    double omega_f_khz = 0.0;
    double position_jitter_um = 0.0;

    double omega_z() const;  // rad/s
    double waist() const;    // m
    double lambda() const;   // m
    double omega_laser() const;
    std::vector<double> lambda_grid() const;  // m
};

// Plain-text config: optional [section] headers (cosmetic), key = value
// lines, # comments. Unknown keys and malformed values raise ConfigError
// with the line number.
RunConfig parse_config_file(const std::string& path);

// Shared setter used by the file parser and the flag overrides. line = 0
// means "from the command line" and drops the line prefix from messages.
void set_config_key(RunConfig& config, const std::string& key,
                    const std::string& value, int line = 0);

// "LO:HI:STEP" in nm -> LO, LO+STEP, ... up to HI. STEP must be positive;
// LO > HI yields an empty grid.
std::vector<double> parse_lambda_grid(const std::string& text, int line = 0);

Geometry parse_geometry(const std::string& text, int line = 0);

// Resolution order: explicit flag, IONGATE_ATOMIC_DATA environment
// variable, config-file value, compiled-in default.
std::string resolve_atomic_data_path(const std::string& flag_value,
                                     const std::string& config_value);

// Sanity checks shared by the subcommands (positive frequencies, n >= 2,
// waist consistent with the geometry).
void validate_config(const RunConfig& config);

} // namespace iongate
