#include "iongate/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "iongate/constants.hpp"
#include "iongate/errors.hpp"

#ifndef IONGATE_DEFAULT_ATOMIC_DATA
#define IONGATE_DEFAULT_ATOMIC_DATA "data/ions.dat"
#endif

namespace iongate {

namespace {

std::string where(int line) {
    return line > 0 ? ":" + std::to_string(line) + ": " : "";
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) {
        return "";
    }
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

double parse_number(const std::string& key, const std::string& text,
                    int line) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) {
            throw std::invalid_argument("trailing characters");
        }
        return v;
    } catch (const std::exception&) {
        throw ConfigError(where(line) + "key '" + key +
                          "' expects a number, got '" + text + "'");
    }
}

int parse_integer(const std::string& key, const std::string& text, int line) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(text, &used);
        if (used != text.size()) {
            throw std::invalid_argument("trailing characters");
        }
        return v;
    } catch (const std::exception&) {
        throw ConfigError(where(line) + "key '" + key +
                          "' expects an integer, got '" + text + "'");
    }
}

} // namespace

double RunConfig::omega_z() const { return kTwoPi * omega_z_khz * 1e3; }

double RunConfig::waist() const { return waist_um * 1e-6; }

double RunConfig::lambda() const { return lambda_nm * 1e-9; }

double RunConfig::omega_laser() const {
    return omega_from_wavelength(lambda());
}

std::vector<double> RunConfig::lambda_grid() const {
    std::vector<double> grid;
    grid.reserve(lambda_grid_nm.size());
    for (double nm : lambda_grid_nm) {
        grid.push_back(nm * 1e-9);
    }
    return grid;
}

std::vector<double> parse_lambda_grid(const std::string& text, int line) {
    const auto first = text.find(':');
    const auto second = text.find(':', first == std::string::npos
                                            ? std::string::npos
                                            : first + 1);
    if (first == std::string::npos || second == std::string::npos ||
        text.find(':', second + 1) != std::string::npos) {
        throw ConfigError(where(line) +
                          "lambda grid must look like LO:HI:STEP (nm), got '" +
                          text + "'");
    }
    const double lo =
        parse_number("lambda_grid.lo", text.substr(0, first), line);
    const double hi = parse_number(
        "lambda_grid.hi", text.substr(first + 1, second - first - 1), line);
    const double step =
        parse_number("lambda_grid.step", text.substr(second + 1), line);
    if (step <= 0.0) {
        throw ConfigError(where(line) + "lambda grid step must be positive");
    }
    if (lo <= 0.0) {
        throw ConfigError(where(line) +
                          "lambda grid start must be a positive wavelength");
    }
    std::vector<double> grid;
    const double limit = hi + step * 1e-9;  // absorb accumulation rounding
    for (double v = lo; v <= limit; v += step) {
        grid.push_back(v);
        if (grid.size() > 2000000) {
            throw ConfigError(where(line) + "lambda grid has over 2e6 points");
        }
    }
    return grid;
}

Geometry parse_geometry(const std::string& text, int line) {
    if (text == "a" || text == "A") {
        return Geometry::A;
    }
    if (text == "b" || text == "B") {
        return Geometry::B;
    }
    if (text == "c" || text == "C") {
        return Geometry::C;
    }
    throw ConfigError(where(line) + "geometry must be one of a|b|c, got '" +
                      text + "'");
}

void set_config_key(RunConfig& config, const std::string& key,
                    const std::string& value, int line) {
    if (key == "species") {
        config.species = value;
    } else if (key == "omega_z_khz") {
        config.omega_z_khz = parse_number(key, value, line);
    } else if (key == "geometry") {
        config.geometry = parse_geometry(value, line);
    } else if (key == "waist_um") {
        config.waist_um = parse_number(key, value, line);
    } else if (key == "n") {
        config.n = parse_integer(key, value, line);
    } else if (key == "lambda_nm") {
        config.lambda_nm = parse_number(key, value, line);
    } else if (key == "lambda_grid") {
        config.lambda_grid_nm = parse_lambda_grid(value, line);
    } else if (key == "out") {
        config.out = value;
    } else if (key == "atomic_data") {
        config.atomic_data = value;
    } else if (key == "power_cap_w") {
        config.power_cap_w = parse_number(key, value, line);
    } else if (key == "safety_factor") {
        config.safety_factor = parse_number(key, value, line);
    } else if (key == "guard_band_linewidths") {
        config.guard_band_linewidths = parse_number(key, value, line);
    } else if (key == "points_per_period") {
        config.points_per_period = parse_integer(key, value, line);
    } else if (key == "epsilon_p") {
        config.epsilon_p = parse_number(key, value, line);
    } else if (key == "delta_t_us") {
        config.delta_t_us = parse_number(key, value, line);
    } else if (key == "epsilon_f") {
        config.epsilon_f = parse_number(key, value, line);
    } else if (key == "omega_f_khz") {
        config.omega_f_khz = parse_number(key, value, line);
    } else if (key == "position_jitter_um") {
        config.position_jitter_um = parse_number(key, value, line);
    } else {
        throw ConfigError(where(line) + "unknown key '" + key + "'");
    }
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    RunConfig config;
    std::string raw;
    int line_no = 0;
    try {
        while (std::getline(in, raw)) {
            ++line_no;
            const auto hash = raw.find('#');
            const std::string line =
                trim(hash == std::string::npos ? raw : raw.substr(0, hash));
            if (line.empty()) {
                continue;
            }
            if (line.front() == '[') {
                if (line.back() != ']' || line.size() < 3) {
                    throw ConfigError(where(line_no) +
                                      "malformed section header '" + line +
                                      "'");
                }
                continue;  // sections are purely cosmetic
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos) {
                throw ConfigError(where(line_no) +
                                  "expected key = value, got '" + line + "'");
            }
            set_config_key(config, trim(line.substr(0, eq)),
                           trim(line.substr(eq + 1)), line_no);
        }
    } catch (const ConfigError& e) {
        // Parse-loop errors start with ":<line>: "; glue the path on so the
        // message reads path:line: like a compiler diagnostic.
        const std::string what = e.what();
        throw ConfigError(path + (what.front() == ':' ? "" : ": ") + what);
    }
    return config;
}

std::string resolve_atomic_data_path(const std::string& flag_value,
                                     const std::string& config_value) {
    if (!flag_value.empty()) {
        return flag_value;
    }
    if (const char* env = std::getenv("IONGATE_ATOMIC_DATA");
        env != nullptr && env[0] != '\0') {
        return env;
    }
    if (!config_value.empty()) {
        return config_value;
    }
    return IONGATE_DEFAULT_ATOMIC_DATA;
}

void validate_config(const RunConfig& config) {
    if (config.species.empty()) {
        throw ConfigError("species must not be empty");
    }
    if (!(config.omega_z_khz > 0.0)) {
        throw ConfigError("omega_z_khz must be positive");
    }
    if (config.n < 2) {
        throw ConfigError("n must be at least 2");
    }
    if (!(config.lambda_nm > 0.0)) {
        throw ConfigError("lambda_nm must be positive");
    }
    if (config.geometry != Geometry::B && !(config.waist_um > 0.0)) {
        throw ConfigError(
            "waist_um must be positive (only geometry b can infer it)");
    }
    if (!(config.power_cap_w > 0.0)) {
        throw ConfigError("power_cap_w must be positive");
    }
    if (!(config.safety_factor > 0.0)) {
        throw ConfigError("safety_factor must be positive");
    }
    if (config.guard_band_linewidths < 0.0) {
        throw ConfigError("guard_band_linewidths must not be negative");
    }
    if (config.points_per_period < 2) {
        throw ConfigError("points_per_period must be at least 2");
    }
    if (config.epsilon_p < 0.0 || config.epsilon_p >= 1.0 ||
        config.epsilon_f < 0.0 || config.epsilon_f >= 1.0) {
        throw ConfigError("epsilon_p and epsilon_f must lie in [0, 1)");
    }
    if (config.delta_t_us < 0.0 || config.omega_f_khz < 0.0 ||
        config.position_jitter_um < 0.0) {
        throw ConfigError("error-model magnitudes must not be negative");
    }
}

} // namespace iongate
