#include "iongate/atomic.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "iongate/constants.hpp"
#include "iongate/errors.hpp"

namespace iongate {
namespace {

// Two-level dispersive denominator with its counter-rotating partner.
double denominators(double omega0, double omega_laser) {
    return 1.0 / (omega0 - omega_laser) + 1.0 / (omega0 + omega_laser);
}

} // namespace

void validate_species(const IonSpecies& s) {
    auto fail = [&](const std::string& why) {
        throw ConfigError("species '" + s.name + "': " + why);
    };
    if (!(s.mass > 0.0)) fail("mass must be positive");
    if (!(s.omega_half > 0.0) || !(s.omega_threehalf > 0.0))
        fail("transition frequencies must be positive");
    if (!(s.omega_threehalf > s.omega_half))
        fail("P3/2 frequency must exceed P1/2 frequency");
    if (!(s.gamma_half > 0.0) || !(s.gamma_threehalf > 0.0))
        fail("linewidths must be positive");
    if (s.gamma_half * 1e4 > s.omega_half ||
        s.gamma_threehalf * 1e4 > s.omega_threehalf)
        fail("linewidths must be at least 1e4 times smaller than the "
             "transition frequencies");
}

void check_guard_band(const IonSpecies& s, double omega_laser,
                      double guard_band_linewidths) {
    if (!(omega_laser > 0.0)) {
        throw ConfigError("laser frequency must be positive");
    }
    const bool near_half =
        std::fabs(omega_laser - s.omega_half) <
        guard_band_linewidths * s.gamma_half;
    const bool near_threehalf =
        std::fabs(omega_laser - s.omega_threehalf) <
        guard_band_linewidths * s.gamma_threehalf;
    if (near_half || near_threehalf) {
        std::ostringstream msg;
        msg << "laser at " << wavelength_from_omega(omega_laser) * 1e9
            << " nm is inside the guard band (" << guard_band_linewidths
            << " linewidths) of the "
            << (near_half ? "S1/2-P1/2" : "S1/2-P3/2")
            << " transition of " << s.name;
        throw GuardBandViolation(msg.str());
    }
}

DipoleCoefficients dipole_coefficients(const IonSpecies& s,
                                       double omega_laser,
                                       double guard_band_linewidths) {
    check_guard_band(s, omega_laser, guard_band_linewidths);
    const double c2 = kSpeedOfLight * kSpeedOfLight;
    const double d_half = denominators(s.omega_half, omega_laser);
    const double d_threehalf = denominators(s.omega_threehalf, omega_laser);
    const double w1_3 = std::pow(s.omega_half, 3);
    const double w3_3 = std::pow(s.omega_threehalf, 3);

    DipoleCoefficients out;
    out.omega_laser = omega_laser;
    // The P1/2 line carries twice the weight of the P3/2 line for the
    // stretched sigma transitions; the opposite-circular coupling goes
    // through P3/2 alone at full strength.
    out.psi_plus = 1.5 * kPi * c2 *
                   (2.0 * s.gamma_half / (3.0 * w1_3) * d_half +
                    s.gamma_threehalf / (3.0 * w3_3) * d_threehalf);
    out.psi_minus = 1.5 * kPi * c2 * s.gamma_threehalf / w3_3 * d_threehalf;
    return out;
}

std::pair<double, double> state_potentials(const DipoleCoefficients& coeffs,
                                           double i_plus, double i_minus) {
    const double u_down = coeffs.psi_plus * i_plus + coeffs.psi_minus * i_minus;
    const double u_up = coeffs.psi_minus * i_plus + coeffs.psi_plus * i_minus;
    return {u_down, u_up};
}

double scattering_coefficient(const IonSpecies& s, double omega_laser,
                              double guard_band_linewidths) {
    check_guard_band(s, omega_laser, guard_band_linewidths);
    const double c2 = kSpeedOfLight * kSpeedOfLight;
    const double d_half = denominators(s.omega_half, omega_laser);
    const double d_threehalf = denominators(s.omega_threehalf, omega_laser);
    const double r_half = s.gamma_half / std::pow(s.omega_half, 3) * d_half;
    const double r_threehalf =
        s.gamma_threehalf / std::pow(s.omega_threehalf, 3) * d_threehalf;
    return 1.5 * kPi * c2 * std::pow(omega_laser, 3) / kHbar *
           (r_half * r_half + r_threehalf * r_threehalf);
}

double cancellation_wavelength(const IonSpecies& s,
                               const WavelengthRange& range,
                               double guard_band_linewidths,
                               const RootControl& ctrl) {
    if (!(range.lo > 0.0) || !(range.hi > range.lo)) {
        throw ConfigError("cancellation_wavelength: invalid search interval");
    }
    auto differential = [&](double lambda) {
        return dipole_coefficients(s, omega_from_wavelength(lambda),
                                   guard_band_linewidths)
            .differential();
    };
    return brent_root(differential, range.lo, range.hi, ctrl);
}

namespace {

struct RawSpecies {
    std::map<std::string, std::string> values;
    std::map<std::string, int> lines;
    int header_line = 0;
};

std::string trim(const std::string& text) {
    const auto first = text.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = text.find_last_not_of(" \t\r");
    return text.substr(first, last - first + 1);
}

double parse_number(const std::string& path, const RawSpecies& raw,
                    const std::string& key) {
    const auto it = raw.values.find(key);
    if (it == raw.values.end()) {
        throw ConfigError(path + ":" + std::to_string(raw.header_line) +
                          ": species section is missing key '" + key + "'");
    }
    try {
        std::size_t used = 0;
        const double v = std::stod(it->second, &used);
        if (used != it->second.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ConfigError(path + ":" + std::to_string(raw.lines.at(key)) +
                          ": value for '" + key + "' is not a number: '" +
                          it->second + "'");
    }
}

IonSpecies finish_species(const std::string& path, const RawSpecies& raw) {
    const auto name_it = raw.values.find("name");
    if (name_it == raw.values.end()) {
        throw ConfigError(path + ":" + std::to_string(raw.header_line) +
                          ": species section is missing key 'name'");
    }
    IonSpecies s;
    s.name = name_it->second;
    s.mass = parse_number(path, raw, "mass_u") * kAtomicMassUnit;
    s.omega_half =
        omega_from_wavelength(parse_number(path, raw, "lambda_half_nm") * 1e-9);
    s.omega_threehalf = omega_from_wavelength(
        parse_number(path, raw, "lambda_threehalf_nm") * 1e-9);
    s.gamma_half = kTwoPi * parse_number(path, raw, "gamma_half_2pi_MHz") * 1e6;
    s.gamma_threehalf =
        kTwoPi * parse_number(path, raw, "gamma_threehalf_2pi_MHz") * 1e6;
    const auto source_it = raw.values.find("source");
    if (source_it == raw.values.end()) {
        throw ConfigError(path + ":" + std::to_string(raw.header_line) +
                          ": species section is missing key 'source'");
    }
    s.source = source_it->second;
    try {
        validate_species(s);
    } catch (const ConfigError& e) {
        throw ConfigError(path + ":" + std::to_string(raw.header_line) + ": " +
                          e.what());
    }
    return s;
}

} // namespace

std::vector<IonSpecies> load_species_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open atomic data file: " + path);
    }
    std::vector<IonSpecies> out;
    RawSpecies current;
    bool in_section = false;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = trim(line);
        if (text.empty() || text[0] == '#') continue;
        if (text.front() == '[') {
            if (text.back() != ']') {
                throw ConfigError(path + ":" + std::to_string(line_no) +
                                  ": malformed section header '" + text + "'");
            }
            if (in_section) out.push_back(finish_species(path, current));
            current = RawSpecies{};
            current.header_line = line_no;
            in_section = true;
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(path + ":" + std::to_string(line_no) +
                              ": expected 'key = value', got '" + text + "'");
        }
        if (!in_section) {
            throw ConfigError(path + ":" + std::to_string(line_no) +
                              ": key/value pair outside of a species section");
        }
        const std::string key = trim(text.substr(0, eq));
        static const std::set<std::string> known_keys = {
            "name",           "mass_u",
            "lambda_half_nm", "lambda_threehalf_nm",
            "gamma_half_2pi_MHz", "gamma_threehalf_2pi_MHz",
            "source"};
        if (!known_keys.count(key)) {
            throw ConfigError(path + ":" + std::to_string(line_no) +
                              ": unknown key '" + key +
                              "' in species section");
        }
        current.values[key] = trim(text.substr(eq + 1));
        current.lines[key] = line_no;
    }
    if (in_section) out.push_back(finish_species(path, current));
    if (out.empty()) {
        throw ConfigError(path + ": no species sections found");
    }
    return out;
}

const IonSpecies& find_species(const std::vector<IonSpecies>& table,
                               const std::string& name) {
    for (const auto& s : table) {
        if (s.name == name) return s;
    }
    std::string known;
    for (const auto& s : table) {
        if (!known.empty()) known += ", ";
        known += s.name;
    }
    throw ConfigError("unknown species '" + name + "' (available: " + known +
                      ")");
}

} // namespace iongate
