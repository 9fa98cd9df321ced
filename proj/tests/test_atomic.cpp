#include <doctest.h>

#include <cmath>
#include <string>

#include "iongate/atomic.hpp"
#include "iongate/constants.hpp"
#include "iongate/errors.hpp"

#include "test_helpers.hpp"

using namespace iongate;
namespace tt = iongate::testing;

namespace {

IonSpecies with_linewidths(const IonSpecies& base, double gamma_half,
                           double gamma_threehalf) {
    IonSpecies s = base;
    s.gamma_half = gamma_half;
    s.gamma_threehalf = gamma_threehalf;
    return s;
}

} // namespace

TEST_CASE("species file loads the shipped ions") {
    const auto& table = tt::species_table();
    CHECK(table.size() >= 3);

    const IonSpecies& ca = tt::calcium();
    CHECK(ca.mass == doctest::Approx(39.9625909 * 1.66053906660e-27).epsilon(1e-9));
    CHECK(ca.omega_half ==
          doctest::Approx(omega_from_wavelength(396.959e-9)).epsilon(1e-12));
    CHECK(ca.omega_threehalf ==
          doctest::Approx(omega_from_wavelength(393.478e-9)).epsilon(1e-12));
    CHECK(ca.gamma_half == doctest::Approx(2.0 * kPi * 21.00e6).epsilon(1e-12));
    CHECK(ca.gamma_threehalf ==
          doctest::Approx(2.0 * kPi * 21.85e6).epsilon(1e-12));

    const IonSpecies& ba = tt::barium();
    CHECK(ba.omega_half ==
          doctest::Approx(omega_from_wavelength(493.546e-9)).epsilon(1e-12));
    CHECK(ba.omega_threehalf ==
          doctest::Approx(omega_from_wavelength(455.531e-9)).epsilon(1e-12));
    CHECK_NOTHROW(validate_species(ca));
    CHECK_NOTHROW(validate_species(ba));
}

TEST_CASE("find_species reports the available names on a miss") {
    try {
        find_species(tt::species_table(), "Unobtainium");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("Unobtainium") != std::string::npos);
        CHECK(msg.find("Ca40") != std::string::npos);
        CHECK(msg.find("Ba138") != std::string::npos);
    }
}

TEST_CASE("species parser pins schema violations to a line") {
    const std::string good =
        "[Xx1]\n"
        "name = Xx1\n"
        "mass_u = 10.0\n"
        "lambda_half_nm = 500.0\n"
        "lambda_threehalf_nm = 480.0\n"
        "gamma_half_2pi_MHz = 20.0\n"
        "gamma_threehalf_2pi_MHz = 21.0\n"
        "source = synthetic\n";

    SUBCASE("well-formed file round-trips") {
        const std::string path = tt::workdir_path("species_ok.dat");
        tt::write_text(path, good);
        const auto table = load_species_file(path);
        REQUIRE(table.size() == 1);
        CHECK(table[0].name == "Xx1");
        CHECK(table[0].mass == doctest::Approx(10.0 * 1.66053906660e-27));
    }

    SUBCASE("non-numeric value names the offending line") {
        const std::string path = tt::workdir_path("species_badnum.dat");
        tt::write_text(path,
                       "[Xx1]\n"
                       "name = Xx1\n"
                       "mass_u = heavy\n");
        try {
            load_species_file(path);
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            const std::string msg = e.what();
            CHECK(msg.find(path) != std::string::npos);
            CHECK(msg.find(":3") != std::string::npos);
        }
    }

    SUBCASE("unknown key is rejected") {
        const std::string path = tt::workdir_path("species_badkey.dat");
        tt::write_text(path, good + "flavor = strange\n");
        try {
            load_species_file(path);
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find("flavor") != std::string::npos);
        }
    }

    SUBCASE("missing field is rejected") {
        const std::string path = tt::workdir_path("species_missing.dat");
        tt::write_text(path,
                       "[Xx1]\n"
                       "name = Xx1\n"
                       "mass_u = 10.0\n");
        CHECK_THROWS_AS(load_species_file(path), ConfigError);
    }

    SUBCASE("key before any section is rejected") {
        const std::string path = tt::workdir_path("species_nosection.dat");
        tt::write_text(path, "mass_u = 10.0\n");
        try {
            load_species_file(path);
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find(":1") != std::string::npos);
        }
    }

    SUBCASE("empty file is rejected") {
        const std::string path = tt::workdir_path("species_empty.dat");
        tt::write_text(path, "# nothing here\n");
        CHECK_THROWS_AS(load_species_file(path), ConfigError);
    }
}

TEST_CASE("dipole weights are linear in the linewidths") {
    const IonSpecies& ca = tt::calcium();
    const double wl = omega_from_wavelength(395.1e-9);

    const DipoleCoefficients full = dipole_coefficients(ca, wl);
    const DipoleCoefficients only_half =
        dipole_coefficients(with_linewidths(ca, ca.gamma_half, 0.0), wl);
    const DipoleCoefficients only_threehalf =
        dipole_coefficients(with_linewidths(ca, 0.0, ca.gamma_threehalf), wl);

    CHECK(full.psi_plus ==
          doctest::Approx(only_half.psi_plus + only_threehalf.psi_plus)
              .epsilon(1e-12));
    CHECK(only_half.psi_minus == 0.0);
    CHECK(full.psi_minus ==
          doctest::Approx(only_threehalf.psi_minus).epsilon(1e-14));

    const DipoleCoefficients doubled = dipole_coefficients(
        with_linewidths(ca, 0.0, 2.0 * ca.gamma_threehalf), wl);
    CHECK(doubled.psi_minus ==
          doctest::Approx(2.0 * only_threehalf.psi_minus).epsilon(1e-14));
    CHECK(doubled.psi_plus ==
          doctest::Approx(2.0 * only_threehalf.psi_plus).epsilon(1e-14));
}

TEST_CASE("opposite-circular coupling runs through P3/2 at triple weight") {
    // With the P1/2 line switched off the sigma+ and sigma- weights both
    // come from P3/2 and their ratio is the 1:3 strength ratio of the
    // stretched versus opposite circular transitions.
    const IonSpecies& ca = tt::calcium();
    const IonSpecies p32_only = with_linewidths(ca, 0.0, ca.gamma_threehalf);
    for (double nm : {395.1, 500.0, 880.0, 1064.0}) {
        const DipoleCoefficients c =
            dipole_coefficients(p32_only, omega_from_wavelength(nm * 1e-9));
        CHECK(c.psi_plus == doctest::Approx(c.psi_minus / 3.0).epsilon(1e-13));
    }
    // And with only P1/2 there is no cancellation point to find: the
    // differential weight never changes sign red of the doublet.
    const IonSpecies p12_only = with_linewidths(ca, ca.gamma_half, 0.0);
    CHECK_THROWS_AS(
        cancellation_wavelength(p12_only, {420e-9, 1800e-9}),
        NoSignChange);
}

TEST_CASE("state potentials follow the sigma weight matrix") {
    DipoleCoefficients c;
    c.psi_plus = 2.5e-36;
    c.psi_minus = -7.0e-37;
    const double ip = 3.0e8;
    const double im = 1.0e8;
    const auto [down, up] = state_potentials(c, ip, im);
    CHECK(down == doctest::Approx(c.psi_plus * ip + c.psi_minus * im)
                      .epsilon(1e-15));
    CHECK(up == doctest::Approx(c.psi_minus * ip + c.psi_plus * im)
                    .epsilon(1e-15));

    // Swapping the circular components swaps the role of the two spins.
    const auto [down_swapped, up_swapped] = state_potentials(c, im, ip);
    CHECK(down_swapped == doctest::Approx(up).epsilon(1e-15));
    CHECK(up_swapped == doctest::Approx(down).epsilon(1e-15));
}

TEST_CASE("scattering coefficient approaches the omega^3 law far red") {
    const IonSpecies& ca = tt::calcium();
    const double w1 = omega_from_wavelength(100e-6);
    const double w2 = omega_from_wavelength(200e-6);
    const double r1 = scattering_coefficient(ca, w1) / std::pow(w1, 3);
    const double r2 = scattering_coefficient(ca, w2) / std::pow(w2, 3);
    CHECK(r1 == doctest::Approx(r2).epsilon(0.02));
    CHECK(scattering_coefficient(ca, w1) > 0.0);
}

TEST_CASE("calcium has a cancellation wavelength between the paper bounds") {
    const IonSpecies& ca = tt::calcium();
    const double root = cancellation_wavelength(ca, {850e-9, 950e-9});
    CHECK(root > 850e-9);
    CHECK(root < 950e-9);
    CHECK(root * 1e9 == doctest::Approx(880.287).epsilon(1e-4));

    const auto at = [&](double lambda) {
        return dipole_coefficients(ca, omega_from_wavelength(lambda))
            .differential();
    };
    const double scale = std::fabs(at(root - 1e-9)) + std::fabs(at(root + 1e-9));
    CHECK(std::fabs(at(root)) < 1e-3 * scale);
    CHECK(at(root - 1e-9) * at(root + 1e-9) < 0.0);
}

TEST_CASE("barium has no cancellation point red of its doublet") {
    const IonSpecies& ba = tt::barium();
    CHECK_THROWS_AS(cancellation_wavelength(ba, {520e-9, 1800e-9}),
                    NoSignChange);
    double min_abs = 1e300;
    for (double nm = 520.0; nm <= 1800.0; nm += 1.0) {
        const double d =
            dipole_coefficients(ba, omega_from_wavelength(nm * 1e-9))
                .differential();
        min_abs = std::min(min_abs, std::fabs(d));
    }
    CHECK(min_abs > 1e-38);
    CHECK(min_abs == doctest::Approx(2.063e-38).epsilon(0.05));
}

TEST_CASE("guard band rejects laser frequencies pinned to a resonance") {
    const IonSpecies& ca = tt::calcium();
    CHECK_THROWS_AS(dipole_coefficients(ca, ca.omega_half),
                    GuardBandViolation);
    CHECK_THROWS_AS(dipole_coefficients(ca, ca.omega_threehalf),
                    GuardBandViolation);
    CHECK_THROWS_AS(scattering_coefficient(ca, ca.omega_half),
                    GuardBandViolation);

    const double wl = omega_from_wavelength(395.1e-9);
    CHECK_NOTHROW(check_guard_band(ca, wl));
    // 395.1 nm sits a few hundred GHz from either line; a wide enough
    // guard band swallows it.
    CHECK_THROWS_AS(check_guard_band(ca, wl, 1e6), GuardBandViolation);
}

TEST_CASE("dipole weights at the worked-example wavelength") {
    const DipoleCoefficients c =
        dipole_coefficients(tt::calcium(), omega_from_wavelength(395.1e-9));
    // Between the doublet lines: the P1/2 term pulls psi_plus negative
    // while psi_minus stays positive, which is what makes the differential
    // force large right there.
    CHECK(c.psi_plus == doctest::Approx(-6.5725345004234878e-36).epsilon(1e-10));
    CHECK(c.psi_minus == doctest::Approx(2.7023520825255996e-35).epsilon(1e-10));
    CHECK(c.differential() ==
          doctest::Approx(-3.3596055325679482e-35).epsilon(1e-10));
    CHECK(c.total() == doctest::Approx(2.0450986324832509e-35).epsilon(1e-10));

    const DipoleCoefficients again =
        dipole_coefficients(tt::calcium(), omega_from_wavelength(395.1e-9));
    CHECK(again.psi_plus == c.psi_plus);
    CHECK(again.psi_minus == c.psi_minus);
}
