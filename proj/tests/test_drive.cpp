#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "iongate/constants.hpp"
#include "iongate/drive.hpp"
#include "iongate/errors.hpp"
#include "iongate/quadrature.hpp"

#include "test_helpers.hpp"

using namespace iongate;
namespace tt = iongate::testing;

namespace {

// Operating-point force coefficients used throughout: the solved worked
// example (Ca40, per-ion beams, W = 5 um, 2 pi x 200 kHz, n = 15).
struct Flagship {
    DriveProfile profile;
    double omega_com;
    double omega_bre;
    double fc_com;   // constant center-of-mass force, down-down
    double fo_com;   // oscillating center-of-mass force, down-down
    double fo_bre;   // oscillating breathing force, down-up
    double mass;
};

Flagship flagship() {
    const GateDesign& d = tt::flagship_design();
    const auto [wc, wb] = mode_frequencies(d.trap.omega_z);
    Flagship f;
    f.profile = d.profile;
    f.omega_com = wc;
    f.omega_bre = wb;
    f.fc_com = d.forces.get(Mode::Com, BasisState::DownDown).f_const;
    f.fo_com = d.forces.get(Mode::Com, BasisState::DownDown).f_osc;
    f.fo_bre = d.forces.get(Mode::Breathing, BasisState::DownUp).f_osc;
    f.mass = d.species.mass;
    return f;
}

double fourier_ratio(const DriveProfile& p, double omega) {
    return std::abs(drive_fourier(p, omega)) /
           std::abs(drive_fourier(p, p.Omega));
}

} // namespace

TEST_CASE("drive profile construction") {
    const double w = tt::khz_2pi(200.0);
    const DriveProfile p = DriveProfile::make(15, w);
    CHECK(p.T == doctest::Approx(kTwoPi * 15.0 / w).epsilon(1e-15));
    CHECK(p.Omega == doctest::Approx((1.0 - 1.0 / 15.0) * w).epsilon(1e-15));
    CHECK(p.g(0.0) == 0.0);
    CHECK(p.g(0.25 * kTwoPi / p.Omega) == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(DriveProfile::make(1, w), ConfigError);
    CHECK_THROWS_AS(DriveProfile::make(15, -w), ConfigError);
}

TEST_CASE("drive spectrum has exact zeros at zero and the trap frequency") {
    for (int n : {15, 56, 209}) {
        const double w = tt::khz_2pi(200.0);
        const DriveProfile p = DriveProfile::make(n, w);
        const double peak = std::abs(drive_fourier(p, p.Omega));
        REQUIRE(peak > 0.0);
        CHECK(std::abs(drive_fourier(p, 0.0)) <= 1e-12 * peak);
        CHECK(std::abs(drive_fourier(p, w)) <= 1e-12 * peak);
    }
}

TEST_CASE("sqrt(3) commensurability suppresses the breathing response") {
    const double w = tt::khz_2pi(200.0);
    for (int n : {15, 56, 209}) {
        const DriveProfile p = DriveProfile::make(n, w);
        CHECK(fourier_ratio(p, std::sqrt(3.0) * w) < 0.1);
    }
    // The chosen loop counts sit where sqrt(3) n is nearly an integer;
    // neighboring counts are visibly worse.
    CHECK(fourier_ratio(DriveProfile::make(15, w), std::sqrt(3.0) * w) <
          0.2 * fourier_ratio(DriveProfile::make(14, w), std::sqrt(3.0) * w));
    CHECK(fourier_ratio(DriveProfile::make(56, w), std::sqrt(3.0) * w) <
          0.2 * fourier_ratio(DriveProfile::make(55, w), std::sqrt(3.0) * w));
}

TEST_CASE("kernels agree with direct quadrature of their integrals") {
    const double w = tt::khz_2pi(200.0);
    const DriveProfile p = DriveProfile::make(15, w);
    QuadratureControl ctrl;
    ctrl.rel_tol = 1e-12;

    for (double t : {0.3 * p.T, 0.618 * p.T, p.T}) {
        const auto ck = const_kernel(t, w);
        const auto ck_ref = integrate_complex(
            [&](double s) {
                return std::exp(std::complex<double>(0.0, -w * s));
            },
            0.0, t, ctrl);
        CHECK(std::abs(ck - ck_ref.value) <= 1e-9 * t);

        const auto ok = osc_kernel(t, p.Omega, w);
        const auto ok_ref = integrate_complex(
            [&](double s) {
                return std::sin(p.Omega * s) *
                       std::exp(std::complex<double>(0.0, -w * s));
            },
            0.0, t, ctrl);
        CHECK(std::abs(ok - ok_ref.value) <= 1e-9 * t);
    }
}

TEST_CASE("kernel small-frequency branch stays smooth") {
    // const_kernel at omega -> 0 must go to t, not 0/0.
    const double t = 3.7e-5;
    CHECK(std::abs(const_kernel(t, 0.0) - t) <= 1e-14 * t);
    CHECK(std::abs(const_kernel(t, 1e-12) - t) <= 1e-9 * t);
    // In the regime omega t ~ 1e-8 the naive (e^{-i omega t} - 1) form
    // would zero out the imaginary part entirely; pin both sides of that
    // regime against direct quadrature of the defining integral.
    QuadratureControl ctrl;
    ctrl.rel_tol = 1e-13;
    for (double u : {0.99e-8, 1.01e-8}) {
        const double w = u / t;
        const auto k = const_kernel(t, w);
        const auto ref = integrate_complex(
            [&](double s) {
                return std::exp(std::complex<double>(0.0, -w * s));
            },
            0.0, t, ctrl);
        CHECK(std::abs(k - ref.value) <= 1e-12 * t);
        // Leading behavior of the lost part: Im = -(1 - cos u)/w = -u t/2.
        CHECK(std::imag(k) ==
              doctest::Approx(-u * t / 2.0).epsilon(1e-4));
    }
}

TEST_CASE("zero force gives a null trajectory") {
    const Flagship f = flagship();
    const auto grid = sample_grid(f.profile, 100);
    const ModeResult r =
        integrate_mode(0.0, 0.0, f.profile, f.omega_com, grid);
    CHECK(r.beta_max_abs == 0.0);
    CHECK(r.phi_final == 0.0);
}

TEST_CASE("constant force alone loops back every trap period") {
    const Flagship f = flagship();
    const double w = f.omega_com;
    const double scale = 2.0 * std::fabs(f.fc_com) / (kHbar * w);
    for (int k : {1, 2, 3}) {
        const auto beta = displacement_closed_at(f.fc_com, 0.0, f.profile, w,
                                                 k * kTwoPi / w);
        CHECK(std::abs(beta) <= 1e-12 * scale);
    }
    // Half way around the loop sits at the full diameter, purely along
    // the imaginary axis for a real force.
    const auto half =
        displacement_closed_at(f.fc_com, 0.0, f.profile, w, kPi / w);
    CHECK(std::abs(half) == doctest::Approx(scale).epsilon(1e-12));
    CHECK(std::fabs(half.real()) <= 1e-12 * scale);
}

TEST_CASE("commensurate loops close at the end of the gate") {
    const Flagship f = flagship();
    const auto grid = sample_grid(f.profile);

    SUBCASE("closed-form path") {
        const ModeResult r =
            integrate_mode(f.fc_com, f.fo_com, f.profile, f.omega_com, grid);
        REQUIRE(r.beta_max_abs > 0.1);
        CHECK(std::abs(r.beta_final) <= 1e-12 * r.beta_max_abs);
    }
    SUBCASE("quadrature path") {
        const ModeResult r =
            integrate_mode(f.fc_com, f.fo_com, f.profile, f.omega_com, grid,
                           BetaMethod::Quadrature);
        CHECK(std::abs(r.beta_final) <= 1e-9 * r.beta_max_abs);
    }
}

TEST_CASE("closed-form and quadrature displacements agree along the gate") {
    const Flagship f = flagship();
    const auto grid = sample_grid(f.profile, 100);
    const ModeResult closed =
        integrate_mode(f.fc_com, f.fo_com, f.profile, f.omega_com, grid);
    const ModeResult quad =
        integrate_mode(f.fc_com, f.fo_com, f.profile, f.omega_com, grid,
                       BetaMethod::Quadrature);
    REQUIRE(closed.trajectory.size() == quad.trajectory.size());
    double worst = 0.0;
    for (size_t i = 0; i < closed.trajectory.size(); ++i) {
        worst = std::max(worst, std::abs(closed.trajectory[i].beta -
                                         quad.trajectory[i].beta));
    }
    CHECK(worst <= 1e-9 * closed.beta_max_abs);
}

TEST_CASE("independent equation-of-motion integration reproduces beta") {
    const Flagship f = flagship();
    const auto grid = sample_grid(f.profile);
    REQUIRE(grid.size() == 6001);

    SUBCASE("center-of-mass mode, down-down") {
        const ModeResult r =
            integrate_mode(f.fc_com, f.fo_com, f.profile, f.omega_com, grid);
        const auto ode = ode_oracle(f.fc_com, f.fo_com, f.profile,
                                    f.omega_com, f.mass, grid);
        REQUIRE(ode.size() == grid.size());
        double worst = 0.0;
        for (size_t i = 0; i < grid.size(); ++i) {
            worst = std::max(worst,
                             std::abs(ode[i].beta - r.trajectory[i].beta));
        }
        CHECK(worst <= 1e-8 * r.beta_max_abs);
    }
    SUBCASE("breathing mode, down-up") {
        const ModeResult r =
            integrate_mode(0.0, f.fo_bre, f.profile, f.omega_bre, grid);
        const auto ode = ode_oracle(0.0, f.fo_bre, f.profile, f.omega_bre,
                                    f.mass, grid);
        double worst = 0.0;
        for (size_t i = 0; i < grid.size(); ++i) {
            worst = std::max(worst,
                             std::abs(ode[i].beta - r.trajectory[i].beta));
        }
        CHECK(worst <= 1e-8 * r.beta_max_abs);
    }
}

TEST_CASE("geometric phase equals minus twice the swept area") {
    const Flagship f = flagship();
    const auto grid = sample_grid(f.profile, 2000);
    const ModeResult r =
        integrate_mode(f.fc_com, f.fo_com, f.profile, f.omega_com, grid);

    double cross_sum = 0.0;
    const auto& traj = r.trajectory;
    for (size_t i = 0; i + 1 < traj.size(); ++i) {
        const auto& a = traj[i].beta;
        const auto& b = traj[i + 1].beta;
        cross_sum += a.real() * b.imag() - b.real() * a.imag();
    }
    // Closing segment back to the start (numerically negligible but keeps
    // the polygon honest).
    const auto& last = traj.back().beta;
    const auto& first = traj.front().beta;
    cross_sum += last.real() * first.imag() - first.real() * last.imag();

    const double signed_area = 0.5 * cross_sum;
    CHECK(signed_area < 0.0);  // clockwise circulation
    CHECK(-2.0 * signed_area == doctest::Approx(r.phi_final).epsilon(1e-4));
}

TEST_CASE("trajectory ripples at the modulation rate") {
    const Flagship f = flagship();

    // The modulation itself runs through exactly n - 1 cycles per gate.
    CHECK(f.profile.Omega * f.profile.T / kTwoPi ==
          doctest::Approx(f.profile.n - 1.0).epsilon(1e-12));

    // The radius |beta(t)| scallops twice per modulation cycle minus the
    // one lost at closure; a fixed count pins the trajectory shape.
    const auto grid = sample_grid(f.profile);
    const ModeResult r =
        integrate_mode(f.fc_com, f.fo_com, f.profile, f.omega_com, grid);
    int maxima = 0;
    for (size_t i = 1; i + 1 < r.trajectory.size(); ++i) {
        const double prev = std::abs(r.trajectory[i - 1].beta);
        const double here = std::abs(r.trajectory[i].beta);
        const double next = std::abs(r.trajectory[i + 1].beta);
        if (here > prev && here > next) {
            ++maxima;
        }
    }
    CHECK(maxima == 2 * f.profile.n - 1);
}

TEST_CASE("resonant closed forms against full quadrature at the ladder") {
    // The closed end-of-gate phases drop terms one power of the loop count
    // down, so the disagreement on the state-dependent part must shrink
    // like 1/n along the ladder.
    for (int n : {15, 56, 209}) {
        const GateDesign d = design_gate(
            tt::make_trap(tt::calcium(), tt::khz_2pi(200.0)), Geometry::C,
            5e-6, n, omega_from_wavelength(395.1e-9));
        const PhaseSet closed = mode_phases_closed(d.coeffs, d.profile);
        const auto [wc, wb] = mode_frequencies(d.trap.omega_z);

        const double tol = 2.0 / n;
        double eff_quad = 0.0;
        for (const Mode m : {Mode::Com, Mode::Breathing}) {
            const double w = m == Mode::Com ? wc : wb;
            for (const BasisState s :
                 {BasisState::DownDown, BasisState::DownUp}) {
                const auto& force = d.forces.get(m, s);
                const double full = phase_quadrature(
                    force.f_const, force.f_osc, d.profile, w, 0.0, d.profile.T);
                const double const_only = phase_quadrature(
                    force.f_const, 0.0, d.profile, w, 0.0, d.profile.T);
                const double state_dep = full - const_only;
                const double ref = m == Mode::Com
                                       ? closed.com[state_index(s)]
                                       : closed.breathing[state_index(s)];
                if (std::fabs(ref) > 0.0) {
                    CHECK(state_dep == doctest::Approx(ref).epsilon(tol));
                } else {
                    CHECK(std::fabs(state_dep) <= 1e-6);
                }
                const double sign =
                    s == BasisState::DownDown ? 2.0 : -2.0;
                eff_quad += sign * state_dep;
            }
        }
        CHECK(eff_quad ==
              doctest::Approx(closed.effective_phase).epsilon(tol));
        CHECK(closed.effective_phase ==
              doctest::Approx(kPi).epsilon(1e-12));
    }
}

TEST_CASE("state pairing under global spin flip") {
    const GateDesign& d = tt::flagship_design();
    const PhaseSet closed = mode_phases_closed(d.coeffs, d.profile);

    SUBCASE("closed path pairs exactly") {
        CHECK(closed.com[state_index(BasisState::DownDown)] ==
              closed.com[state_index(BasisState::UpUp)]);
        CHECK(closed.com[state_index(BasisState::DownUp)] ==
              closed.com[state_index(BasisState::UpDown)]);
        CHECK(closed.breathing[state_index(BasisState::DownDown)] ==
              closed.breathing[state_index(BasisState::UpUp)]);
        CHECK(closed.breathing[state_index(BasisState::DownUp)] ==
              closed.breathing[state_index(BasisState::UpDown)]);
    }
    SUBCASE("quadrature path pairs to quadrature accuracy") {
        const auto [wc, wb] = mode_frequencies(d.trap.omega_z);
        for (const Mode m : {Mode::Com, Mode::Breathing}) {
            const double w = m == Mode::Com ? wc : wb;
            for (const auto [s, flipped] :
                 {std::pair{BasisState::DownDown, BasisState::UpUp},
                  std::pair{BasisState::DownUp, BasisState::UpDown}}) {
                const auto& fa = d.forces.get(m, s);
                const auto& fb = d.forces.get(m, flipped);
                const double pa = phase_quadrature(fa.f_const, fa.f_osc,
                                                   d.profile, w, 0.0,
                                                   d.profile.T);
                const double pb = phase_quadrature(fb.f_const, fb.f_osc,
                                                   d.profile, w, 0.0,
                                                   d.profile.T);
                CHECK(pa == doctest::Approx(pb).epsilon(1e-8).scale(1.0));
            }
        }
    }
}

TEST_CASE("spectral weight climbs toward the trap resonance") {
    // Moving the modulation frequency from (1 - j/n) omega_z toward the
    // resonance (j -> 1) must increase the phase per unit force
    // monotonically, and the rung-to-rung ratio follows the detuning
    // algebra. Every rung keeps Omega T commensurate, so the closed form
    // stays exact and the full quadrature must agree.
    const int n = 15;
    const double w = tt::khz_2pi(200.0);
    const DriveProfile base = DriveProfile::make(n, w);
    const double f_o = 8.9e-30;

    std::vector<double> closed_phi;
    std::vector<double> quad_phi;
    for (int j = 1; j <= 5; ++j) {
        DriveProfile p = base;
        p.Omega = (1.0 - static_cast<double>(j) / n) * w;
        closed_phi.push_back(phase_closed_oscillating(f_o, p, w));
        quad_phi.push_back(phase_quadrature(0.0, f_o, p, w, 0.0, p.T));
    }
    for (size_t j = 0; j + 1 < closed_phi.size(); ++j) {
        CHECK(closed_phi[j] > closed_phi[j + 1]);
        CHECK(quad_phi[j] > quad_phi[j + 1]);
        CHECK(quad_phi[j] ==
              doctest::Approx(closed_phi[j]).epsilon(1e-7));
    }
    const double expected_ratio =
        static_cast<double>(2 * n - 1) / static_cast<double>(4 * n - 4);
    CHECK(closed_phi[1] / closed_phi[0] ==
          doctest::Approx(expected_ratio).epsilon(1e-12));
}

TEST_CASE("two assemblies of the effective phase agree") {
    const GateDesign& d = tt::flagship_design();
    const PhaseSet set = mode_phases_closed(d.coeffs, d.profile);
    const double via_table = effective_phase_closed(d.forces, d.profile);
    CHECK(via_table == doctest::Approx(set.effective_phase).epsilon(1e-12));
}

TEST_CASE("breathing leftover at the end of the gate") {
    const Flagship f = flagship();
    // Frozen magnitude of the incommensurate breathing kernel at the end
    // of the gate for n = 15; the residual displacement is f_osc times
    // this over hbar.
    const double kernel =
        std::abs(osc_kernel(f.profile.T, f.profile.Omega, f.omega_bre)) *
        f.omega_com;
    CHECK(kernel == doctest::Approx(0.052968).epsilon(1e-3));

    const auto beta =
        displacement_closed(0.0, f.fo_bre, f.profile, f.omega_bre);
    CHECK(std::abs(beta) ==
          doctest::Approx(std::fabs(f.fo_bre) * kernel /
                          (kHbar * f.omega_com))
              .epsilon(1e-12));
}

TEST_CASE("constant-force phase closed form") {
    const Flagship f = flagship();
    for (double w : {f.omega_com, f.omega_bre}) {
        const double closed = phase_closed_constant(f.fc_com, f.profile, w);
        const double quad =
            phase_quadrature(f.fc_com, 0.0, f.profile, w, 0.0, f.profile.T);
        CHECK(quad == doctest::Approx(closed).epsilon(1e-8));
    }
}

TEST_CASE("phase accumulates additively over subintervals") {
    const Flagship f = flagship();
    const double split = 0.37 * f.profile.T;
    const double whole = phase_quadrature(f.fc_com, f.fo_com, f.profile,
                                          f.omega_com, 0.0, f.profile.T);
    const double left = phase_quadrature(f.fc_com, f.fo_com, f.profile,
                                         f.omega_com, 0.0, split);
    const double right = phase_quadrature(f.fc_com, f.fo_com, f.profile,
                                          f.omega_com, split, f.profile.T);
    CHECK(left + right == doctest::Approx(whole).epsilon(1e-9));
}

TEST_CASE("state-independent light shift phase") {
    const double w = tt::khz_2pi(200.0);
    const DriveProfile p = DriveProfile::make(15, w);
    CHECK(stark_phase(kHbar * w, p) ==
          doctest::Approx(-30.0 * kPi).epsilon(1e-12));
    CHECK(stark_phase(0.0, p) == 0.0);
    CHECK(stark_phase(-kHbar * w, p) ==
          doctest::Approx(30.0 * kPi).epsilon(1e-12));
}

TEST_CASE("sample grid covers the gate uniformly") {
    const double w = tt::khz_2pi(200.0);
    const DriveProfile p = DriveProfile::make(15, w);
    const auto grid = sample_grid(p, 400);
    REQUIRE(grid.size() == 6001);
    CHECK(grid.front() == 0.0);
    CHECK(grid.back() == doctest::Approx(p.T).epsilon(1e-15));
    const double dt = grid[1] - grid[0];
    for (size_t i = 1; i + 1 < grid.size(); i += 500) {
        CHECK(grid[i + 1] - grid[i] == doctest::Approx(dt).epsilon(1e-9));
    }
}
