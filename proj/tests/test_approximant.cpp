#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "longwave/approximant.hpp"
#include "longwave/initial_data.hpp"
#include "longwave/io.hpp"
#include "longwave/kdv.hpp"
#include "longwave/modulation.hpp"
#include "longwave/multiplier.hpp"
#include "longwave/ops.hpp"
#include "util.hpp"

using namespace lw;
using testutil::loglog_slope;
using testutil::random_field;

namespace {

double max_abs(const Field& f) {
  double m = 0.0;
  for (double x : f.v) m = std::max(m, std::abs(x));
  return m;
}

// Lab grid paired with a beta-grid: same point count, period scaled by 1/eps,
// origin chosen so that eps*alpha spans the same window.
Grid lab_grid(const Grid& beta, double eps, std::size_t n = 0) {
  return make_grid(n == 0 ? beta.n : n, beta.length / eps, beta.origin / eps);
}

// Mean-zero bump derivative: d/db [a exp(-(b-c)^2/w)].
Field gauss_deriv(const Grid& g, double a, double c, double w) {
  Field f(g, [=](double b) { return -2.0 * (b - c) / w * a * std::exp(-(b - c) * (b - c) / w); });
  f.mean_zero = true;
  return f;
}

}  // namespace

// ---------------------------------------------------------------------------

TEST_CASE("resample: translation, refinement, and coarse sampling") {
  const Grid g = make_grid(128, 40.0, -20.0);
  // Band-limited test function: three low modes, so every interpolant
  // evaluation below must reproduce the analytic values.
  const double k1 = 2.0 * M_PI / 40.0;
  auto fn = [=](double b) {
    return 0.7 * std::cos(3.0 * k1 * b) - 0.4 * std::sin(7.0 * k1 * b + 0.3) +
           0.2 * std::cos(12.0 * k1 * b - 1.1);
  };
  const Field f(g, fn);

  SUBCASE("identical grid is a pass-through") {
    const Field r = resample(f, g);
    for (std::size_t i = 0; i < g.n; ++i) CHECK(r.v[i] == doctest::Approx(f.v[i]).epsilon(1e-14));
  }
  SUBCASE("origin offset evaluates between the source points") {
    const Grid t = make_grid(128, 40.0, -20.0 + 0.1234);
    const Field r = resample(f, t);
    for (std::size_t i = 0; i < t.n; ++i) CHECK(std::abs(r.v[i] - fn(t.point(i))) < 1e-12);
  }
  SUBCASE("refinement is exact, including an offset") {
    const Grid t = make_grid(256, 40.0, -19.37);
    const Field r = resample(f, t);
    for (std::size_t i = 0; i < t.n; ++i) CHECK(std::abs(r.v[i] - fn(t.point(i))) < 1e-12);
  }
  SUBCASE("coarse sampling hits the interpolant pointwise") {
    const Grid t = make_grid(64, 40.0, -20.0);  // every second source point
    const Field r = resample(f, t);
    for (std::size_t i = 0; i < t.n; ++i)
      CHECK(std::abs(r.v[i] - f.v[2 * i]) < 1e-12);
    const Grid t2 = make_grid(64, 40.0, -19.8);  // incommensurate offset
    const Field r2 = resample(f, t2);
    for (std::size_t i = 0; i < t2.n; ++i) CHECK(std::abs(r2.v[i] - fn(t2.point(i))) < 1e-12);
  }
  SUBCASE("period mismatch is rejected") {
    CHECK_THROWS_AS((void)resample(f, make_grid(128, 41.0, -20.0)), std::invalid_argument);
  }
}

TEST_CASE("initial-data split: symmetric and antisymmetric profiles") {
  const Grid g = make_grid(256, 40.0, -20.0);
  const Field theta = gauss_deriv(g, 0.5, 0.0, 4.0);

  SUBCASE("equal profiles put everything in the right mover") {
    const InitialDataMap m = split_initial_data(theta, theta);
    CHECK(max_abs(m.V0) == 0.0);
    CHECK(max_abs(m.U0 - theta) < 1e-15);
  }
  SUBCASE("opposite profiles put everything in the left mover") {
    const InitialDataMap m = split_initial_data(theta, -1.0 * theta);
    CHECK(max_abs(m.U0) == 0.0);
    CHECK(max_abs(m.V0 - theta) < 1e-15);
  }
  SUBCASE("profiles with a zero mode are rejected") {
    Field bad(g, [](double) { return 1.0; });
    CHECK_THROWS_AS((void)split_initial_data(bad, theta), std::domain_error);
    CHECK_THROWS_AS((void)split_initial_data(theta, bad), std::domain_error);
  }
  SUBCASE("grid mismatch is rejected") {
    const Grid g2 = make_grid(128, 40.0, -20.0);
    CHECK_THROWS_AS((void)split_initial_data(theta, gauss_deriv(g2, 0.5, 0.0, 4.0)),
                    std::invalid_argument);
  }
}

TEST_CASE("initial-data split: independent reconstruction of the seeds") {
  const Grid g = make_grid(256, 40.0, -20.0);
  const Field ty = gauss_deriv(g, 0.45, -1.0, 4.0);
  const Field tu = gauss_deriv(g, 0.30, 1.5, 6.0);
  const InitialDataMap m = split_initial_data(ty, tu);

  // The antiderivatives invert the derivative and are pinned at beta = 0.
  CHECK(max_abs(deriv(m.X1, 1) + ty) < 1e-12);
  CHECK(max_abs(deriv(m.X2, 1) + m.F0 + m.G0) < 1e-12);
  const Grid at_zero = make_grid(g.n, g.length, 0.0);
  CHECK(std::abs(resample(m.X1, at_zero).v[0]) < 1e-13);
  CHECK(std::abs(resample(m.X2, at_zero).v[0]) < 1e-13);

  // Alternative assembly using U0 + V0 = Theta_y and U0 - V0 = Theta_u to
  // regroup every term: d^2 U0 + d^2 V0 = Theta_y'', U0^2 - V0^2 =
  // Theta_y Theta_u, and so on.
  const Field hy_alt = multiply(m.X1, deriv(ty, 1)) - (1.0 / 3.0) * deriv(ty, 2) -
                       multiply(ty, ty);
  const Field hu_alt = multiply(m.X1, deriv(tu, 1)) - (1.0 / 6.0) * deriv(tu, 2) -
                       0.75 * multiply(ty, tu);
  CHECK(max_abs(m.F0 - 0.5 * (hy_alt + hu_alt)) < 1e-12);
  CHECK(max_abs(m.G0 - 0.5 * (hy_alt - hu_alt)) < 1e-12);

  // Integral identities: the surface correction is mean-free, while the
  // velocity correction carries a quarter of the profile correlation.
  CHECK(std::abs(mean(m.F0 + m.G0)) < 1e-14);
  CHECK(std::abs(mean(m.F0 - m.G0) - 0.25 * mean(multiply(ty, tu))) < 1e-14);
}

TEST_CASE("displacement dressings: pointwise oracle and regrouped assembly") {
  SUBCASE("zero input gives zero dressings") {
    const Grid g = make_grid(64, 10.0, 0.0);
    auto [d1, d2] = deltas(Field(g), Field(g), Field(g));
    CHECK(max_abs(d1) == 0.0);
    CHECK(max_abs(d2) == 0.0);
  }
  SUBCASE("trigonometric input, closed-form values") {
    const Grid g = make_grid(64, 2.0 * M_PI, 0.0);
    const Field z1(g, [](double b) { return std::cos(b); });
    const Field dz1(g, [](double b) { return std::sin(b); });
    auto [d1, d2] = deltas(z1, Field(g), dz1);
    for (std::size_t i = 0; i < g.n; ++i) {
      const double c = std::cos(g.point(i)), s = std::sin(g.point(i));
      CHECK(std::abs(d1.v[i] - c * c) < 1e-13);
      // (dZ)^2 + Z^3/3 + (4/3) Z Z'' - (2/3)(dtau Z)^2 with Z'' = -Z:
      const double want = s * s + c * c * c / 3.0 - (4.0 / 3.0) * c * c - (2.0 / 3.0) * s * s;
      CHECK(std::abs(d2.v[i] - want) < 5e-13);
    }
  }
  SUBCASE("smooth pulse, algebraically regrouped dual path") {
    const Grid g = make_grid(256, 40.0, -20.0);
    const Field z1 = soliton(1.0, 0.0, Chirality::right, g);
    const Field z2 = 0.3 * deriv(z1, 1);
    const Field dz1 = deriv(z1, 1);
    auto [d1, d2] = deltas(z1, z2, dz1);
    CHECK(max_abs(d1 - multiply(z1, z1)) == 0.0);
    // With dtau Z1 = dZ1 the two quadratic-derivative terms combine, and
    // 2 Z1 Z2 = 0.3 d(Z1^2).
    const Field alt = (1.0 / 3.0) * multiply(dz1, dz1) + 0.3 * deriv(multiply(z1, z1), 1) +
                      (1.0 / 3.0) * multiply(multiply(z1, z1), z1) +
                      (4.0 / 3.0) * multiply(z1, deriv(z1, 2));
    CHECK(max_abs(d2 - alt) < 1e-12);
  }
}

TEST_CASE("frame assembly: single right-moving background against closed forms") {
  const double eps = 0.1;
  const Grid g = make_grid(512, 60.0, -30.0);
  const Grid ga = lab_grid(g, eps);
  ModulationState st(eps, 0.0, g);
  st.U = soliton(1.0, 0.0, Chirality::right, g);

  SUBCASE("first-order fidelity carries the background and its dressings") {
    const ApproximantFrame fr = assemble_frame(st, 0.0, ga, Fidelity::kdv_only);
    const double e2 = eps * eps, e4 = e2 * e2;
    const Field au = (1.0 / 6.0) * deriv(st.U, 2) + 0.75 * multiply(st.U, st.U);
    const Field want_u = e2 * st.U + e4 * au;
    const Field want_y =
        e2 * st.U + e4 * ((1.0 / 3.0) * deriv(st.U, 2) + multiply(st.U, st.U));
    for (std::size_t i = 0; i < ga.n; ++i) {
      CHECK(std::abs(fr.psi_u.v[i] - want_u.v[i]) < 1e-13);
      CHECK(std::abs(fr.psi_y.v[i] - want_y.v[i]) < 1e-13);
      CHECK(std::abs(fr.psi_d.v[i] + e2 * st.U.v[i]) < 1e-14);
    }
    // For the unit soliton the velocity flux is exactly half the profile
    // (the traveling-wave speed), pinning the dressing's closed form.
    for (std::size_t i = 0; i < g.n; ++i)
      CHECK(std::abs(au.v[i] - 0.5 * st.U.v[i]) < 1e-10);
  }
  SUBCASE("second-order fidelity adds the advertised dressings") {
    const ApproximantFrame fr = assemble_frame(st, 0.0, ga, Fidelity::simple);
    const double e2 = eps * eps, e4 = e2 * e2;
    const Field au = (1.0 / 6.0) * deriv(st.U, 2) + 0.75 * multiply(st.U, st.U);
    const Field want_u = e2 * st.U + e4 * au;
    const Field want_y =
        e2 * st.U + e4 * ((1.0 / 3.0) * deriv(st.U, 2) + multiply(st.U, st.U));
    for (std::size_t i = 0; i < ga.n; ++i) {
      CHECK(std::abs(fr.psi_u.v[i] - want_u.v[i]) < 1e-13);
      CHECK(std::abs(fr.psi_y.v[i] - want_y.v[i]) < 1e-13);
      CHECK(std::abs(fr.psi_d.v[i] + e2 * st.U.v[i]) < 1e-13);
    }
  }
  SUBCASE("a later time translates the sampled argument") {
    const double t = 3.0;
    ModulationState st2(eps, eps * eps * eps * t, g);
    st2.U = st.U;
    const ApproximantFrame fr = assemble_frame(st2, t, ga, Fidelity::kdv_only);
    const double K = std::sqrt(3.0) / 2.0;
    // With the unit-soliton flux equal to half the profile, the velocity
    // frame is (eps^2 + eps^4/2) sech^2 at the comoving argument.
    const double amp = eps * eps * (1.0 + 0.5 * eps * eps);
    for (std::size_t i = 0; i < ga.n; ++i) {
      const double arg = eps * ga.point(i) - eps * t;
      const double sech = 1.0 / std::cosh(K * arg);
      CHECK(std::abs(fr.psi_u.v[i] - amp * sech * sech) < 1e-10);
    }
  }
  SUBCASE("reconstruction identity holds on the lab grid") {
    const ApproximantFrame fr = assemble_frame(st, 0.0, ga, Fidelity::simple);
    CHECK(max_abs(apply(builtin_symbol("L"), fr.psi_z) - fr.psi_d) < 1e-12);
  }
  SUBCASE("input validation") {
    CHECK_THROWS_AS((void)assemble_frame(st, 1.0, ga, Fidelity::simple), std::invalid_argument);
    CHECK_THROWS_AS((void)assemble_frame(st, 0.0, make_grid(512, 61.0, -30.0), Fidelity::simple),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)assemble_frame(st, 0.0, ga, Fidelity::extended), std::invalid_argument);
  }
}

// Shared fixture: one modest head-on modulation solve with the wave stage.
namespace {

const ModulationSolution& headon_solution() {
  static const ModulationSolution sol = [] {
    const Grid g = make_grid(256, 40.0, -20.0);
    ModulationParams prm(0.2, 0.2 * 0.2 * 0.5, soliton(1.0, -3.0, Chirality::right, g),
                         soliton(0.8, 3.0, Chirality::left, g));
    prm.dt_T = 2e-4;
    prm.snap_T = 2e-4;
    prm.dtau_transport = 1e-3;
    prm.snap_tau = 1e-3;
    prm.dtau_wave = 5e-3;
    prm.snap_tau_wave = 5e-3;
    return solve_modulation(prm);
  }();
  return sol;
}

}  // namespace

TEST_CASE("frame assembly: hierarchy state invariants") {
  const ModulationSolution& sol = headon_solution();
  const double eps = 0.2;
  const ModulationState st = sol.at(sol.T_end());
  const double t = st.T / (eps * eps * eps);
  const double tau = st.T / (eps * eps);
  const Grid ga = lab_grid(sol.grid(), eps);

  for (Fidelity fid : {Fidelity::kdv_only, Fidelity::simple, Fidelity::extended}) {
    const ApproximantFrame fr = assemble_frame(st, t, ga, fid);
    CAPTURE(static_cast<int>(fid));
    CHECK(max_abs(apply(builtin_symbol("L"), fr.psi_z) - fr.psi_d) < 1e-12);
    // Solitons were planted mid-domain; every assembled field must decay
    // into the periodic seam.
    CHECK(std::abs(fr.psi_y.v[0]) < 1e-8);
    CHECK(std::abs(fr.psi_u.v[0]) < 1e-8);
    CHECK(std::abs(fr.psi_d.v[0]) < 1e-8);
  }

  // The transport term of the velocity frame can be encoded with comoving
  // profiles or with their lab-frame counterparts; the two agree exactly.
  CHECK(max_abs(shift_field(st.phiMinus, -tau) - st.Pminus) < 1e-11);
  CHECK(max_abs(shift_field(st.phiPlus, tau) - st.Pplus) < 1e-11);
}

TEST_CASE("fidelity gap scales at the corrections' order") {
  const std::vector<double> ladder = {0.05, 0.07, 0.1, 0.14, 0.2};
  const Grid g = make_grid(256, 40.0, -20.0);
  std::vector<double> gap_d, gap_y, gap_u;
  for (const double eps : ladder) {
    ModulationParams prm(eps, eps * eps * 1.0, soliton(1.0, -1.0, Chirality::right, g),
                         soliton(0.8, 1.0, Chirality::left, g));
    prm.dt_T = std::min(2e-3, eps * eps / 8.0);
    prm.snap_T = prm.dt_T;
    prm.dtau_transport = 2e-3;
    prm.snap_tau = 2e-3;
    prm.dtau_wave = 1e-2;
    prm.snap_tau_wave = 1e-2;
    const ModulationSolution sol = solve_modulation(prm);
    const ModulationState st = sol.at(sol.T_end());
    const double t = st.T / (eps * eps * eps);
    const Grid ga = lab_grid(g, eps);
    const ApproximantFrame lo = assemble_frame(st, t, ga, Fidelity::simple);
    const ApproximantFrame hi = assemble_frame(st, t, ga, Fidelity::extended);
    gap_d.push_back(sobolev_norm(hi.psi_d - lo.psi_d, 4.0));
    gap_y.push_back(sobolev_norm(hi.psi_y - lo.psi_y, 4.0));
    gap_u.push_back(sobolev_norm(hi.psi_u - lo.psi_u, 4.0));
  }
  const double sd = loglog_slope(ladder, gap_d);
  const double sy = loglog_slope(ladder, gap_y);
  const double su = loglog_slope(ladder, gap_u);
  CAPTURE(sd);
  CAPTURE(sy);
  CAPTURE(su);
  CHECK(sd >= 5.4);
  CHECK(sy >= 5.4);
  CHECK(su >= 5.4);
  CHECK(sd <= 6.6);
  CHECK(sy <= 6.6);
  CHECK(su <= 6.6);
}

TEST_CASE("time-derivative closure: single background against finite differences") {
  const double eps = 0.1, t0 = 2.0, dt = 1e-4;
  const Grid g = make_grid(256, 40.0, -20.0);
  const Grid ga = lab_grid(g, eps);
  const double e3 = eps * eps * eps;
  const FieldTrajectory traj =
      kdv_evolve(soliton(1.0, 0.0, Chirality::right, g), Chirality::right,
                 e3 * (t0 + 2.0 * dt), 1e-5, 1e-5);

  const auto state_at = [&](double t) {
    ModulationState st(eps, e3 * t, g);
    st.U = traj.at(e3 * t);
    return st;
  };

  // A pure-U state solves the hierarchy only at the first-order fidelity:
  // the higher closures correctly include the driven rate of the correction
  // channels, which a fixture holding them at zero cannot reproduce.  The
  // randomized-hierarchy case below exercises those at the same tolerances.
  {
    const Fidelity fid = Fidelity::kdv_only;
    const ModulationState sm = state_at(t0 - dt), s0 = state_at(t0), sp = state_at(t0 + dt);
    const ApproximantFrame fm = assemble_frame(sm, t0 - dt, ga, fid);
    const ApproximantFrame fp = assemble_frame(sp, t0 + dt, ga, fid);
    ApproximantFrame fr = assemble_frame(s0, t0, ga, fid);
    time_derivative_closure(fr, s0, 2);
    REQUIRE(fr.has_derivatives);
    REQUIRE(fr.has_second);

    const Field fd_y = (1.0 / (2.0 * dt)) * (fp.psi_y - fm.psi_y);
    const Field fd_u = (1.0 / (2.0 * dt)) * (fp.psi_u - fm.psi_u);
    const Field fd_d = (1.0 / (2.0 * dt)) * (fp.psi_d - fm.psi_d);
    CHECK(max_abs(fd_y - fr.dt_psi_y) < 1e-7);
    CHECK(max_abs(fd_u - fr.dt_psi_u) < 1e-7);
    CHECK(max_abs(fd_d - dt_psi_d(s0, t0, ga, fid)) < 1e-7);

    const Field fd2_y = (1.0 / (dt * dt)) * (fp.psi_y - 2.0 * fr.psi_y + fm.psi_y);
    const Field fd2_d = (1.0 / (dt * dt)) * (fp.psi_d - 2.0 * fr.psi_d + fm.psi_d);
    CHECK(max_abs(fd2_y - fr.dtt_psi_y) < 1e-5);
    CHECK(max_abs(fd2_d - dtt_psi_d(s0, t0, ga, fid)) < 1e-5);
  }
}

TEST_CASE("time-derivative closure: zero state has zero derivatives") {
  const double eps = 0.1;
  const Grid g = make_grid(64, 40.0, -20.0);
  ModulationState st(eps, 0.0, g);
  st.w3_valid = true;
  const Grid ga = lab_grid(g, eps);
  for (Fidelity fid : {Fidelity::kdv_only, Fidelity::simple, Fidelity::extended}) {
    ApproximantFrame fr = assemble_frame(st, 0.0, ga, fid);
    time_derivative_closure(fr, st, 2);
    CHECK(max_abs(fr.dt_psi_y) == 0.0);
    CHECK(max_abs(fr.dt_psi_u) == 0.0);
    CHECK(max_abs(fr.dtt_psi_y) == 0.0);
    CHECK(max_abs(dt_psi_d(st, 0.0, ga, fid)) == 0.0);
  }
}

TEST_CASE("time-derivative closure: randomized hierarchy against finite differences") {
  const double eps = 0.1, t0 = 3.0, dt = 1e-4;
  const Grid g = make_grid(256, 40.0, -20.0);
  const Grid ga = lab_grid(g, eps);
  const double e3 = eps * eps * eps;

  ModulationParams prm(eps, e3 * (t0 + 2.0 * dt), random_field(g, 11, 0.25),
                       random_field(g, 12, 0.25));
  prm.F0 = random_field(g, 13, 0.15);
  prm.G0 = random_field(g, 14, 0.15);
  prm.phiMinus0 = random_field(g, 15, 0.1);
  prm.phiPlus0 = random_field(g, 16, 0.1);
  prm.dt_T = 1e-5;
  prm.snap_T = 1e-5;
  prm.dtau_transport = 1e-4;
  prm.snap_tau = 2e-4;
  prm.dtau_wave = 1e-3;
  prm.snap_tau_wave = 1e-3;
  const ModulationSolution sol = solve_modulation(prm);

  for (Fidelity fid : {Fidelity::simple, Fidelity::extended}) {
    CAPTURE(static_cast<int>(fid));
    const ModulationState sm = sol.at(e3 * (t0 - dt));
    const ModulationState s0 = sol.at(e3 * t0);
    const ModulationState sp = sol.at(e3 * (t0 + dt));
    const ApproximantFrame fm = assemble_frame(sm, t0 - dt, ga, fid);
    const ApproximantFrame fp = assemble_frame(sp, t0 + dt, ga, fid);
    ApproximantFrame fr = assemble_frame(s0, t0, ga, fid);
    time_derivative_closure(fr, s0, 2);

    const Field fd_y = (1.0 / (2.0 * dt)) * (fp.psi_y - fm.psi_y);
    const Field fd_u = (1.0 / (2.0 * dt)) * (fp.psi_u - fm.psi_u);
    const Field fd_d = (1.0 / (2.0 * dt)) * (fp.psi_d - fm.psi_d);
    CHECK(max_abs(fd_y - fr.dt_psi_y) < 1e-7);
    CHECK(max_abs(fd_u - fr.dt_psi_u) < 1e-7);
    CHECK(max_abs(fd_d - dt_psi_d(s0, t0, ga, fid)) < 1e-7);

    const Field fd2_y = (1.0 / (dt * dt)) * (fp.psi_y - 2.0 * fr.psi_y + fm.psi_y);
    const Field fd2_d = (1.0 / (dt * dt)) * (fp.psi_d - 2.0 * fr.psi_d + fm.psi_d);
    CHECK(max_abs(fd2_y - fr.dtt_psi_y) < 1e-5);
    CHECK(max_abs(fd2_d - dtt_psi_d(s0, t0, ga, fid)) < 1e-5);
  }
}

TEST_CASE("prescribed profiles are reproduced at the corrections' order") {
  const Grid g = make_grid(256, 40.0, -20.0);
  const Field ty = gauss_deriv(g, 0.4, 0.0, 4.0);
  const Field tu = gauss_deriv(g, 0.3, 1.0, 6.0);
  const InitialDataMap m = split_initial_data(ty, tu);

  const std::vector<double> ladder = {0.05, 0.07, 0.1, 0.14, 0.2};
  std::vector<double> rem_y, rem_u;
  for (const double eps : ladder) {
    ModulationState st(eps, 0.0, g);
    st.U = m.U0;
    st.V = m.V0;
    st.F = m.F0;
    st.G = m.G0;
    const Grid ga = lab_grid(g, eps);
    const ApproximantFrame fr = assemble_frame(st, 0.0, ga, Fidelity::simple);
    const double e2 = eps * eps;
    const Field ref_y(ga, [&](double a) {
      const double b = eps * a;
      return e2 * (-2.0 * b / 4.0 * 0.4 * std::exp(-b * b / 4.0));
    });
    const Field ref_u(ga, [&](double a) {
      const double b = eps * a;
      return e2 * (-2.0 * (b - 1.0) / 6.0 * 0.3 * std::exp(-(b - 1.0) * (b - 1.0) / 6.0));
    });
    rem_y.push_back(sobolev_norm(fr.psi_y - ref_y, 2.0));
    rem_u.push_back(sobolev_norm(fr.psi_u - ref_u, 2.0));
  }
  const double sy = loglog_slope(ladder, rem_y);
  const double su = loglog_slope(ladder, rem_u);
  CAPTURE(sy);
  CAPTURE(su);
  CHECK(sy >= 3.4);
  CHECK(su >= 3.4);
  CHECK(sy <= 3.6);
  CHECK(su <= 3.6);
}

TEST_CASE("frame persistence round-trip") {
  const double eps = 0.1;
  const Grid g = make_grid(128, 40.0, -20.0);
  ModulationState st(eps, 0.0, g);
  st.U = soliton(1.0, 0.0, Chirality::right, g);
  const Grid ga = lab_grid(g, eps);
  ApproximantFrame fr = assemble_frame(st, 0.0, ga, Fidelity::simple);
  time_derivative_closure(fr, st, 2);

  const std::string dir = "frame_roundtrip_out";
  std::filesystem::remove_all(dir);
  save_frame(dir, fr);

  std::ifstream man(dir + "/manifest.json");
  REQUIRE(man.good());
  std::stringstream ss;
  ss << man.rdbuf();
  const std::string text = ss.str();
  CHECK(text.find("longwave-frame") != std::string::npos);
  CHECK(text.find("\"simple\"") != std::string::npos);

  for (const char* name : {"psi_d", "psi_y", "psi_u", "psi_z", "dt_psi_y", "dt_psi_u",
                           "dtt_psi_y"}) {
    const Field back = read_field_binary(dir + "/" + std::string(name) + ".bin");
    REQUIRE(back.v.size() == ga.n);
  }
  const Field back = read_field_binary(dir + "/psi_y.bin");
  for (std::size_t i = 0; i < ga.n; ++i) CHECK(back.v[i] == fr.psi_y.v[i]);
  std::filesystem::remove_all(dir);
}
