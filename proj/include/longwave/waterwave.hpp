#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "longwave/approximant.hpp"
#include "longwave/grid.hpp"
#include "longwave/modulation.hpp"

namespace lw {

// Instantaneous state of the truncated surface-wave system on the lab grid:
// the vertical displacement z, the surface elevation channel y, and the
// horizontal trace velocity u, at physical time t.  The solver is valid while
// min(1 + L z) >= 1/2.
struct WWState {
  double t = 0.0;
  Field z, y, u;

  WWState() = default;
  WWState(double t, Field z, Field y, Field u);
};

// The evolution rates at one instant, plus the number of fixed-point sweeps
// the implicit acceleration solve used.
struct WWRates {
  Field dz, dy, du;
  int iterations = 0;
};

// Rates of the truncated system:
//   dz = K0 u
//   dy = (K0 + K1(z, y)) u
//   du solves  (1 + Lz) du + dy_a (K0 + K1(z, y)) du = -dy_a (1 + b),
// where dy_a is the spatial derivative of y and b = K1(dz, dy) u is the exact
// commutator contribution (K1 is linear in its displacement pair).  The
// implicit solve iterates the pointwise quotient
//   du <- [-dy_a (1 + b) - dy_a (K0 + K1) du] / (1 + Lz)
// to a 1e-12 sup-norm increment, at most 50 sweeps.  Throws on
// non-convergence and on validity exit (min(1 + Lz) < 1/2).
WWRates ww_rhs(const WWState& s);

// One classical RK4 step of size dt (negative dt steps backward).
WWState ww_step(const WWState& s, double dt);

// Quadratic energy integral(u^2 + y (-L) y) d alpha, conserved by the
// linearized flow; its drift along a trajectory measures integrator quality.
double ww_energy(const WWState& s);

// Snapshot trajectory of the direct solver.  energies and validity_min carry
// the per-snapshot conservation and validity diagnostics.
struct WWTrajectory {
  std::vector<double> times;
  std::vector<WWState> states;
  std::vector<double> energies;
  std::vector<double> validity_min;
  double dt = 0.0;

  const WWState& back() const { return states.back(); }
};

// Classical RK4 from init to t_end with fixed step dt, keeping every
// snap_stride-th step (and always the first and last).  Preconditions:
// dt * max_k sqrt(k tanh k) <= 1.5 (dispersion stability for RK4).  Throws
// on blow-up (100x growth of the combined L2 norm) and on validity exit.
WWTrajectory ww_evolve(const WWState& init, double t_end, double dt,
                       std::size_t snap_stride = 1);

// The state whose fields are the frame's three channels at the frame's time.
WWState state_from_frame(const ApproximantFrame& frame);

// Sobolev-norm error history of a direct trajectory against the approximant
// family assembled from a modulation solution at matched times: component
// norms at indices (s, s, s - 1/2), their pointwise max, and its running sup.
struct ErrorCurve {
  std::vector<double> times;
  std::vector<double> err_z, err_y, err_u;
  std::vector<double> combined;
  std::vector<double> sup_err;
};

ErrorCurve compare_error(const WWTrajectory& traj, const ModulationSolution& sol,
                         double eps, double s,
                         Fidelity fidelity = Fidelity::extended);

// CSV export: header t,err_z,err_y,err_u,combined with full-precision rows.
void write_error_csv(const std::string& path, const ErrorCurve& curve);

// Directory persistence in the same manifest-plus-binary-snapshots layout as
// the modulation solution store.
void save_trajectory(const std::string& dir, const WWTrajectory& traj);
WWTrajectory load_trajectory(const std::string& dir);

}  // namespace lw
