#pragma once

#include <optional>
#include <string>

#include "longwave/grid.hpp"
#include "longwave/trajectory.hpp"

namespace lw {

// One synchronous snapshot of the whole modulation hierarchy at slow time T.
// U, V, F, G, phiMinus, phiPlus live in their comoving frames; Pminus, Pplus,
// W3, W3dot and the W3dot antiderivative live in the lab (beta) frame.
struct ModulationState {
  double eps;
  double T;
  Field U, V;
  Field F, G;
  Field Pminus, Pplus;
  Field phiMinus, phiPlus;
  Field W3, W3dot, W3dotAnti;
  bool w3_valid;  // false when the third-order wave stage was not run

  ModulationState(double eps_, double T_, const Grid& g);
};

// Inputs for one orchestrated run.  The correction seeds are optional: the
// standard convention starts F, G from the initial-data construction with
// phi+-(.,0) = 0; the alternative convention seeds phi+- instead and starts
// F = G = 0.  Unset seeds mean zero fields.
struct ModulationParams {
  double eps;
  double T_end;
  double dt_T = 2e-3;           // stepper dt for the T-clock equations
  double dtau_transport = 1e-3; // quadrature step for the transport stage
  double dtau_wave = 1e-2;      // quadrature step for the third-order wave
  double snap_T = 5e-3;         // snapshot stride, T-clock channels
  double snap_tau = 5e-2;       // snapshot stride, transport channels (tau clock)
  double snap_tau_wave = 0.0;   // stride for the wave channels; 0 means snap_tau
  bool include_w3 = true;
  Field U0, V0;
  std::optional<Field> F0, G0;
  std::optional<Field> phiMinus0, phiPlus0;

  ModulationParams(double eps_, double T_end_, Field U0_, Field V0_);
};

// The full solved hierarchy.  Every trajectory is clocked in slow time T
// (tau-clock stages are recorded at T = eps^2 tau).  at(T) interpolates all
// channels to a common time.
struct ModulationSolution {
  double eps = 0.0;
  double dt_T = 0.0, dtau_transport = 0.0, dtau_wave = 0.0;
  bool has_w3 = false;
  FieldTrajectory U, V, F, G;
  FieldTrajectory Pminus, Pplus, phiMinus, phiPlus;
  FieldTrajectory W3, W3dot, W3dotAnti;

  const Grid& grid() const;
  double T_end() const;
  ModulationState at(double T) const;
};

// Staged advance through the hierarchy's one-way dependencies: the two KdV
// flows first, then the transport pair driven by their product, then the
// driven linearized KdV pair, then the third-order wave equation.
ModulationSolution solve_modulation(const ModulationParams& params);

// Directory persistence: one binary file per snapshot plus manifest.json
// recording eps, the grid, the scheme, step sizes, and per-channel times.
void save_solution(const std::string& dir, const ModulationSolution& sol);
ModulationSolution load_solution(const std::string& dir);

}  // namespace lw
