#pragma once

#include <string>
#include <utility>

#include "longwave/modulation.hpp"

namespace lw {

// How much of the correction hierarchy enters the assembled surface frame:
//   kdv_only — the counter-propagating first-order ansatz: U, V backgrounds
//              with the quadratic/dispersive dressings they induce on the
//              surface and velocity, but no second-order channels,
//   simple   — adds the second-order corrections F, G and the transport
//              fields, with explicit quadratic/dispersive dressings,
//   extended — additionally threads the third-order wave stage through the
//              displacement sum and replaces the explicit dressings by the
//              exact nonlocal reconstruction plus its Delta corrections.
enum class Fidelity { kdv_only, simple, extended };

// The three surface functions on the lab alpha-grid at physical time t,
// together with the exact-symbol displacement reconstruction psi_z and,
// on demand, analytic time derivatives (never numerical differences).
struct ApproximantFrame {
  double t = 0.0;
  double eps = 0.0;
  Fidelity fidelity = Fidelity::simple;
  Field psi_d, psi_y, psi_u;
  Field psi_z;  // nonlocal reconstruction of psi_d (exact symbol)
  bool has_derivatives = false;  // dt_psi_y, dt_psi_u populated
  bool has_second = false;       // dtt_psi_y populated
  Field dt_psi_y, dt_psi_u, dtt_psi_y;
};

// Quadratic/cubic dressings that close the gap between the surface frame and
// the nonlocal reconstruction of the displacement sum:
//   Delta1 = Z1^2,
//   Delta2 = (dZ1)^2 + 2 Z1 Z2 + (1/3) Z1^3 + (4/3) Z1 d^2 Z1
//            - (2/3) (dtau Z1)^2,
// all on the beta-grid.  Returns {Delta1, Delta2}.
std::pair<Field, Field> deltas(const Field& Z1, const Field& Z2, const Field& dtauZ1);

// Assemble the frame at physical time t on the lab alpha-grid.  The
// alpha-grid period must equal the beta-period / eps (mismatch throws);
// comoving arguments are realized as exact spectral shifts and every
// nonlinear combination is dealiased on the beta-grid before lab sampling.
// The extended fidelity requires a state with the third-order stage run
// (w3_valid); it throws std::invalid_argument otherwise.
ApproximantFrame assemble_frame(const ModulationState& s, double t, const Grid& alpha,
                                Fidelity fidelity);

// Populate the analytic time derivatives of the frame from the modulation
// equations via the chain rule: order 1 fills dt_psi_y and dt_psi_u,
// order 2 additionally fills dtt_psi_y.
void time_derivative_closure(ApproximantFrame& frame, const ModulationState& s, int order);

// d/dt and d^2/dt^2 of the displacement sum, assembled termwise on the
// alpha-grid.  Every first-derivative term is a perfect beta-derivative, so
// the result is mean-zero; a zero-mode leak beyond rounding throws.
Field dt_psi_d(const ModulationState& s, double t, const Grid& alpha, Fidelity fidelity);
Field dtt_psi_d(const ModulationState& s, double t, const Grid& alpha, Fidelity fidelity);

// Write the frame fields (binary format) plus a small JSON manifest to dir.
void save_frame(const std::string& dir, const ApproximantFrame& frame);

}  // namespace lw
