#pragma once

#include <string>
#include <utility>
#include <vector>

#include "longwave/approximant.hpp"

namespace lw {

// Residual triple of a frame with respect to the truncated surface system,
// with Sobolev norms at indices (s, s, s-1) and diagnostic magnitudes.
struct ResidualSample {
  double eps = 0.0;
  double t = 0.0;
  double res_z_norm = 0.0, res_y_norm = 0.0, res_u_norm = 0.0;
  Field res_z, res_y, res_u;
  double min_denominator = 0.0;     // min over the grid of 1 + L psi_z
  double background_norm_s9 = 0.0;  // max of the U/V norms at index s+9 (logged)
};

// Smoothing commutator M1(f) v = -(f v + K0 (f K0 v)), dealiased products.
Field m1_apply(const Field& f, const Field& v);

// First Dirichlet-Neumann correction K1(z,y) u = -(z+y) du - K0((z+y) K0 du)
// with du the lab-grid derivative of u.
Field k1_apply(const Field& z, const Field& y, const Field& u);

// Evaluate the residual triple of an extended-fidelity frame:
//   res_z = dt psi_z - K0 psi_u          (machine-small by construction)
//   res_y = dt psi_y - (K0 + K1) psi_u
//   res_u = dt psi_u + d psi_y (1 + dtt psi_y) / (1 + L psi_z)
// The frame must carry order-2 closures; the division is exact pointwise and
// aborts (std::runtime_error) if the denominator dips below 1/2.
ResidualSample residuals(const ApproximantFrame& frame, const ModulationState& s,
                         double s_index = 4.0);

// Same formulas for the first-order baseline frame (kdv_only fidelity).
ResidualSample kdv_only_residuals(const ApproximantFrame& frame, const ModulationState& s,
                                  double s_index = 4.0);

// Least-squares fit of log(norm) against log(eps).
struct ScalingReport {
  std::vector<double> eps_values;
  std::vector<double> norms;
  double slope = 0.0;
  double intercept = 0.0;        // of log(norm) at log(eps) = 0
  double residual_of_fit = 0.0;  // rms of the log-residuals
  // True when the ladder supports a trustworthy exponent: at least four
  // samples spanning a factor of three in eps.
  bool well_conditioned = false;
};

ScalingReport fit_slope(const std::vector<double>& eps_values, const std::vector<double>& norms);

// CSV columns: eps,res_z,res_y,res_u (one row per sample).
void write_residual_csv(const std::string& path, const std::vector<ResidualSample>& samples);

// JSON summary of named scaling fits.
void write_scaling_json(const std::string& path,
                        const std::vector<std::pair<std::string, ScalingReport>>& named);

}  // namespace lw
