#include "longwave/residual.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "longwave/multiplier.hpp"
#include "longwave/ops.hpp"

namespace lw {

namespace {

Field ones_like(const Grid& g) {
  Field one(g);
  std::fill(one.v.begin(), one.v.end(), 1.0);
  return one;
}

ResidualSample residuals_impl(const ApproximantFrame& fr, const ModulationState& s,
                              double s_index) {
  if (!fr.has_derivatives || !fr.has_second) {
    throw std::invalid_argument("residuals: frame lacks order-2 time-derivative closures");
  }
  const Grid& alpha = fr.psi_d.grid;

  const Multiplier K0 = builtin_symbol("K0");
  const Field k0u = apply(K0, fr.psi_u);

  // Vertical kinematic equation: dt psi_z - K0 psi_u.  The displacement rate
  // is assembled termwise from the modulation equations and pulled back
  // through the exact inverse symbol.
  const Field dt_z = apply(builtin_symbol("Linv"), dt_psi_d(s, fr.t, alpha, fr.fidelity));

  // Surface kinematic equation: dt psi_y - (K0 + K1(psi_z, psi_y)) psi_u.
  const Field res_y = fr.dt_psi_y - k0u - k1_apply(fr.psi_z, fr.psi_y, fr.psi_u);

  // Dynamic equation: dt psi_u + d psi_y (1 + dtt psi_y) / (1 + L psi_z),
  // with the quotient taken exactly pointwise.
  const Field one = ones_like(alpha);
  const Field denom = one + apply(builtin_symbol("L"), fr.psi_z);
  const double min_denom = *std::min_element(denom.v.begin(), denom.v.end());
  if (min_denom < 0.5) {
    throw std::runtime_error(
        "residuals: surface denominator 1 + L psi_z reached " + std::to_string(min_denom) +
        " (< 1/2); the frame is outside the validity regime");
  }
  const Field numer = multiply(deriv(fr.psi_y, 1), one + fr.dtt_psi_y);
  const Field res_u = fr.dt_psi_u + divide_pointwise(numer, denom);

  ResidualSample out;
  out.eps = fr.eps;
  out.t = fr.t;
  out.res_z = dt_z - k0u;
  out.res_y = res_y;
  out.res_u = res_u;
  out.res_z_norm = sobolev_norm(out.res_z, s_index);
  out.res_y_norm = sobolev_norm(out.res_y, s_index);
  out.res_u_norm = sobolev_norm(out.res_u, s_index - 1.0);
  out.min_denominator = min_denom;
  out.background_norm_s9 =
      std::max(sobolev_norm(s.U, s_index + 9.0), sobolev_norm(s.V, s_index + 9.0));
  return out;
}

}  // namespace

Field m1_apply(const Field& f, const Field& v) {
  const Multiplier K0 = builtin_symbol("K0");
  return -1.0 * (multiply(f, v) + apply(K0, multiply(f, apply(K0, v))));
}

Field k1_apply(const Field& z, const Field& y, const Field& u) {
  check_same_grid(z, y);
  check_same_grid(z, u);
  const Multiplier K0 = builtin_symbol("K0");
  const Field zy = z + y;
  const Field du = deriv(u, 1);
  return -1.0 * multiply(zy, du) - apply(K0, multiply(zy, apply(K0, du)));
}

ResidualSample residuals(const ApproximantFrame& frame, const ModulationState& s,
                         double s_index) {
  if (frame.fidelity != Fidelity::extended) {
    throw std::invalid_argument("residuals: frame must carry the extended fidelity");
  }
  return residuals_impl(frame, s, s_index);
}

ResidualSample kdv_only_residuals(const ApproximantFrame& frame, const ModulationState& s,
                                  double s_index) {
  if (frame.fidelity != Fidelity::kdv_only) {
    throw std::invalid_argument("kdv_only_residuals: frame must carry the kdv_only fidelity");
  }
  return residuals_impl(frame, s, s_index);
}

ScalingReport fit_slope(const std::vector<double>& eps_values, const std::vector<double>& norms) {
  if (eps_values.size() != norms.size()) {
    throw std::invalid_argument("fit_slope: eps/norm arrays differ in length");
  }
  if (eps_values.size() < 2) {
    throw std::invalid_argument("fit_slope: need at least two samples");
  }
  for (std::size_t i = 0; i < eps_values.size(); ++i) {
    if (!(eps_values[i] > 0.0) || !(norms[i] > 0.0)) {
      throw std::invalid_argument("fit_slope: eps values and norms must be positive");
    }
  }

  const std::size_t n = eps_values.size();
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    lx[i] = std::log(eps_values[i]);
    ly[i] = std::log(norms[i]);
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0.0) {
    throw std::invalid_argument("fit_slope: eps values are all equal");
  }

  ScalingReport rep;
  rep.eps_values = eps_values;
  rep.norms = norms;
  rep.slope = sxy / sxx;
  rep.intercept = my - rep.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ly[i] - (rep.intercept + rep.slope * lx[i]);
    ss += r * r;
  }
  rep.residual_of_fit = std::sqrt(ss / static_cast<double>(n));
  const auto [lo, hi] = std::minmax_element(eps_values.begin(), eps_values.end());
  rep.well_conditioned = n >= 4 && *hi >= 3.0 * *lo;
  return rep;
}

void write_residual_csv(const std::string& path, const std::vector<ResidualSample>& samples) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_residual_csv: cannot open " + path);
  out << "eps,res_z,res_y,res_u\n";
  char line[160];
  for (const ResidualSample& s : samples) {
    std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g,%.17g\n", s.eps, s.res_z_norm,
                  s.res_y_norm, s.res_u_norm);
    out << line;
  }
}

void write_scaling_json(const std::string& path,
                        const std::vector<std::pair<std::string, ScalingReport>>& named) {
  nlohmann::json j;
  for (const auto& [name, rep] : named) {
    j[name] = {
        {"slope", rep.slope},
        {"intercept", rep.intercept},
        {"residual_of_fit", rep.residual_of_fit},
        {"well_conditioned", rep.well_conditioned},
        {"eps", rep.eps_values},
        {"norms", rep.norms},
    };
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_scaling_json: cannot open " + path);
  out << j.dump(2) << "\n";
}

}  // namespace lw
