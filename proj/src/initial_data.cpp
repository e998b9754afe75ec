#include "longwave/initial_data.hpp"

#include "longwave/ops.hpp"

namespace lw {
namespace {

// Antiderivative of f pinned to vanish at beta = 0 (not mean-zero): the
// mean-zero spectral antiderivative minus its value at 0, evaluated exactly
// through the equal-size resample path.
Field pinned_antideriv(const Field& f) {
  Field a = antideriv(f);
  const Grid& g = a.grid;
  const double a0 = resample(a, make_grid(g.n, g.length, 0.0)).v[0];
  Field out = a;
  for (double& x : out.v) x -= a0;
  out.mean_zero = false;
  return out;
}

}  // namespace

InitialDataMap split_initial_data(const Field& Theta_y, const Field& Theta_u) {
  check_same_grid(Theta_y, Theta_u);
  InitialDataMap m;
  m.Theta_y = tag_mean_zero(Theta_y);
  m.Theta_u = tag_mean_zero(Theta_u);

  m.U0 = 0.5 * (m.Theta_y + m.Theta_u);
  m.V0 = 0.5 * (m.Theta_y - m.Theta_u);
  m.U0.mean_zero = true;
  m.V0.mean_zero = true;

  Field sum = m.U0 + m.V0;  // equals Theta_y
  sum.mean_zero = true;
  m.X1 = pinned_antideriv(-1.0 * sum);

  // Fourth-order profile corrections: what remains of the prescribed shapes
  // after the frame's own quadratic and dispersive dressings are removed.
  const Field d2U = deriv(m.U0, 2);
  const Field d2V = deriv(m.V0, 2);
  const Field h_y = multiply(m.X1, deriv(m.Theta_y, 1)) - (1.0 / 3.0) * d2U -
                    (1.0 / 3.0) * d2V - multiply(sum, sum);
  const Field h_u = multiply(m.X1, deriv(m.Theta_u, 1)) - (1.0 / 6.0) * d2U +
                    (1.0 / 6.0) * d2V - 0.75 * multiply(m.U0, m.U0) +
                    0.75 * multiply(m.V0, m.V0);

  m.F0 = 0.5 * (h_y + h_u);
  m.G0 = 0.5 * (h_y - h_u);

  // F0 + G0 = h_y, whose mean vanishes identically (integrating X1 * Theta_y'
  // by parts reproduces the quadratic term), so the antiderivative exists;
  // the tag check below turns any violation into a loud failure.
  m.X2 = pinned_antideriv(tag_mean_zero(-1.0 * h_y));
  return m;
}

}  // namespace lw
