#include "longwave/kdv.hpp"

#include <cmath>
#include <complex>
#include <cstdio>

#include "longwave/fft.hpp"
#include "longwave/ops.hpp"

namespace lw {
namespace {

// Warn (a few times, then stay quiet) when a field's spectral tail is not
// resolved; the schemes stay stable but accuracy claims no longer hold.
void check_resolved(const Field& W, const char* who) {
  static int budget = 3;
  if (budget <= 0) return;
  Spectrum s = fft(W);
  double peak = 0.0, tail = 0.0;
  const std::size_t half = s.c.size();
  for (std::size_t j = 0; j < half; ++j) {
    const double m = std::abs(s.c[j]);
    peak = std::max(peak, m);
    if (j >= half - half / 8) tail = std::max(tail, m);
  }
  if (peak > 0.0 && tail > 1e-10 * peak) {
    std::fprintf(stderr, "warning: %s: spectral tail %.2e of peak — field under-resolved\n",
                 who, tail / peak);
    --budget;
  }
}

}  // namespace

Field kdv_rhs(const Field& W, Chirality chi) {
  check_resolved(W, "kdv_rhs");
  const double sgn = (chi == Chirality::right) ? -0.5 : 0.5;
  Field w3 = deriv(W, 3);
  Field nl = deriv(multiply(W, W), 1);
  Field rhs = sgn * ((1.0 / 3.0) * w3 + 1.5 * nl);
  rhs.mean_zero = true;
  return rhs;
}

Field soliton(double A, double center, Chirality chi, const Grid& g) {
  (void)chi;  // the profile is chirality-independent; only the motion differs
  if (A < 0.0) throw std::invalid_argument("soliton amplitude must be non-negative");
  const double K = std::sqrt(3.0 * A) / 2.0;
  Field f(g, [&](double b) {
    const double c = std::cosh(K * (b - center));
    return A / (c * c);
  });
  return f;
}

namespace {

// Dealiased spectral square: zero-pad to 2n, square on the big grid, truncate.
Spectrum squared_dealiased(const Spectrum& s) {
  const Grid& g = s.grid;
  const Grid big{2 * g.n, g.length, g.origin};
  Spectrum sb(big);
  for (std::size_t j = 0; j + 1 < s.c.size(); ++j) sb.c[j] = s.c[j];
  sb.c[g.n / 2] = 0.5 * s.c[g.n / 2];
  Field w = ifft(sb);
  for (double& x : w.v) x *= x;
  Spectrum sq = fft(w);
  Spectrum out(g);
  for (std::size_t j = 0; j + 1 < out.c.size(); ++j) out.c[j] = sq.c[j];
  return out;
}

}  // namespace

FieldTrajectory kdv_evolve(const Field& W0, Chirality chi, double T_end, double dt,
                           double snap_stride) {
  if (!(dt > 0.0) || !(T_end >= 0.0)) throw std::invalid_argument("need dt > 0, T_end >= 0");
  const Grid& g = W0.grid;
  const std::size_t half = g.half_bins();

  // dW/dT = L W + N(W) with L = -/+ (1/6) d^3 (Airy part) and
  // N(W) = -/+ (3/4) d(W^2).  In spectral space L is diagonal: for the
  // right-mover, sigma_L(k) = +i k^3/6.
  const double airy_sign = (chi == Chirality::right) ? 1.0 : -1.0;
  const double nl_coeff = (chi == Chirality::right) ? -0.75 : 0.75;

  auto nonlinear = [&](const Spectrum& s) {
    Spectrum q = squared_dealiased(s);
    const std::size_t nyq = g.n / 2;
    for (std::size_t j = 0; j < half; ++j) {
      const double k = g.wavenumber(j);
      q.c[j] *= std::complex<double>(0.0, nl_coeff * k);
      if (j == nyq) q.c[j] = 0.0;
    }
    return q;
  };

  std::vector<std::complex<double>> e_half(half), e_full(half);
  double planned_dt = -1.0;
  auto plan_exponentials = [&](double h) {
    if (h == planned_dt) return;
    planned_dt = h;
    for (std::size_t j = 0; j < half; ++j) {
      const double k = g.wavenumber(j);
      const double phase = airy_sign * k * k * k / 6.0;
      e_half[j] = std::exp(std::complex<double>(0.0, phase * h / 2.0));
      e_full[j] = std::exp(std::complex<double>(0.0, phase * h));
    }
  };

  auto scaled = [&](const std::vector<std::complex<double>>& e, const Spectrum& s) {
    Spectrum r = s;
    for (std::size_t j = 0; j < half; ++j) r.c[j] *= e[j];
    return r;
  };

  FieldTrajectory traj;
  traj.push(0.0, W0);
  Spectrum s = fft(W0);
  const double norm0 = std::max(sobolev_norm(W0, 0.0), 1e-12);
  const double stride = snap_stride > 0.0 ? snap_stride : dt;

  double T = 0.0;
  double next_snap = stride;
  while (T < T_end - 1e-14 * std::max(1.0, T_end)) {
    const double h = std::min(dt, T_end - T);
    plan_exponentials(h);

    // Integrating-factor RK4 (classical RK4 on the Airy-transformed variable).
    Spectrum n1 = nonlinear(s);
    Spectrum stage = s;
    for (std::size_t j = 0; j < half; ++j) stage.c[j] = e_half[j] * (s.c[j] + 0.5 * h * n1.c[j]);
    Spectrum n2 = nonlinear(stage);
    Spectrum sh = scaled(e_half, s);
    for (std::size_t j = 0; j < half; ++j) stage.c[j] = sh.c[j] + 0.5 * h * n2.c[j];
    Spectrum n3 = nonlinear(stage);
    Spectrum sf = scaled(e_full, s);
    for (std::size_t j = 0; j < half; ++j) stage.c[j] = sf.c[j] + h * e_half[j] * n3.c[j];
    Spectrum n4 = nonlinear(stage);
    for (std::size_t j = 0; j < half; ++j)
      s.c[j] = sf.c[j] + (h / 6.0) * (e_full[j] * n1.c[j] + 2.0 * e_half[j] * (n2.c[j] + n3.c[j]) +
                                      n4.c[j]);
    T += h;

    Field W = ifft(s);
    const double nrm = sobolev_norm(W, 0.0);
    if (!std::isfinite(nrm) || nrm > 100.0 * norm0)
      throw std::runtime_error("kdv_evolve: blow-up detected at T=" + std::to_string(T) +
                               " (norm " + std::to_string(nrm) + " vs initial " +
                               std::to_string(norm0) + ")");
    if (T >= next_snap - 1e-12 || T >= T_end - 1e-14 * std::max(1.0, T_end)) {
      traj.push(T, W);
      while (next_snap <= T + 1e-12) next_snap += stride;
    }
  }
  return traj;
}

namespace {

Field dTT_bracket(const Field& W) {
  // (1/36) W''''' + (9/4) W^2 W' + (1/2) W W''' + (3/4) W' W''
  Field w1 = deriv(W, 1);
  Field w2 = deriv(W, 2);
  Field w3 = deriv(W, 3);
  Field w5 = deriv(W, 5);
  Field r = (1.0 / 36.0) * w5;
  r += 2.25 * multiply(multiply(W, W), w1);
  r += 0.5 * multiply(W, w3);
  r += 0.75 * multiply(w1, w2);
  return r;
}

}  // namespace

Field dTT_closed_form(const Field& W, Chirality chi) {
  (void)chi;  // the two sign flips cancel: d_T^2 is chirality-blind
  check_resolved(W, "dTT_closed_form");
  return deriv(dTT_bracket(W), 1);
}

Field dTT_antiderivative(const Field& W, Chirality chi) {
  (void)chi;
  return dTT_bracket(W);
}

}  // namespace lw
