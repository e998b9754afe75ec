#include "longwave/approximant.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "json.hpp"
#include "longwave/io.hpp"
#include "longwave/kdv.hpp"
#include "longwave/linkdv.hpp"
#include "longwave/multiplier.hpp"
#include "longwave/ops.hpp"
#include "longwave/wave3.hpp"

namespace lw {
namespace {

// ---------------------------------------------------------------------------
// Two-grid plumbing

void check_frame_inputs(const ModulationState& s, double t, const Grid& alpha,
                        Fidelity fidelity) {
  const Grid& beta = s.U.grid;
  if (alpha.n == 0 || beta.n == 0) throw std::invalid_argument("empty grid in frame assembly");
  if (std::abs(alpha.length * s.eps - beta.length) > 1e-9 * beta.length)
    throw std::invalid_argument("alpha-grid period must be the beta-period / eps");
  const double T_req = s.eps * s.eps * s.eps * t;
  if (std::abs(s.T - T_req) > 1e-9 * std::max(1.0, std::abs(s.T)))
    throw std::invalid_argument("state slow time does not match the requested frame time");
  if (fidelity == Fidelity::extended && !s.w3_valid)
    throw std::invalid_argument("extended frame requires the third-order wave stage");
}

// Sample a beta-grid profile H at beta = eps*alpha + delta for every lab
// point; delta = -tau / +tau / 0 realizes right-comoving / left-comoving /
// lab arguments.  The samples are rebranded onto the alpha-grid, where the
// spectral wavenumbers are automatically the eps-scaled ones.
Field to_lab(const Field& H, const Grid& alpha, double eps, double delta) {
  Field s = resample(H, make_grid(alpha.n, H.grid.length, eps * alpha.origin + delta));
  Field out;
  out.grid = alpha;
  out.v = std::move(s.v);
  out.mean_zero = s.mean_zero;
  return out;
}

// ---------------------------------------------------------------------------
// Slow-time closures of the modulation channels (all beta-grid)

// KdV flux antiderivative: W_T = -/+ d_beta A for the right/left mover.
Field kdv_flux(const Field& W) {
  return (1.0 / 6.0) * deriv(W, 2) + 0.75 * multiply(W, W);
}

// Linearized-KdV flux antiderivative for the right (F over U background,
// phi-) or left (G over V) correction.
Field linkdv_flux(Chirality chi, const Field& FG, const Field& UV, const Field& phi) {
  return (1.0 / 6.0) * deriv(FG, 2) + 1.5 * multiply(UV, FG) +
         0.5 * j_antiderivative(chi, UV, phi);
}

// d/dT of the bracket whose two beta-derivatives give the second slow
// derivative of a KdV solution (the trailing bracket of the driving
// antiderivative Lambda), by the chain rule.
Field bracket_T(const Field& W, const Field& W_T) {
  return (1.0 / 36.0) * deriv(W_T, 4) + 2.25 * multiply(multiply(W, W), W_T) +
         0.5 * (multiply(W_T, deriv(W, 2)) + multiply(W, deriv(W_T, 2))) +
         0.25 * multiply(deriv(W, 1), deriv(W_T, 1));
}

// d/dT of the driving antiderivative Lambda (chain rule through the
// background rate UV_T and the transport rate phi_T).
Field lambda_T(const Field& UV, const Field& UV_T, const Field& phi, const Field& phi_T) {
  return 3.0 * (multiply(UV_T, phi) + multiply(UV, phi_T)) + (1.0 / 3.0) * deriv(phi_T, 2) +
         4.0 * multiply(multiply(UV, UV), UV_T) +
         (7.0 / 3.0) * (multiply(UV_T, deriv(UV, 2)) + multiply(UV, deriv(UV_T, 2))) +
         (4.0 / 3.0) * multiply(deriv(UV, 1), deriv(UV_T, 1)) + (2.0 / 15.0) * deriv(UV_T, 4) -
         bracket_T(UV, UV_T);
}

struct SlowPack {
  double tau = 0.0;
  // flux antiderivatives and first slow rates
  Field A_U, A_V, A_F, A_G;
  Field U_T, V_T, F_T, G_T;
  Field q;  // transport source in the right-comoving frame
  // chain-rule rates of the fluxes and genuine second slow rates
  bool second = false;
  Field A_U_T, A_V_T, A_F_T, A_G_T;
  Field U_TT, V_TT, F_TT, G_TT;
};

SlowPack make_slow(const ModulationState& s, bool second) {
  SlowPack p;
  p.tau = s.T / (s.eps * s.eps);
  p.A_U = kdv_flux(s.U);
  p.A_V = kdv_flux(s.V);
  p.A_F = linkdv_flux(Chirality::right, s.F, s.U, s.phiMinus);
  p.A_G = linkdv_flux(Chirality::left, s.G, s.V, s.phiPlus);
  p.U_T = kdv_rhs(s.U, Chirality::right);
  p.V_T = kdv_rhs(s.V, Chirality::left);
  p.F_T = -1.0 * deriv(p.A_F, 1);
  p.G_T = deriv(p.A_G, 1);
  p.q = deriv(multiply(s.U, shift_field(s.V, 2.0 * p.tau)), 1);
  if (!second) return p;

  p.second = true;
  const double inv_eps2 = 1.0 / (s.eps * s.eps);
  const Field phiM_T = (-1.5 * inv_eps2) * p.q;
  const Field phiP_T = (1.5 * inv_eps2) * shift_field(p.q, -2.0 * p.tau);
  p.A_U_T = (1.0 / 6.0) * deriv(p.U_T, 2) + 1.5 * multiply(s.U, p.U_T);
  p.A_V_T = (1.0 / 6.0) * deriv(p.V_T, 2) + 1.5 * multiply(s.V, p.V_T);
  p.A_F_T = (1.0 / 6.0) * deriv(p.F_T, 2) +
            1.5 * (multiply(p.U_T, s.F) + multiply(s.U, p.F_T)) +
            0.5 * lambda_T(s.U, p.U_T, s.phiMinus, phiM_T);
  p.A_G_T = (1.0 / 6.0) * deriv(p.G_T, 2) +
            1.5 * (multiply(p.V_T, s.G) + multiply(s.V, p.G_T)) +
            0.5 * lambda_T(s.V, p.V_T, s.phiPlus, phiP_T);
  p.U_TT = dTT_closed_form(s.U, Chirality::right);
  p.V_TT = dTT_closed_form(s.V, Chirality::left);
  p.F_TT = -1.0 * deriv(p.A_F_T, 1);
  p.G_TT = deriv(p.A_G_T, 1);
  return p;
}

// ---------------------------------------------------------------------------
// The nonlocal long-wave reconstruction and its Z-variables (beta-grid)

// Exact long-wave symbol -tanh(eps k)/(eps k), value -1 at k = 0, with a
// series branch where the argument underflows the tanh quotient's accuracy.
Field apply_linv_eps(const Field& f, double eps) {
  Multiplier m;
  m.name = "Linv_eps";
  m.parity = Parity::even_real;
  m.symbol = [eps](double k) -> std::complex<double> {
    const double a = eps * k;
    if (std::abs(a) < 1e-4) {
      const double a2 = a * a;
      return {-(1.0 - a2 / 3.0 + (2.0 / 15.0) * a2 * a2), 0.0};
    }
    return {-std::tanh(a) / a, 0.0};
  };
  return apply(m, f);
}

// Displacement-sum parts and their tau-rates.  W1 = -(U_l + V_l),
// W2 = -(F_l + G_l + P); the comoving arguments are exact spectral shifts and
// every tau-derivative threads the slow rates through the chain rule
// d_tau [shift(-/+tau) H] = shift(-/+tau) [(-/+ d_beta + eps^2 d_T) H].
struct ZPack {
  Field Z1, Z2, dtZ1;          // enough for the frame itself
  Field dt2Z1, dtZ2;           // first-order closures
  Field dt3Z1, dt2Z2;          // second-order closures
};

ZPack make_z(const ModulationState& s, const SlowPack& p, int order) {
  if (order >= 1 && !p.second)
    throw std::logic_error("Z-variable rates of this order need the second slow block");
  const double tau = p.tau, e2 = s.eps * s.eps, e4 = e2 * e2;
  const Field P = s.Pminus + s.Pplus;
  const Field W1 = -1.0 * (shift_field(s.U, -tau) + shift_field(s.V, tau));
  const Field W2 = -1.0 * (shift_field(s.F, -tau) + shift_field(s.G, tau) + P);
  const Field dtW1 = shift_field(deriv(s.U, 1) - e2 * p.U_T, -tau) -
                     shift_field(deriv(s.V, 1) + e2 * p.V_T, tau);
  ZPack z;
  z.Z1 = apply_linv_eps(W1, s.eps);
  z.Z2 = apply_linv_eps(W2, s.eps);
  z.dtZ1 = apply_linv_eps(dtW1, s.eps);
  if (order < 1) return z;

  const Field dt2W1 = -1.0 * shift_field(deriv(s.U, 2) - 2.0 * e2 * deriv(p.U_T, 1) + e4 * p.U_TT, -tau) -
                      shift_field(deriv(s.V, 2) + 2.0 * e2 * deriv(p.V_T, 1) + e4 * p.V_TT, tau);
  const Field dtW2 = shift_field(deriv(s.F, 1) - e2 * p.F_T, -tau) -
                     shift_field(deriv(s.G, 1) + e2 * p.G_T, tau) -
                     deriv(s.Pplus - s.Pminus, 1);
  z.dt2Z1 = apply_linv_eps(dt2W1, s.eps);
  z.dtZ2 = apply_linv_eps(dtW2, s.eps);
  if (order < 2) return z;

  // The third slow rate of the backgrounds enters only at relative order
  // eps^6 here; the closure truncates it (U_TTT = V_TTT = 0).
  const Field dt3W1 = shift_field(deriv(s.U, 3) - 3.0 * e2 * deriv(p.U_T, 2) + 3.0 * e4 * deriv(p.U_TT, 1), -tau) -
                      shift_field(deriv(s.V, 3) + 3.0 * e2 * deriv(p.V_T, 2) + 3.0 * e4 * deriv(p.V_TT, 1), tau);
  const Field dt2W2 = -1.0 * shift_field(deriv(s.F, 2) - 2.0 * e2 * deriv(p.F_T, 1) + e4 * p.F_TT, -tau) -
                      shift_field(deriv(s.G, 2) + 2.0 * e2 * deriv(p.G_T, 1) + e4 * p.G_TT, tau) -
                      deriv(P, 2) - 3.0 * deriv(shift_field(p.q, -tau), 1);
  z.dt3Z1 = apply_linv_eps(dt3W1, s.eps);
  z.dt2Z2 = apply_linv_eps(dt2W2, s.eps);
  return z;
}

// tau-rates of the dressings, from the product rule on deltas().
Field delta1_rate(const ZPack& z) { return 2.0 * multiply(z.Z1, z.dtZ1); }

Field delta2_rate(const ZPack& z) {
  return 2.0 * multiply(deriv(z.Z1, 1), deriv(z.dtZ1, 1)) +
         2.0 * (multiply(z.dtZ1, z.Z2) + multiply(z.Z1, z.dtZ2)) +
         multiply(multiply(z.Z1, z.Z1), z.dtZ1) +
         (4.0 / 3.0) * (multiply(z.dtZ1, deriv(z.Z1, 2)) + multiply(z.Z1, deriv(z.dtZ1, 2))) -
         (4.0 / 3.0) * multiply(z.dtZ1, z.dt2Z1);
}

Field delta1_rate2(const ZPack& z) {
  return 2.0 * (multiply(z.dtZ1, z.dtZ1) + multiply(z.Z1, z.dt2Z1));
}

Field delta2_rate2(const ZPack& z) {
  return 2.0 * (multiply(deriv(z.dtZ1, 1), deriv(z.dtZ1, 1)) +
                multiply(deriv(z.Z1, 1), deriv(z.dt2Z1, 1))) +
         2.0 * (multiply(z.dt2Z1, z.Z2) + 2.0 * multiply(z.dtZ1, z.dtZ2) +
                multiply(z.Z1, z.dt2Z2)) +
         2.0 * multiply(z.Z1, multiply(z.dtZ1, z.dtZ1)) +
         multiply(multiply(z.Z1, z.Z1), z.dt2Z1) +
         (4.0 / 3.0) * (multiply(z.dt2Z1, deriv(z.Z1, 2)) +
                        2.0 * multiply(z.dtZ1, deriv(z.dtZ1, 2)) +
                        multiply(z.Z1, deriv(z.dt2Z1, 2))) -
         (4.0 / 3.0) * (multiply(z.dt2Z1, z.dt2Z1) + multiply(z.dtZ1, z.dt3Z1));
}

// ---------------------------------------------------------------------------
// Displacement-sum rates (shared by the frames and the exposed entry points)

Field dt_psi_d_impl(const ModulationState& s, const SlowPack& p, const Grid& alpha,
                    Fidelity fid) {
  const double eps = s.eps, tau = p.tau;
  const double e3 = eps * eps * eps, e5 = e3 * eps * eps, e7 = e5 * eps * eps;
  Field acc(alpha);
  const auto add = [&](double c, const Field& H, double delta) {
    acc += c * to_lab(H, alpha, eps, delta);
  };
  add(e3, deriv(s.U, 1), -tau);
  add(-e5, p.U_T, -tau);
  add(-e3, deriv(s.V, 1), tau);
  add(-e5, p.V_T, tau);
  if (fid != Fidelity::kdv_only) {
    add(e5, deriv(s.F, 1), -tau);
    add(-e7, p.F_T, -tau);
    add(-e5, deriv(s.G, 1), tau);
    add(-e7, p.G_T, tau);
    add(-e5, deriv(s.Pplus - s.Pminus, 1), 0.0);
  }
  if (fid == Fidelity::extended) add(e7, s.W3dot, 0.0);

  double peak = 0.0;
  for (double x : acc.v) peak = std::max(peak, std::abs(x));
  if (std::abs(mean(acc)) > 1e-12 * std::max(1.0, peak))
    throw std::runtime_error("zero-mode leak in the displacement rate");
  acc.mean_zero = true;
  return acc;
}

Field dtt_psi_d_impl(const ModulationState& s, const SlowPack& p, const Grid& alpha,
                     Fidelity fid) {
  const double eps = s.eps, tau = p.tau;
  const double e4 = eps * eps * eps * eps, e6 = e4 * eps * eps, e8 = e6 * eps * eps;
  const double e10 = e8 * eps * eps;
  Field acc(alpha);
  const auto add = [&](double c, const Field& H, double delta) {
    acc += c * to_lab(H, alpha, eps, delta);
  };
  add(-e4, deriv(s.U, 2), -tau);
  add(2.0 * e6, deriv(p.U_T, 1), -tau);
  add(-e8, p.U_TT, -tau);
  add(-e4, deriv(s.V, 2), tau);
  add(-2.0 * e6, deriv(p.V_T, 1), tau);
  add(-e8, p.V_TT, tau);
  if (fid != Fidelity::kdv_only) {
    add(-e6, deriv(s.F, 2), -tau);
    add(2.0 * e8, deriv(p.F_T, 1), -tau);
    add(-e10, p.F_TT, -tau);
    add(-e6, deriv(s.G, 2), tau);
    add(-2.0 * e8, deriv(p.G_T, 1), tau);
    add(-e10, p.G_TT, tau);
    const Field uv_lab = multiply(shift_field(s.U, -tau), shift_field(s.V, tau));
    add(-e6, deriv(s.Pminus + s.Pplus, 2) + 3.0 * deriv(uv_lab, 2), 0.0);
  }
  if (fid == Fidelity::extended) {
    const Field gamma = wave3_gamma(s.U, s.V, s.F, s.G, s.phiMinus, s.phiPlus, tau);
    add(e8, deriv(s.W3, 2) + deriv(gamma, 1), 0.0);
  }
  return acc;
}

const char* fidelity_name(Fidelity f) {
  switch (f) {
    case Fidelity::kdv_only: return "kdv-only";
    case Fidelity::simple: return "simple";
    default: return "extended";
  }
}

}  // namespace

// ---------------------------------------------------------------------------

std::pair<Field, Field> deltas(const Field& Z1, const Field& Z2, const Field& dtauZ1) {
  check_same_grid(Z1, Z2);
  check_same_grid(Z1, dtauZ1);
  Field d1 = multiply(Z1, Z1);
  Field d2 = multiply(deriv(Z1, 1), deriv(Z1, 1)) + 2.0 * multiply(Z1, Z2) +
             (1.0 / 3.0) * multiply(d1, Z1) + (4.0 / 3.0) * multiply(Z1, deriv(Z1, 2)) -
             (2.0 / 3.0) * multiply(dtauZ1, dtauZ1);
  return {std::move(d1), std::move(d2)};
}

ApproximantFrame assemble_frame(const ModulationState& s, double t, const Grid& alpha,
                                Fidelity fidelity) {
  check_frame_inputs(s, t, alpha, fidelity);
  const double eps = s.eps;
  const double tau = eps * t;
  const double e2 = eps * eps, e4 = e2 * e2, e6 = e4 * e2;

  ApproximantFrame fr;
  fr.t = t;
  fr.eps = eps;
  fr.fidelity = fidelity;

  const Field Ul = to_lab(s.U, alpha, eps, -tau);
  const Field Vl = to_lab(s.V, alpha, eps, tau);

  if (fidelity == Fidelity::kdv_only) {
    // First-order frame: counter-propagating backgrounds plus the quadratic
    // surface/velocity dressings they induce, but none of the second-order
    // correction channels.  The dressings are what make the leading
    // transport blocks of the truncated system cancel, leaving the genuine
    // first-order defect (the uncancelled interaction block) in view.
    fr.psi_d = -e2 * (Ul + Vl);
    fr.psi_z = apply(builtin_symbol("Linv"), fr.psi_d);
    const Field S = shift_field(s.U, -tau) + shift_field(s.V, tau);
    fr.psi_y = e2 * (Ul + Vl) +
               e4 * ((1.0 / 3.0) * to_lab(deriv(s.U, 2), alpha, eps, -tau) +
                     (1.0 / 3.0) * to_lab(deriv(s.V, 2), alpha, eps, tau) +
                     to_lab(multiply(S, S), alpha, eps, 0.0));
    fr.psi_u = e2 * (Ul - Vl) + e4 * (to_lab(kdv_flux(s.U), alpha, eps, -tau) -
                                      to_lab(kdv_flux(s.V), alpha, eps, tau));
    return fr;
  }

  const SlowPack p = make_slow(s, /*second=*/false);
  const Field Fl = to_lab(s.F, alpha, eps, -tau);
  const Field Gl = to_lab(s.G, alpha, eps, tau);
  const Field Pl = to_lab(s.Pminus + s.Pplus, alpha, eps, 0.0);

  fr.psi_d = -e2 * (Ul + Vl) - e4 * (Fl + Gl + Pl);
  if (fidelity == Fidelity::extended) fr.psi_d += e6 * to_lab(s.W3, alpha, eps, 0.0);
  fr.psi_z = apply(builtin_symbol("Linv"), fr.psi_d);

  fr.psi_u = e2 * (Ul - Vl) +
             e4 * (to_lab(p.A_U, alpha, eps, -tau) - to_lab(p.A_V, alpha, eps, tau) +
                   to_lab(s.phiMinus, alpha, eps, -tau) - to_lab(s.phiPlus, alpha, eps, tau) +
                   Fl - Gl);
  if (fidelity == Fidelity::extended)
    fr.psi_u += e6 * (to_lab(p.A_F, alpha, eps, -tau) - to_lab(p.A_G, alpha, eps, tau) +
                      to_lab(s.W3dotAnti, alpha, eps, 0.0));

  if (fidelity == Fidelity::simple) {
    const Field S = shift_field(s.U, -tau) + shift_field(s.V, tau);
    fr.psi_y = e2 * (Ul + Vl) +
               e4 * (Fl + Gl + Pl + (1.0 / 3.0) * to_lab(deriv(s.U, 2), alpha, eps, -tau) +
                     (1.0 / 3.0) * to_lab(deriv(s.V, 2), alpha, eps, tau) +
                     to_lab(multiply(S, S), alpha, eps, 0.0));
  } else {
    const ZPack z = make_z(s, p, /*order=*/0);
    auto [d1, d2] = deltas(z.Z1, z.Z2, z.dtZ1);
    fr.psi_y = fr.psi_z + e4 * to_lab(d1, alpha, eps, 0.0) + e6 * to_lab(d2, alpha, eps, 0.0);
  }
  return fr;
}

void time_derivative_closure(ApproximantFrame& fr, const ModulationState& s, int order) {
  if (order < 1 || order > 2) throw std::invalid_argument("closure order must be 1 or 2");
  const Grid alpha = fr.psi_d.grid;
  check_frame_inputs(s, fr.t, alpha, fr.fidelity);
  const Fidelity fid = fr.fidelity;
  const double eps = s.eps;
  const SlowPack p = make_slow(s, /*second=*/true);
  const double tau = p.tau;
  const double e3 = eps * eps * eps, e5 = e3 * eps * eps, e7 = e5 * eps * eps;
  const double e9 = e7 * eps * eps;
  const double e4 = eps * eps * eps * eps, e6 = e4 * eps * eps, e8 = e6 * eps * eps;
  const double e10 = e8 * eps * eps;

  // --- d/dt of the velocity frame, termwise ---------------------------------
  {
    Field acc(alpha);
    const auto add = [&](double c, const Field& H, double delta) {
      acc += c * to_lab(H, alpha, eps, delta);
    };
    add(-e3, deriv(s.U, 1), -tau);
    add(e5, p.U_T, -tau);
    add(-e3, deriv(s.V, 1), tau);
    add(-e5, p.V_T, tau);
    add(-e5, deriv(p.A_U, 1), -tau);
    add(e7, p.A_U_T, -tau);
    add(-e5, deriv(p.A_V, 1), tau);
    add(-e7, p.A_V_T, tau);
    if (fid != Fidelity::kdv_only) {
      add(-e5, deriv(s.phiMinus, 1), -tau);
      add(-1.5 * e5, p.q, -tau);
      add(-e5, deriv(s.phiPlus, 1), tau);
      add(-1.5 * e5, shift_field(p.q, -2.0 * tau), tau);
      add(-e5, deriv(s.F, 1), -tau);
      add(e7, p.F_T, -tau);
      add(-e5, deriv(s.G, 1), tau);
      add(-e7, p.G_T, tau);
    }
    if (fid == Fidelity::extended) {
      add(-e7, deriv(p.A_F, 1), -tau);
      add(e9, p.A_F_T, -tau);
      add(-e7, deriv(p.A_G, 1), tau);
      add(-e9, p.A_G_T, tau);
      const Field gamma = wave3_gamma(s.U, s.V, s.F, s.G, s.phiMinus, s.phiPlus, tau);
      add(e7, deriv(s.W3, 1) + gamma, 0.0);
    }
    fr.dt_psi_u = std::move(acc);
  }

  // --- d/dt (and d^2/dt^2) of the surface frame -----------------------------
  if (fid == Fidelity::extended) {
    const ZPack z = make_z(s, p, order);
    fr.dt_psi_y = apply(builtin_symbol("Linv"), dt_psi_d_impl(s, p, alpha, fid)) +
                  e5 * to_lab(delta1_rate(z), alpha, eps, 0.0) +
                  e7 * to_lab(delta2_rate(z), alpha, eps, 0.0);
    if (order >= 2)
      fr.dtt_psi_y = apply(builtin_symbol("Linv"), dtt_psi_d_impl(s, p, alpha, fid)) +
                     e6 * to_lab(delta1_rate2(z), alpha, eps, 0.0) +
                     e8 * to_lab(delta2_rate2(z), alpha, eps, 0.0);
  } else {
    Field acc(alpha);
    const auto add = [&](double c, const Field& H, double delta) {
      acc += c * to_lab(H, alpha, eps, delta);
    };
    add(-e3, deriv(s.U, 1), -tau);
    add(e5, p.U_T, -tau);
    add(e3, deriv(s.V, 1), tau);
    add(e5, p.V_T, tau);
    if (fid == Fidelity::simple) {
      add(-e5, deriv(s.F, 1), -tau);
      add(e7, p.F_T, -tau);
      add(e5, deriv(s.G, 1), tau);
      add(e7, p.G_T, tau);
      add(e5, deriv(s.Pplus - s.Pminus, 1), 0.0);
    }
    add(-e5 / 3.0, deriv(s.U, 3), -tau);
    add(e7 / 3.0, deriv(p.U_T, 2), -tau);
    add(e5 / 3.0, deriv(s.V, 3), tau);
    add(e7 / 3.0, deriv(p.V_T, 2), tau);
    const Field S = shift_field(s.U, -tau) + shift_field(s.V, tau);
    const Field Sdot = shift_field(-1.0 * deriv(s.U, 1) + eps * eps * p.U_T, -tau) +
                       shift_field(deriv(s.V, 1) + eps * eps * p.V_T, tau);
    add(2.0 * e5, multiply(S, Sdot), 0.0);
    fr.dt_psi_y = std::move(acc);

    if (order >= 2) {
      Field a2(alpha);
      const auto add2 = [&](double c, const Field& H, double delta) {
        a2 += c * to_lab(H, alpha, eps, delta);
      };
      add2(e4, deriv(s.U, 2), -tau);
      add2(-2.0 * e6, deriv(p.U_T, 1), -tau);
      add2(e8, p.U_TT, -tau);
      add2(e4, deriv(s.V, 2), tau);
      add2(2.0 * e6, deriv(p.V_T, 1), tau);
      add2(e8, p.V_TT, tau);
      if (fid == Fidelity::simple) {
        add2(e6, deriv(s.F, 2), -tau);
        add2(-2.0 * e8, deriv(p.F_T, 1), -tau);
        add2(e10, p.F_TT, -tau);
        add2(e6, deriv(s.G, 2), tau);
        add2(2.0 * e8, deriv(p.G_T, 1), tau);
        add2(e10, p.G_TT, tau);
        const Field uv_lab = multiply(shift_field(s.U, -tau), shift_field(s.V, tau));
        add2(e6, deriv(s.Pminus + s.Pplus, 2) + 3.0 * deriv(uv_lab, 2), 0.0);
      }
      add2(e6 / 3.0, deriv(s.U, 4), -tau);
      add2(-2.0 * e8 / 3.0, deriv(p.U_T, 3), -tau);
      add2(e10 / 3.0, deriv(p.U_TT, 2), -tau);
      add2(e6 / 3.0, deriv(s.V, 4), tau);
      add2(2.0 * e8 / 3.0, deriv(p.V_T, 3), tau);
      add2(e10 / 3.0, deriv(p.V_TT, 2), tau);
      const Field Sddot =
          shift_field(deriv(s.U, 2) - 2.0 * eps * eps * deriv(p.U_T, 1) + e4 * p.U_TT, -tau) +
          shift_field(deriv(s.V, 2) + 2.0 * eps * eps * deriv(p.V_T, 1) + e4 * p.V_TT, tau);
      add2(2.0 * e6, multiply(Sdot, Sdot) + multiply(S, Sddot), 0.0);
      fr.dtt_psi_y = std::move(a2);
    }
  }

  fr.has_derivatives = true;
  fr.has_second = order >= 2;
  return;
}

Field dt_psi_d(const ModulationState& s, double t, const Grid& alpha, Fidelity fidelity) {
  check_frame_inputs(s, t, alpha, fidelity);
  const SlowPack p = make_slow(s, /*second=*/false);
  return dt_psi_d_impl(s, p, alpha, fidelity);
}

Field dtt_psi_d(const ModulationState& s, double t, const Grid& alpha, Fidelity fidelity) {
  check_frame_inputs(s, t, alpha, fidelity);
  const SlowPack p = make_slow(s, /*second=*/true);
  return dtt_psi_d_impl(s, p, alpha, fidelity);
}

void save_frame(const std::string& dir, const ApproximantFrame& fr) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);

  nlohmann::json man;
  man["format"] = "longwave-frame";
  man["version"] = 1;
  man["t"] = fr.t;
  man["eps"] = fr.eps;
  man["fidelity"] = fidelity_name(fr.fidelity);
  const Grid& g = fr.psi_d.grid;
  man["grid"] = {{"n", g.n}, {"length", g.length}, {"origin", g.origin}};

  std::vector<std::pair<std::string, const Field*>> fields = {
      {"psi_d", &fr.psi_d}, {"psi_y", &fr.psi_y}, {"psi_u", &fr.psi_u}, {"psi_z", &fr.psi_z}};
  if (fr.has_derivatives) {
    fields.emplace_back("dt_psi_y", &fr.dt_psi_y);
    fields.emplace_back("dt_psi_u", &fr.dt_psi_u);
  }
  if (fr.has_second) fields.emplace_back("dtt_psi_y", &fr.dtt_psi_y);
  for (const auto& [name, f] : fields) {
    const std::string file = name + ".bin";
    write_field_binary((fs::path(dir) / file).string(), *f);
    man["fields"][name] = file;
  }

  const fs::path man_path = fs::path(dir) / "manifest.json";
  std::ofstream out(man_path);
  if (!out) throw std::runtime_error("cannot write " + man_path.string());
  out << man.dump(2) << "\n";
  if (!out.good()) throw std::runtime_error("short write to " + man_path.string());
}

}  // namespace lw
