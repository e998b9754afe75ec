#include "longwave/transport.hpp"

#include <cmath>

#include "longwave/ops.hpp"

namespace lw {
namespace {

// d_beta[ U(.,T) * V(. + 2 tau, T) ] evaluated in the right-moving frame:
// equals shift(+tau) applied to the lab-frame d_beta(U_lab V_lab).
Field source_in_minus_frame(const FieldTrajectory& U, const FieldTrajectory& V, double eps,
                            double tau) {
  const double T = eps * eps * tau;
  Field u = U.at(T);
  Field v = shift_field(V.at(T), 2.0 * tau);
  return deriv(multiply(u, v), 1);
}

}  // namespace

TransportResult transport_evolve(const FieldTrajectory& U, const FieldTrajectory& V, double eps,
                                 double tau_end, double dtau, double snap_tau,
                                 const Field* phiMinus0, const Field* phiPlus0) {
  if (!(dtau > 0.0) || !(tau_end >= 0.0)) throw std::invalid_argument("need dtau > 0, tau_end >= 0");
  const Grid& g = U.fields.front().grid;

  Field phiM = phiMinus0 ? *phiMinus0 : Field(g);
  Field phiP = phiPlus0 ? *phiPlus0 : Field(g);

  TransportResult out;
  auto record = [&](double tau) {
    const double T = eps * eps * tau;
    out.phiMinus.push(T, phiM);
    out.phiPlus.push(T, phiP);
    out.Pminus.push(T, shift_field(phiM, -tau));
    out.Pplus.push(T, shift_field(phiP, tau));
  };
  record(0.0);
  if (tau_end <= 0.0) return out;

  // The right-hand sides do not involve phi+-, so RK4 collapses to Simpson:
  //   d phi-/d tau = -(3/2) q(tau),  d phi+/d tau = +(3/2) shift(-2tau) q(tau)
  // with q the minus-frame source above.
  Field q_left = source_in_minus_frame(U, V, eps, 0.0);
  double tau = 0.0;
  double next_snap = snap_tau > 0.0 ? snap_tau : dtau;
  const double stride = snap_tau > 0.0 ? snap_tau : dtau;
  while (tau < tau_end - 1e-12 * std::max(1.0, tau_end)) {
    const double h = std::min(dtau, tau_end - tau);
    Field q_mid = source_in_minus_frame(U, V, eps, tau + 0.5 * h);
    Field q_right = source_in_minus_frame(U, V, eps, tau + h);

    Field incr_minus = (h / 6.0) * (q_left + 4.0 * q_mid + q_right);
    phiM -= 1.5 * incr_minus;

    Field incr_plus = (h / 6.0) * (shift_field(q_left, -2.0 * tau) +
                                   4.0 * shift_field(q_mid, -2.0 * (tau + 0.5 * h)) +
                                   shift_field(q_right, -2.0 * (tau + h)));
    phiP += 1.5 * incr_plus;

    tau += h;
    q_left = q_right;
    if (tau >= next_snap - 1e-12 || tau >= tau_end - 1e-12 * std::max(1.0, tau_end)) {
      record(tau);
      while (next_snap <= tau + 1e-12) next_snap += stride;
    }
  }
  return out;
}

}  // namespace lw
