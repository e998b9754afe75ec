#pragma once

#include "longwave/trajectory.hpp"

namespace lw {

// Third-order wave correction: solves
//   d_tau^2 W3 - d_beta^2 W3 = d_beta[Gamma],
//   Gamma = (9/4)(U+V) d_beta(UV) + (1/2) d_beta^3(UV) - J^s,
//   J^s = d_beta[ U(3G + 3phi+ + 4V^2 + (7/3)V'') + V(3F + 3phi- + 4U^2
//                 + (7/3)U'') + 4 U' V' ],
// with everything assembled in the lab frame (right-movers shifted by -tau,
// left-movers by +tau) and W3(.,0) = d_tau W3(.,0) = 0.
//
// Method: the per-mode d'Alembert-Duhamel kernel sin(k(tau-sigma))/k (limit
// tau-sigma at k=0) applied to g = d_beta Gamma.  Writing g^ = ik Gamma^, the
// solution and its derivatives come from two running integrals
//   C(k,tau) = int_0^tau cos(k sigma) Gamma^(k,sigma) dsigma,
//   S(k,tau) = int_0^tau sin(k sigma) Gamma^(k,sigma) dsigma,
// accumulated by composite Simpson:
//   W3^      = i [ sin(k tau) C - cos(k tau) S ]
//   (dW3)^   = ik [ cos(k tau) C + sin(k tau) S ]
//   anti^    =     cos(k tau) C + sin(k tau) S
// where "anti" is the spatial antiderivative of d_tau W3 with its k=0 mode
// kept (it accumulates the mean of Gamma, mirroring the whole-line solution);
// d_tau W3 = d_beta(anti) holds exactly, and d_tau(anti) = d_beta W3 + Gamma.
struct Wave3Result {
  FieldTrajectory W3, W3dot, W3dotAnti;
};

Wave3Result w3_evolve(const FieldTrajectory& U, const FieldTrajectory& V,
                      const FieldTrajectory& F, const FieldTrajectory& G,
                      const FieldTrajectory& phiMinus, const FieldTrajectory& phiPlus,
                      double eps, double tau_end, double dtau, double snap_tau);

// The lab-frame driving profile Gamma at slow time T = eps^2 tau (exposed for
// the closure assembly, which reuses it when differentiating the frame).
Field wave3_gamma(const Field& U, const Field& V, const Field& F, const Field& G,
                  const Field& phiMinus, const Field& phiPlus, double tau);

}  // namespace lw
