#pragma once

#include "longwave/trajectory.hpp"

namespace lw {

// Counter-propagation products P-, P+ and their comoving representations
//   P-(beta,tau) = phi-(beta - tau, T),  P+(beta,tau) = phi+(beta + tau, T),
// solving d_tau P- + d_beta P- = -(3/2) d_beta(UV),
//         d_tau P+ - d_beta P+ = +(3/2) d_beta(UV),  P+-(.,0) = 0,
// where U, V are the given comoving KdV profiles and the product UV is formed
// in the lab frame.  All trajectory clocks run in the slow time T = eps^2 tau.
struct TransportResult {
  FieldTrajectory Pminus, Pplus, phiMinus, phiPlus;
};

// Duhamel integration in the comoving frames: the free shift semigroup is
// applied exactly (spectral phases), the shifted source is integrated by
// RK4-as-Simpson quadrature with step dtau.  Snapshots every snap_tau.
// Optional nonzero phi(.,0) seeds support the alternative initial-data
// convention for the corrections.
TransportResult transport_evolve(const FieldTrajectory& U, const FieldTrajectory& V, double eps,
                                 double tau_end, double dtau, double snap_tau,
                                 const Field* phiMinus0 = nullptr,
                                 const Field* phiPlus0 = nullptr);

}  // namespace lw
