#pragma once

#include "longwave/grid.hpp"
#include "longwave/trajectory.hpp"

namespace lw {

// Direction of travel in the lab frame.  A right-mover U(beta - tau, T) obeys
//   dU/dT = -(1/2)[(1/3) U''' + (3/2) (U^2)'],
// a left-mover V(beta + tau, T) the same with the opposite overall sign.
enum class Chirality { right, left };

// dW/dT for the stated chirality, dealiased.
Field kdv_rhs(const Field& W, Chirality chi);

// A sech^2 solitary wave: A sech^2( sqrt(3A)/2 (beta - center) ).  Under its
// KdV flow it translates with speed A/2 in the comoving frame.
Field soliton(double A, double center, Chirality chi, const Grid& g);

// Integrating-factor RK4: the Airy factor e^{+/- i k^3 T / 6} is applied
// exactly, RK4 handles the dealiased nonlinear remainder.  Snapshots are
// recorded every snap_stride time units (every accepted step if 0).
// Aborts with std::runtime_error if the L2 norm grows a hundredfold.
FieldTrajectory kdv_evolve(const Field& W0, Chirality chi, double T_end, double dt,
                           double snap_stride = 0.0);

// The closed form of d^2 W / dT^2 for a KdV solution:
//   d_beta[ (1/36) W^(5) + (9/4) W^2 W' + (1/2) W W''' + (3/4) W' W'' ]
// (same bracket for both chiralities; the two sign flips cancel).
Field dTT_closed_form(const Field& W, Chirality chi);

// The bracket itself — the spatial antiderivative of dTT_closed_form, needed
// wherever d_beta^{-1} d_T^2 W appears.  (Each bracket term integrates to
// zero over the period, so no constant ambiguity arises.)
Field dTT_antiderivative(const Field& W, Chirality chi);

}  // namespace lw
