#pragma once

#include "longwave/grid.hpp"

namespace lw {

// Output of the initial-data split: prescribed surface and velocity profiles
// are decomposed into counter-propagating first-order parts plus the
// second-order correction seeds that absorb the rest of the profile at the
// corrections' accuracy order.
struct InitialDataMap {
  Field Theta_y, Theta_u;  // the prescribed profiles (mean-zero, tagged)
  Field U0, V0;            // first-order right/left movers
  Field F0, G0;            // second-order correction seeds
  Field X1, X2;            // antiderivatives -int_0^beta of (U0+V0), (F0+G0)
};

// Split the prescribed surface profile Theta_y and horizontal-velocity
// profile Theta_u (both on the long-wave beta-grid, both mean-zero) into the
// modulation hierarchy's initial data:
//   U0 = (Theta_y + Theta_u)/2,  V0 = (Theta_y - Theta_u)/2,
//   F0 = (h_y + h_u)/2,          G0 = (h_y - h_u)/2,
// where h_y and h_u subtract from X1 * Theta' the quadratic and dispersive
// dressings that the assembled frame adds back at fourth order.  X1 vanishes
// at beta = 0 (it is an antiderivative pinned there, not mean-zero), and X2
// is the corresponding antiderivative of -(F0 + G0).  The transport
// corrections start from zero under this convention.
// Throws std::domain_error if either profile carries a zero mode.
InitialDataMap split_initial_data(const Field& Theta_y, const Field& Theta_u);

}  // namespace lw
