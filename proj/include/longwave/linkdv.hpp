#pragma once

#include "longwave/kdv.hpp"
#include "longwave/trajectory.hpp"

namespace lw {

// Driving term of the second-order corrections, in the comoving frame:
//   J- = 3 d(U phi-) + 4 U^2 U' + (7/3) U U''' + (11/3) U' U''
//        + (2/15) U''''' + (1/3) phi-''' - dTT_antiderivative(U)
// (the last term is the beta-antiderivative of the slow acceleration d_T^2 U,
// taken straight from its closed-form bracket) and J+ the mirror image with
// V, phi+.  Computed as the exact spatial derivative of j_antiderivative
// below, so quadratures vanish identically.
Field j_driving(Chirality chi, const Field& U_or_V, const Field& phi);

// Lambda with d_beta(Lambda) = J:
//   Lambda- = 3 U phi- + (1/3) phi-'' + (4/3) U^3 + (7/3) U U''
//             + (2/3) (U')^2 + (2/15) U''''
//             - [(1/36) U'''' + (3/4) U^3 + (1/2) U U'' + (1/8)(U')^2]
// (uses U U''' = d[U U'' - (U')^2/2], (11/3) U' U'' = d[(11/6)(U')^2], and
// the bracket integrates dTT_antiderivative term by term).
Field j_antiderivative(Chirality chi, const Field& U_or_V, const Field& phi);

// Corrections F (right) and G (left) solving the driven linearized KdV flow
//   -2 d_T F = (1/3) F''' + 3 d(UF) + J-,
//   +2 d_T G = (1/3) G''' + 3 d(VG) + J+,
// integrating-factor RK4 with the time-dependent coefficient and source
// interpolated from the background trajectories.
struct LinKdvResult {
  FieldTrajectory F, G;
};

LinKdvResult linkdv_evolve(const Field& F0, const Field& G0, const FieldTrajectory& U,
                           const FieldTrajectory& V, const FieldTrajectory& phiMinus,
                           const FieldTrajectory& phiPlus, double T_end, double dt,
                           double snap_stride = 0.0);

}  // namespace lw
