#include "longwave/linkdv.hpp"

#include <cmath>
#include <complex>

#include "longwave/fft.hpp"
#include "longwave/ops.hpp"

namespace lw {

Field j_antiderivative(Chirality chi, const Field& W, const Field& phi) {
  // 3 W phi + (1/3) phi'' + (4/3) W^3 + (7/3) W W'' + (2/3)(W')^2
  // + (2/15) W'''' - [(1/36) W'''' + (3/4) W^3 + (1/2) W W'' + (1/8)(W')^2].
  // The trailing bracket is the beta-antiderivative of dTT_antiderivative(W):
  // differentiating it once recovers the slow-acceleration term of the
  // driving, and differentiating twice recovers d_T^2 W itself.
  (void)chi;  // the slow-acceleration bracket is the same for both movers
  Field w1 = deriv(W, 1);
  Field w2 = deriv(W, 2);
  Field r = 3.0 * multiply(W, phi);
  r += (1.0 / 3.0) * deriv(phi, 2);
  r += (4.0 / 3.0) * multiply(multiply(W, W), W);
  r += (7.0 / 3.0) * multiply(W, w2);
  r += (2.0 / 3.0) * multiply(w1, w1);
  r += (2.0 / 15.0) * deriv(W, 4);
  r -= (1.0 / 36.0) * deriv(W, 4) + 0.75 * multiply(multiply(W, W), W) +
       0.5 * multiply(W, w2) + 0.125 * multiply(w1, w1);
  return r;
}

Field j_driving(Chirality chi, const Field& W, const Field& phi) {
  return deriv(j_antiderivative(chi, W, phi), 1);
}

LinKdvResult linkdv_evolve(const Field& F0, const Field& G0, const FieldTrajectory& U,
                           const FieldTrajectory& V, const FieldTrajectory& phiMinus,
                           const FieldTrajectory& phiPlus, double T_end, double dt,
                           double snap_stride) {
  if (!(dt > 0.0) || !(T_end >= 0.0)) throw std::invalid_argument("need dt > 0, T_end >= 0");
  const Grid& g = F0.grid;
  const std::size_t half = g.half_bins();
  const std::size_t nyq = g.n / 2;

  // One chirality at a time:  dX/dT = L X + N(X, T) with
  //   F:  L^ = +i k^3/6,  N = -(3/2) d(U F) - (1/2) J-
  //   G:  L^ = -i k^3/6,  N = +(3/2) d(V G) + (1/2) J+
  struct Side {
    Chirality chi;
    double airy_sign;
    double coeff;  // sign of the transported-coefficient and source terms
    const FieldTrajectory* bg;
    const FieldTrajectory* phi;
    Spectrum s;
    FieldTrajectory out;
  };
  Side sides[2] = {
      {Chirality::right, 1.0, -1.0, &U, &phiMinus, fft(F0), {}},
      {Chirality::left, -1.0, 1.0, &V, &phiPlus, fft(G0), {}},
  };

  const double stride = snap_stride > 0.0 ? snap_stride : dt;
  for (Side& side : sides) side.out.push(0.0, ifft(side.s));

  const double norm0 =
      std::max({sobolev_norm(F0, 0.0), sobolev_norm(G0, 0.0), 1e-9});

  double T = 0.0;
  double next_snap = stride;
  std::vector<std::complex<double>> e_half(half), e_full(half);
  while (T < T_end - 1e-14 * std::max(1.0, T_end)) {
    const double h = std::min(dt, T_end - T);

    for (Side& side : sides) {
      for (std::size_t j = 0; j < half; ++j) {
        const double k = g.wavenumber(j);
        const double phase = side.airy_sign * k * k * k / 6.0;
        e_half[j] = std::exp(std::complex<double>(0.0, phase * h / 2.0));
        e_full[j] = std::exp(std::complex<double>(0.0, phase * h));
      }

      // Background and source at the three stage times.
      Field bg0 = side.bg->at(T), bg1 = side.bg->at(T + 0.5 * h), bg2 = side.bg->at(T + h);
      Field j0 = j_driving(side.chi, bg0, side.phi->at(T));
      Field j1 = j_driving(side.chi, bg1, side.phi->at(T + 0.5 * h));
      Field j2 = j_driving(side.chi, bg2, side.phi->at(T + h));

      auto nonlinear = [&](const Spectrum& x, const Field& bg, const Field& jsrc) {
        Field xf = ifft(x);
        Field n = (1.5 * side.coeff) * deriv(multiply(bg, xf), 1);
        n += (0.5 * side.coeff) * jsrc;
        Spectrum ns = fft(n);
        ns.c[nyq] = 0.0;
        return ns;
      };

      Spectrum& s = side.s;
      Spectrum n1 = nonlinear(s, bg0, j0);
      Spectrum stage(g);
      for (std::size_t j = 0; j < half; ++j)
        stage.c[j] = e_half[j] * (s.c[j] + 0.5 * h * n1.c[j]);
      Spectrum n2 = nonlinear(stage, bg1, j1);
      for (std::size_t j = 0; j < half; ++j)
        stage.c[j] = e_half[j] * s.c[j] + 0.5 * h * n2.c[j];
      Spectrum n3 = nonlinear(stage, bg1, j1);
      for (std::size_t j = 0; j < half; ++j)
        stage.c[j] = e_full[j] * s.c[j] + h * e_half[j] * n3.c[j];
      Spectrum n4 = nonlinear(stage, bg2, j2);
      for (std::size_t j = 0; j < half; ++j)
        s.c[j] = e_full[j] * s.c[j] +
                 (h / 6.0) * (e_full[j] * n1.c[j] + 2.0 * e_half[j] * (n2.c[j] + n3.c[j]) +
                              n4.c[j]);
    }
    T += h;

    const Field Fnow = ifft(sides[0].s), Gnow = ifft(sides[1].s);
    const double nrm = std::max(sobolev_norm(Fnow, 0.0), sobolev_norm(Gnow, 0.0));
    if (!std::isfinite(nrm) || nrm > 100.0 * std::max(norm0, 1.0))
      throw std::runtime_error("linkdv_evolve: blow-up detected at T=" + std::to_string(T));
    if (T >= next_snap - 1e-12 || T >= T_end - 1e-14 * std::max(1.0, T_end)) {
      sides[0].out.push(T, Fnow);
      sides[1].out.push(T, Gnow);
      while (next_snap <= T + 1e-12) next_snap += stride;
    }
  }
  return {std::move(sides[0].out), std::move(sides[1].out)};
}

}  // namespace lw
