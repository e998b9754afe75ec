#include "longwave/wave3.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "longwave/fft.hpp"
#include "longwave/ops.hpp"

namespace lw {

Field wave3_gamma(const Field& U, const Field& V, const Field& F, const Field& G,
                  const Field& phiMinus, const Field& phiPlus, double tau) {
  // Comoving bundles 3F + 3phi- + 4U^2 + (7/3)U'' (right) and the V mirror,
  // then everything to the lab frame: right-movers evaluated at beta - tau
  // (shift by -tau), left-movers at beta + tau.
  Field aU = 3.0 * F + 3.0 * phiMinus + 4.0 * multiply(U, U) + (7.0 / 3.0) * deriv(U, 2);
  Field aV = 3.0 * G + 3.0 * phiPlus + 4.0 * multiply(V, V) + (7.0 / 3.0) * deriv(V, 2);

  Field Ul = shift_field(U, -tau);
  Field Vl = shift_field(V, tau);
  Field aUl = shift_field(aU, -tau);
  Field aVl = shift_field(aV, tau);

  Field js_anti = multiply(Ul, aVl) + multiply(Vl, aUl) +
                  4.0 * multiply(deriv(Ul, 1), deriv(Vl, 1));

  Field uv = multiply(Ul, Vl);
  Field gamma = 2.25 * multiply(Ul + Vl, deriv(uv, 1));
  gamma += 0.5 * deriv(uv, 3);
  gamma -= deriv(js_anti, 1);
  return gamma;
}

Wave3Result w3_evolve(const FieldTrajectory& U, const FieldTrajectory& V,
                      const FieldTrajectory& F, const FieldTrajectory& G,
                      const FieldTrajectory& phiMinus, const FieldTrajectory& phiPlus,
                      double eps, double tau_end, double dtau, double snap_tau) {
  if (!(dtau > 0.0) || !(tau_end >= 0.0)) throw std::invalid_argument("need dtau > 0, tau_end >= 0");
  const Grid& g = U.fields.front().grid;
  const std::size_t half = g.half_bins();

  auto gamma_at = [&](double tau) {
    const double T = eps * eps * tau;
    return fft(wave3_gamma(U.at(T), V.at(T), F.at(T), G.at(T), phiMinus.at(T), phiPlus.at(T),
                           tau));
  };

  // Running Simpson accumulators C = int cos(k s) Gamma^, S = int sin(k s) Gamma^.
  std::vector<std::complex<double>> C(half, 0.0), S(half, 0.0);

  Wave3Result out;
  auto record = [&](double tau) {
    const double T = eps * eps * tau;
    Spectrum w3(g), w3dot(g), anti(g);
    for (std::size_t j = 0; j < half; ++j) {
      const double k = g.wavenumber(j);
      const double cs = std::cos(k * tau), sn = std::sin(k * tau);
      const std::complex<double> mix = cs * C[j] + sn * S[j];
      w3.c[j] = std::complex<double>(0.0, 1.0) * (sn * C[j] - cs * S[j]);
      w3dot.c[j] = std::complex<double>(0.0, k) * mix;
      anti.c[j] = mix;
    }
    out.W3.push(T, ifft(w3));
    out.W3dot.push(T, ifft(w3dot));
    out.W3dotAnti.push(T, ifft(anti));
  };

  record(0.0);
  if (tau_end <= 0.0) return out;

  Spectrum gam_left = gamma_at(0.0);
  double tau = 0.0;
  const double stride = snap_tau > 0.0 ? snap_tau : dtau;
  double next_snap = stride;
  while (tau < tau_end - 1e-12 * std::max(1.0, tau_end)) {
    const double h = std::min(dtau, tau_end - tau);
    Spectrum gam_mid = gamma_at(tau + 0.5 * h);
    Spectrum gam_right = gamma_at(tau + h);
    for (std::size_t j = 0; j < half; ++j) {
      const double k = g.wavenumber(j);
      const double s0 = tau, s1 = tau + 0.5 * h, s2 = tau + h;
      C[j] += (h / 6.0) * (std::cos(k * s0) * gam_left.c[j] +
                           4.0 * std::cos(k * s1) * gam_mid.c[j] +
                           std::cos(k * s2) * gam_right.c[j]);
      S[j] += (h / 6.0) * (std::sin(k * s0) * gam_left.c[j] +
                           4.0 * std::sin(k * s1) * gam_mid.c[j] +
                           std::sin(k * s2) * gam_right.c[j]);
    }
    tau += h;
    gam_left = gam_right;
    if (tau >= next_snap - 1e-12 || tau >= tau_end - 1e-12 * std::max(1.0, tau_end)) {
      record(tau);
      while (next_snap <= tau + 1e-12) next_snap += stride;
    }
  }
  return out;
}

}  // namespace lw
