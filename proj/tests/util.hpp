#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "longwave/grid.hpp"
#include "longwave/ops.hpp"

namespace testutil {

// Least-squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t m = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double dm = static_cast<double>(m);
  return (dm * sxy - sx * sy) / (dm * sxx - sx * sx);
}

// Band-limited pseudo-random field: modes 1..n/8 with exponentially decaying
// amplitudes and seeded phases.  Mean-zero by construction.
inline lw::Field random_field(const lw::Grid& g, unsigned seed, double amplitude = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(0.0, 6.283185307179586);
  lw::Field f(g);
  const std::size_t kmax = g.n / 8;
  for (std::size_t m = 1; m <= kmax; ++m) {
    const double a = amplitude * std::exp(-0.35 * static_cast<double>(m));
    const double ph = phase(rng);
    const double k = 6.283185307179586 * static_cast<double>(m) / g.length;
    for (std::size_t i = 0; i < g.n; ++i) f.v[i] += a * std::cos(k * g.point(i) + ph);
  }
  f.mean_zero = true;
  return f;
}

inline double rel_diff(const lw::Field& a, const lw::Field& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num = std::max(num, std::abs(a.v[i] - b.v[i]));
    den = std::max(den, std::abs(a.v[i]));
  }
  return num / std::max(den, 1e-300);
}

}  // namespace testutil
