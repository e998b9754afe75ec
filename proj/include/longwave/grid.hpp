#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace lw {

// Uniform periodic grid on [origin, origin + length).  Wavenumbers follow the
// usual FFT layout: integer indices {-n/2, ..., n/2 - 1} scaled by 2*pi/length,
// with the shared Nyquist bin counted as the negative frequency -n/2.
struct Grid {
  std::size_t n = 0;
  double length = 0.0;
  double origin = 0.0;

  double spacing() const { return length / static_cast<double>(n); }
  double point(std::size_t i) const { return origin + spacing() * static_cast<double>(i); }

  // Wavenumber of half-complex bin j, j in [0, n/2].  The Nyquist bin n/2
  // reports the negative frequency, matching the {-n/2, ..., n/2-1} layout.
  double wavenumber(std::size_t j) const {
    const double base = 6.283185307179586476925286766559005768 / length;  // 2*pi/length
    if (2 * j == n) return -base * static_cast<double>(n / 2);
    return base * static_cast<double>(j);
  }

  std::size_t half_bins() const { return n / 2 + 1; }

  bool operator==(const Grid&) const = default;
};

Grid make_grid(std::size_t n, double length, double origin);

// Real-valued samples on a Grid.  Plain value type: copying copies the data.
// The mean_zero flag is a trust tag set by code that has either verified or
// constructed a vanishing zero mode; the inverse-derivative operator uses it
// to skip its runtime check.
struct Field {
  Grid grid;
  std::vector<double> v;
  bool mean_zero = false;

  Field() = default;
  explicit Field(const Grid& g) : grid(g), v(g.n, 0.0) {}
  Field(const Grid& g, const std::function<double(double)>& fn) : grid(g), v(g.n) {
    for (std::size_t i = 0; i < g.n; ++i) v[i] = fn(g.point(i));
  }

  std::size_t size() const { return v.size(); }
  double& operator[](std::size_t i) { return v[i]; }
  double operator[](std::size_t i) const { return v[i]; }
};

// Elementwise arithmetic.  Sums and scalar multiples preserve band limits, so
// these are safe anywhere; genuine products of spectral data must go through
// multiply() in ops.hpp, which dealiases.
Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(double c, const Field& a);
Field& operator+=(Field& a, const Field& b);
Field& operator-=(Field& a, const Field& b);

inline void check_same_grid(const Field& a, const Field& b) {
  if (!(a.grid == b.grid)) throw std::invalid_argument("fields live on different grids");
}

}  // namespace lw
