#pragma once

#include <complex>
#include <vector>

#include "longwave/grid.hpp"

namespace lw {

// Half-complex spectrum of a real field: bins 0 .. n/2, normalized so that
// c[j] is the Fourier-series coefficient of e^{i k_j x} (forward transform
// divided by n).  Bin 0 and the Nyquist bin are real for data coming from a
// real field.
struct Spectrum {
  Grid grid;
  std::vector<std::complex<double>> c;

  Spectrum() = default;
  explicit Spectrum(const Grid& g) : grid(g), c(g.half_bins(), 0.0) {}
};

Spectrum fft(const Field& f);
Field ifft(const Spectrum& s);

}  // namespace lw
