#pragma once

#include <complex>
#include <functional>
#include <string>

#include "longwave/grid.hpp"

namespace lw {

// Symmetry class of a Fourier multiplier symbol, used to sanity-check symbol
// values and to pick the grid-consistent action on the shared Nyquist bin.
enum class Parity {
  even_real,       // sigma(-k) = sigma(k), real    (L, Linv, 1+K0^2)
  odd_imaginary,   // sigma(-k) = -sigma(k), imag   (K0, D, Dinv)
  general,         // only sigma(-k) = conj(sigma(k)) required (shift)
};

// A diagonal operator in Fourier space: (Mf)^(k) = sigma(k) f^(k).
struct Multiplier {
  std::string name;
  std::function<std::complex<double>(double)> symbol;
  Parity parity = Parity::general;
  // When true, apply() demands a vanishing zero mode (checked dynamically
  // unless the field carries the mean_zero tag).
  bool requires_mean_zero = false;
};

// Named symbols of the water-wave problem:
//   K0  |-> -i tanh(k)     (velocity-to-surface Dirichlet-Neumann factor)
//   L   |-> -k/tanh(k), value -1 at k=0
//   Linv|-> -tanh(k)/k, value -1 at k=0
//   D   |-> ik
//   Dinv|-> 1/(ik), zero mode mapped to 0 (mean-zero fields only)
//   one_plus_K0sq |-> 1 - tanh^2(k)
Multiplier builtin_symbol(const std::string& name);

// Translation f(.) -> f(. + c): symbol e^{ikc}.
Multiplier shift_symbol(double c);

// Maclaurin truncations of the long-wave expansions:
//   K0eps:   -[(ik) + (1/3)(ik)^3 + (2/15)(ik)^5]   orders 1, 3, 5
//   Leps:    -1 + (1/3)(ik)^2 + (1/45)(ik)^4        orders 0, 2, 4
//   Linveps: -1 - (1/3)(ik)^2 - (2/15)(ik)^4        orders 0, 2, 4
Multiplier longwave_truncation(const std::string& name, int order);

// Apply a multiplier to a real field.  Throws std::domain_error when the
// symbol is non-finite at a grid wavenumber or when a mean-zero-only operator
// meets a field with a significant zero mode.
Field apply(const Multiplier& op, const Field& f);

}  // namespace lw
