#include "longwave/multiplier.hpp"

#include <cmath>

#include "longwave/fft.hpp"

namespace lw {
namespace {

constexpr std::complex<double> I{0.0, 1.0};

double tanh_over_k(double k) {
  // -tanh(k)/k is smooth through k=0; the series keeps full precision
  // where the quotient would cancel.
  if (std::abs(k) < 1e-4) {
    const double k2 = k * k;
    return 1.0 - k2 / 3.0 + 2.0 * k2 * k2 / 15.0;
  }
  return std::tanh(k) / k;
}

}  // namespace

Multiplier builtin_symbol(const std::string& name) {
  if (name == "K0")
    return {name, [](double k) { return -I * std::tanh(k); }, Parity::odd_imaginary, false};
  if (name == "L")
    return {name, [](double k) { return std::complex<double>(-1.0 / tanh_over_k(k), 0.0); },
            Parity::even_real, false};
  if (name == "Linv")
    return {name, [](double k) { return std::complex<double>(-tanh_over_k(k), 0.0); },
            Parity::even_real, false};
  if (name == "D")
    return {name, [](double k) { return I * k; }, Parity::odd_imaginary, false};
  if (name == "Dinv")
    return {name,
            [](double k) { return k == 0.0 ? std::complex<double>(0.0) : 1.0 / (I * k); },
            Parity::odd_imaginary, true};
  if (name == "one_plus_K0sq")
    return {name,
            [](double k) {
              const double t = std::tanh(k);
              return std::complex<double>(1.0 - t * t, 0.0);
            },
            Parity::even_real, false};
  throw std::invalid_argument("unknown multiplier name: " + name);
}

Multiplier shift_symbol(double c) {
  return {"shift", [c](double k) { return std::exp(I * k * c); }, Parity::general, false};
}

Multiplier longwave_truncation(const std::string& name, int order) {
  if (name == "K0eps") {
    if (order != 1 && order != 3 && order != 5)
      throw std::invalid_argument("unsupported order for K0eps (want 1, 3, or 5)");
    return {name,
            [order](double k) {
              // -[(ik) + (1/3)(ik)^3 + (2/15)(ik)^5] = -i(k - k^3/3 + 2k^5/15)
              double p = k;
              if (order >= 3) p -= k * k * k / 3.0;
              if (order >= 5) p += 2.0 * std::pow(k, 5) / 15.0;
              return -I * p;
            },
            Parity::odd_imaginary, false};
  }
  const bool is_L = (name == "Leps");
  if (!is_L && name != "Linveps") throw std::invalid_argument("unknown truncation name: " + name);
  if (order != 0 && order != 2 && order != 4)
    throw std::invalid_argument("unsupported order for " + name + " (want 0, 2, or 4)");
  return {name,
          [is_L, order](double k) {
            // Leps:    -1 + (1/3)(ik)^2 + (1/45)(ik)^4 = -1 - k^2/3 + k^4/45
            // Linveps: -1 - (1/3)(ik)^2 - (2/15)(ik)^4 = -1 + k^2/3 - 2k^4/15
            double p = -1.0;
            const double k2 = k * k;
            if (order >= 2) p += (is_L ? -1.0 : 1.0) * k2 / 3.0;
            if (order >= 4) p += (is_L ? 1.0 / 45.0 : -2.0 / 15.0) * k2 * k2;
            return std::complex<double>(p, 0.0);
          },
          Parity::even_real, false};
}

Field apply(const Multiplier& op, const Field& f) {
  Spectrum s = fft(f);
  const std::size_t half = s.c.size();
  const std::size_t nyq = half - 1;

  if (op.requires_mean_zero && !f.mean_zero) {
    double peak = 0.0;
    for (double x : f.v) peak = std::max(peak, std::abs(x));
    if (std::abs(s.c[0]) > 1e-12 * std::max(1.0, peak))
      throw std::domain_error("zero mode present");
  }

  for (std::size_t j = 0; j < half; ++j) {
    const double k = f.grid.wavenumber(j);
    std::complex<double> sigma = op.symbol(k);
    if (!std::isfinite(sigma.real()) || !std::isfinite(sigma.imag()))
      throw std::domain_error("multiplier symbol non-finite at wavenumber " + std::to_string(k));
    const double mag = std::abs(sigma);
    if (op.parity == Parity::even_real && std::abs(sigma.imag()) > 1e-12 * (1.0 + mag))
      throw std::domain_error("even-real symbol has imaginary residue");
    if (op.parity == Parity::odd_imaginary && std::abs(sigma.real()) > 1e-12 * (1.0 + mag))
      throw std::domain_error("odd-imaginary symbol has real residue");
    // The Nyquist bin is shared between +/- n/2; the unique action consistent
    // with sampling a real signal is multiplication by Re(sigma) there.
    if (j == nyq && 2 * nyq == f.grid.n) sigma = std::complex<double>(sigma.real(), 0.0);
    s.c[j] *= sigma;
  }
  Field out = ifft(s);
  out.mean_zero = f.mean_zero || std::abs(op.symbol(0.0)) == 0.0;
  return out;
}

}  // namespace lw
