#include "longwave/ops.hpp"

#include <cmath>
#include <stdexcept>

namespace lw {

Field deriv(const Field& f, int order) {
  if (order < 0) throw std::invalid_argument("derivative order must be non-negative");
  if (order == 0) return f;
  Spectrum s = fft(f);
  const std::size_t nyq = f.grid.n / 2;
  for (std::size_t j = 0; j < s.c.size(); ++j) {
    const double k = f.grid.wavenumber(j);
    const double kp = std::pow(k, order);
    // (ik)^order with the power of i kept exact so odd orders stay purely
    // imaginary and even orders purely real.
    std::complex<double> sigma;
    switch (order & 3) {
      case 0: sigma = {kp, 0.0}; break;
      case 1: sigma = {0.0, kp}; break;
      case 2: sigma = {-kp, 0.0}; break;
      default: sigma = {0.0, -kp}; break;
    }
    if (j == nyq && (order & 1)) sigma = 0.0;  // odd derivative annihilates Nyquist
    s.c[j] *= sigma;
  }
  Field out = ifft(s);
  out.mean_zero = true;
  return out;
}

Field antideriv(const Field& f) {
  Spectrum s = fft(f);
  if (!f.mean_zero) {
    double peak = 0.0;
    for (double x : f.v) peak = std::max(peak, std::abs(x));
    if (std::abs(s.c[0]) > 1e-12 * std::max(1.0, peak))
      throw std::domain_error("zero mode present");
  }
  s.c[0] = 0.0;
  const std::size_t nyq = f.grid.n / 2;
  for (std::size_t j = 1; j < s.c.size(); ++j) {
    if (j == nyq) {
      s.c[j] = 0.0;
      continue;
    }
    s.c[j] /= std::complex<double>(0.0, f.grid.wavenumber(j));
  }
  Field out = ifft(s);
  out.mean_zero = true;
  return out;
}

Field shift_field(const Field& f, double c) {
  Spectrum s = fft(f);
  const std::size_t nyq = f.grid.n / 2;
  for (std::size_t j = 0; j < s.c.size(); ++j) {
    const double k = f.grid.wavenumber(j);
    if (j == nyq)
      s.c[j] *= std::cos(k * c);
    else
      s.c[j] *= std::exp(std::complex<double>(0.0, k * c));
  }
  Field out = ifft(s);
  out.mean_zero = f.mean_zero;
  return out;
}

Field multiply(const Field& a, const Field& b) {
  check_same_grid(a, b);
  const Grid& g = a.grid;
  const Grid big{2 * g.n, g.length, g.origin};

  // Zero-pad both factors onto the doubled grid (splitting the shared Nyquist
  // coefficient across +/-), multiply there, and truncate back.  The doubled
  // grid holds the full quadratic bandwidth, so the retained band is exact.
  auto upsample = [&](const Field& f) {
    Spectrum s = fft(f);
    Spectrum sb(big);
    for (std::size_t j = 0; j + 1 < s.c.size(); ++j) sb.c[j] = s.c[j];
    sb.c[g.n / 2] = 0.5 * s.c[g.n / 2];
    return ifft(sb);
  };
  Field fa = upsample(a);
  Field fb = upsample(b);
  for (std::size_t i = 0; i < big.n; ++i) fa.v[i] *= fb.v[i];

  Spectrum sp = fft(fa);
  Spectrum out(g);
  for (std::size_t j = 0; j + 1 < out.c.size(); ++j) out.c[j] = sp.c[j];
  out.c[g.n / 2] = 0.0;  // band {-n/2..n/2-1} has no real Nyquist content
  return ifft(out);
}

Field divide_pointwise(const Field& a, const Field& b) {
  check_same_grid(a, b);
  Field r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r.v[i] /= b.v[i];
  r.mean_zero = false;
  return r;
}

double sobolev_norm(const Field& f, double s) {
  Spectrum sp = fft(f);
  const std::size_t nyq = f.grid.n / 2;
  double acc = 0.0;
  for (std::size_t j = 0; j < sp.c.size(); ++j) {
    const double k = f.grid.wavenumber(j);
    const double w = std::pow(1.0 + k * k, s);
    const double mag2 = std::norm(sp.c[j]);
    acc += (j == 0 || j == nyq) ? w * mag2 : 2.0 * w * mag2;
  }
  return std::sqrt(f.grid.length * acc);
}

double linf_norm(const Field& f) {
  double peak = 0.0;
  for (double x : f.v) peak = std::max(peak, std::abs(x));
  return peak;
}

double mean(const Field& f) {
  double acc = 0.0;
  for (double x : f.v) acc += x;
  return acc / static_cast<double>(f.grid.n);
}

Field resample(const Field& f, const Grid& target) {
  const Grid& g = f.grid;
  if (g.n == 0 || target.n == 0) throw std::invalid_argument("resample on an empty grid");
  if (std::abs(target.length - g.length) > 1e-9 * g.length)
    throw std::invalid_argument("resample requires grids with equal periods");
  const double delta = target.origin - g.origin;
  const std::size_t nyq = g.n / 2;

  if (target.n == g.n) {
    Field shifted = shift_field(f, delta);
    Field out;
    out.grid = target;
    out.v = std::move(shifted.v);
    out.mean_zero = f.mean_zero;
    return out;
  }

  Spectrum s = fft(f);
  if (target.n > g.n) {
    // Pad the spectrum.  The source Nyquist bin represents a pure cosine; on
    // the finer grid that mode is interior, so it splits into half the
    // (real) coefficient carried by the positive-frequency exponential.
    Spectrum big(target);
    for (std::size_t j = 0; j < nyq; ++j) {
      const double k = g.wavenumber(j);
      big.c[j] = s.c[j] * std::exp(std::complex<double>(0.0, k * delta));
    }
    const double knyq = -g.wavenumber(nyq);  // positive magnitude
    big.c[nyq] = 0.5 * s.c[nyq].real() * std::exp(std::complex<double>(0.0, knyq * delta));
    Field out = ifft(big);
    out.mean_zero = f.mean_zero;
    return out;
  }

  // Downsample: evaluate the interpolant mode sum at each coarse point, so the
  // result aliases exactly as pointwise sampling of the band-limited function.
  Field out;
  out.grid = target;
  out.v.resize(target.n);
  const double knyq = -g.wavenumber(nyq);
  for (std::size_t i = 0; i < target.n; ++i) {
    const double theta = target.point(i) - g.origin;
    double val = s.c[0].real();
    for (std::size_t j = 1; j < nyq; ++j) {
      const double k = g.wavenumber(j);
      val += 2.0 * (s.c[j] * std::exp(std::complex<double>(0.0, k * theta))).real();
    }
    val += s.c[nyq].real() * std::cos(knyq * theta);
    out.v[i] = val;
  }
  out.mean_zero = f.mean_zero;
  return out;
}

Field project_mean_zero(const Field& f) {
  Field r = f;
  const double m = mean(f);
  for (double& x : r.v) x -= m;
  r.mean_zero = true;
  return r;
}

Field tag_mean_zero(const Field& f) {
  const double m = std::abs(mean(f));
  if (m > 1e-12 * std::max(1.0, linf_norm(f)))
    throw std::domain_error("zero mode present");
  Field r = f;
  r.mean_zero = true;
  return r;
}

}  // namespace lw
