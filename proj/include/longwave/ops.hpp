#pragma once

#include "longwave/fft.hpp"
#include "longwave/grid.hpp"

namespace lw {

// Spectral derivative of the given order.  Odd orders annihilate the Nyquist
// bin (the grid-consistent action of an odd-imaginary symbol there).
Field deriv(const Field& f, int order);

// Spatial antiderivative with zero mean: inverse of deriv(.,1) on mean-zero
// fields.  Throws std::domain_error("zero mode present") otherwise.
Field antideriv(const Field& f);

// Translation f(.) -> f(. + c) computed spectrally (exact for band-limited
// data up to the Nyquist bin, which is damped by cos(k_N c)).
Field shift_field(const Field& f, double c);

// Dealiased pointwise product: both factors are zero-padded to a 2n grid,
// multiplied there, and the result truncated back.  Exact projection of the
// true product onto the retained band for band-limited inputs.
Field multiply(const Field& a, const Field& b);

// Pointwise quotient a/b on grid samples (no dealiasing; use only where the
// mathematics is genuinely pointwise, e.g. dividing by 1 + L z).
Field divide_pointwise(const Field& a, const Field& b);

// Sobolev norm: (length * sum_k (1 + k^2)^s |c_k|^2)^{1/2} over the full
// Hermitian-extended bin set, normalized so a unit-amplitude pure mode gives
// the continuum value of the integral.
double sobolev_norm(const Field& f, double s);

double linf_norm(const Field& f);
double mean(const Field& f);

// Evaluate the band-limited interpolant of f at the points of target, a grid
// with the same period (relative mismatch above 1e-9 throws) but possibly a
// different origin and point count.  Equal-size resampling is the exact
// spectral translation (Nyquist damped by cos(k_N d) for an origin offset d);
// upsampling pads the spectrum, splitting the Nyquist cosine into a genuine
// interior mode; downsampling evaluates the mode sum directly so the coarse
// samples alias exactly as true pointwise sampling would.
Field resample(const Field& f, const Grid& target);

// Subtract the mean and set the mean_zero tag.
Field project_mean_zero(const Field& f);

// Verify the zero mode vanishes (|c_0| <= 1e-12 * max(1, max|v|)) and return
// the field tagged; throws std::domain_error otherwise.
Field tag_mean_zero(const Field& f);

}  // namespace lw
