#pragma once

// Spectral operations on periodic complex signals (FFTW backend).
//
// Transform normalization: the forward transform carries the 1/M factor,
//
//     X[k] = (1/M) sum_n x[n] e^{-2 pi i n k / M},
//     x[n] =       sum_k X[k] e^{+2 pi i n k / M},
//
// so Parseval reads (1/M) sum_n |x|^2 = sum_k |X|^2 and a pure tone has a
// unit-magnitude bin.  Under this convention a signal whose samples are
// e^{+i w t_n} occupies the bin labeled w, and time differentiation acts
// on bin labels as multiplication by (i w)^order.  For odd orders the
// Nyquist bin is zeroed (its derivative contribution has no real,
// Hermitian-consistent representative), which keeps d/dt real-valued on
// real signals and traceless.

#include <cstddef>

#include "fiberinfo/grid.hpp"

namespace fiberinfo {

// forward / inverse discrete Fourier transforms (see normalization above)
Signal dft(const Signal& x);
Signal idft(const Signal& X);

// Zero all bins with |w_label| > Wcut (time-domain in, time-domain out).
// Projection: idempotent, and commutes with both derivatives and decimation.
Signal band_filter(const Signal& x, double T, double Wcut);

// d^order/dt^order via bin multiplication by (i*w)^order; odd orders zero
// the Nyquist bin.
Signal spectral_derivative(const Signal& x, double T, int order);

// Restrict a fine-grid signal to the coarse grid by copying the bins with
// |w| <= W_coarse/2 (signed-mode map) and inverting on Md points.  Exact
// for signals already band-limited to the coarse bandwidth; otherwise it
// is the band-limited interpolant sampled at the coarse points.
Signal decimate(const Signal& x, const GridSpec& g);

// one-sided difference quotient (x[i+1]-x[i])/dt, periodic wrap at the end
Signal forward_diff(const Signal& x, double dt);

// mean power (1/T) integral |x|^2 dt = (1/M) sum |x[n]|^2
double avg_power(const Signal& x);

// rms bandwidth: W^2 = ||dx/dt||^2 / (P*T) with the spectral derivative
// (Nyquist excluded), so a tone at w0 reports |w0|.
double avg_bandwidth(const Signal& x, double T);

// traces of the derivative operators on an M-point grid (per window T):
// order 1 is identically zero (Nyquist zeroed), order 2 is -sum_k w_k^2.
double derivative_trace(std::size_t M, double T, int order);

}  // namespace fiberinfo
