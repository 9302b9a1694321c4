// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tfreassign contributors

#pragma once

#include <string>
#include <vector>

#include "tfr/signal.hpp"
#include "tfr/window.hpp"

namespace tfr {

/// Sampling of the time-frequency plane. `time_step` must be a whole number of
/// sample periods; `omega_axis` is uniform in rad/s and may not exceed Nyquist.
struct StftGrid {
  double time_step = 0.0;
  std::vector<double> omega_axis;
};

/// One-sided FFT bin frequencies 0 .. pi*rate for a transform length of
/// next_pow2(window span).
std::vector<double> default_omega_axis(const Window& h, double rate);

/// Which function is used in place of h when building the transform.
/// `derivative` is h'(t) and `time_weighted` is t h(t); both feed the phase
/// gradient estimates.
enum class WindowVariant { window, derivative, time_weighted };

/// Sf(t, w) = exp(i w t / 2) * integral f(s) conj(h(s - t)) exp(-i w s) ds.
///
/// Columns sit on whole samples spaced by time_step and extend one window
/// radius beyond both ends of the signal (zero padding). Quadrature weight is
/// the sample period.
ComplexGrid stft(const ComplexSignal& f, const Window& h, const StftGrid& grid,
                 WindowVariant variant = WindowVariant::window);
ComplexGrid stft(const Signal& f, const Window& h, const StftGrid& grid,
                 WindowVariant variant = WindowVariant::window);

/// Sf at an arbitrary point, by direct summation.
cplx stft_at(const Signal& f, const Window& h, double t, double omega,
             WindowVariant variant = WindowVariant::window);

struct IstftResult {
  Signal signal;
  /// Largest deviation from one of the discrete frame operator's diagonal
  /// over the signal interval, plus any uncovered bandwidth fraction.
  double frame_defect = 0.0;
  bool adequate = true;
  std::string warning;
};

/// Inverse of stft for real signals:
///   f(t) = 1/(2 pi ||h||^2) sum_j sum_k Sf(t_j, w_k) exp(i w_k (t - t_j/2)) h(t - t_j) dt dw.
/// A one-sided (non-negative) omega axis is mirrored by Hermitian symmetry.
/// Too coarse a grid is reported in the result rather than thrown.
IstftResult istft(const ComplexGrid& grid, const Window& h);

/// sum |Sf|^2 dt dw / (2 pi ||h||^2), mirrored like istft. Approximates ||f||^2.
double stft_energy(const ComplexGrid& grid, const Window& h);

}  // namespace tfr
