// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tfreassign contributors

#pragma once

#include <string>
#include <vector>

#include "tfr/extremal.hpp"
#include "tfr/signal.hpp"

namespace tfr {

inline constexpr int kDefaultVoices = 16;

/// a_j = a_min 2^(j / voices) for every a_j <= a_max.
std::vector<double> geometric_scales(double a_min, double a_max, int voices = kDefaultVoices);

/// Which quantity the transform returns: Wf, its time derivative, or a times
/// its scale derivative.
enum class CwtVariant { value, time_derivative, scale_derivative };

/// Wf(a, b) = sqrt(a) integral f^(w) conj(psi^(a w)) exp(i b w) dw, evaluated per
/// scale as sqrt(2 pi a) IFFT(FFT(f) conj(psi^(a w_k))) on the signal's own
/// (circular) frame. Rows follow `scales` (ascending), columns follow samples.
/// Scales whose wavelet spectrum is cut by the Nyquist limit, or not resolved
/// by the lowest frequency bin, are listed under "warnings" in the descriptor.
ComplexGrid cwt(const ComplexSignal& f, const AnalyticWavelet& w, const std::vector<double>& scales,
                CwtVariant variant = CwtVariant::value);
ComplexGrid cwt(const Signal& f, const AnalyticWavelet& w, const std::vector<double>& scales,
                CwtVariant variant = CwtVariant::value);

struct IcwtResult {
  Signal signal;
  /// Estimated relative L2 error from incomplete coverage of the scale axis.
  double residual_estimate = 0.0;
  std::string warning;
};

/// f = Re (1 / (pi C')) sum_j w_j / a_j integral Wf(a_j, b) rho_(a_j, b) psi db
/// with trapezoidal weights w_j in log a and C' = reconstruction_constant(w).
/// The grid must come from cwt on a geometric scale axis.
IcwtResult icwt(const ComplexGrid& grid, const AnalyticWavelet& w);

}  // namespace tfr
