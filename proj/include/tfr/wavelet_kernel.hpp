// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tfreassign contributors

#pragma once

#include <optional>
#include <vector>

#include "tfr/extremal.hpp"

namespace tfr {

/// Auto-transform of the wavelet, W psi(a, b) = (psi, rho_(a,b) psi)
///   = sqrt(a) integral psi^(w) conj(psi^(a w)) exp(i b w) dw.
///
/// Extremal wavelets with c = 1 use the closed form
///   4 k^2 a^(kappa nu) a^(-i alpha) Gamma(2 kappa nu) / (kappa (1 + a) - i beta (1 - a) - i b)^(2 kappa nu).
/// Every other wavelet uses a table of rows spaced 1/32 octave in a, each row
/// the spectral integral sampled in b, interpolated linearly in log a and b
/// after removing the row's carrier. Outside the table the kernel is zero.
class WaveletKernel {
 public:
  enum class Method { closed_form, table };

  explicit WaveletKernel(const AnalyticWavelet& w, std::optional<Method> method = std::nullopt);

  Method method() const { return method_; }
  /// Requires a_ratio > 0.
  cplx operator()(double a_ratio, double b_offset) const;

 private:
  struct Row {
    double carrier = 0.0;  ///< removed frequency
    double db = 0.0;
    std::vector<cplx> values;  ///< demodulated samples at b = (i - n/2) db
  };
  cplx closed_form(double a, double b) const;
  cplx row_value(const Row& row, double b) const;

  AnalyticWavelet wavelet_;
  Method method_;
  double log_prefactor_ = 0.0;
  double log2_min_ = 0.0;
  std::vector<Row> rows_;
};

/// One-off evaluation; builds a kernel each call.
cplx wavelet_kernel(const AnalyticWavelet& w, double a_ratio, double b_offset);

}  // namespace tfr
