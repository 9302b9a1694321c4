// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tfreassign contributors

#pragma once

#include <span>
#include <vector>

#include "tfr/signal.hpp"

namespace tfr {

enum class WindowKind { gaussian, custom };

/// Analysis window h(t) for the short-time Fourier transform.
///
/// The Gaussian window is h(t) = (1/sqrt(2 pi)) exp(-t^2 / (2 sigma^2)); with
/// sigma = 1 it is the normalized Gaussian of the Gabor transform. It is
/// truncated where it drops below 1e-12 of its peak.
///
/// Custom windows are given as samples centered on t = 0 and evaluated by
/// linear interpolation.
class Window {
 public:
  static Window gaussian(double sigma);
  static Window from_samples(std::vector<cplx> samples, double sample_rate);

  WindowKind kind() const { return kind_; }
  double sigma() const { return sigma_; }
  /// Samples and their rate for custom windows; empty for the Gaussian.
  std::span<const cplx> samples() const { return samples_; }
  double sample_rate() const { return sample_rate_; }

  cplx value(double t) const;
  cplx derivative(double t) const;

  /// Half-width outside of which the window is treated as zero.
  double support_radius() const { return support_radius_; }
  double norm_squared() const { return norm_squared_; }
  double norm() const;

  nlohmann::json descriptor() const;

 private:
  Window() = default;

  WindowKind kind_ = WindowKind::gaussian;
  double sigma_ = 1.0;
  double support_radius_ = 0.0;
  double norm_squared_ = 0.0;
  std::vector<cplx> samples_;
  std::vector<cplx> sample_derivs_;
  double sample_rate_ = 0.0;
};

/// Sh(dt, domega) = (h, rho_(dt, domega, 0) h), the transform of the window by itself.
///
/// Gaussian: closed form ||h||^2 exp(-dt^2 / (4 sigma^2) - domega^2 sigma^2 / 4),
/// real and positive. Custom windows are integrated directly on their samples.
cplx window_self_transform(const Window& h, double dt, double domega);

}  // namespace tfr
