// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tfreassign contributors

#pragma once

#include <optional>
#include <string>

#include "tfr/signal.hpp"

namespace tfr {

/// Constants of the extremal wavelet spectra
///   h^(w) = k exp(i eps sgn w - i alpha sgn w log|w| - i beta w) exp(-(kappa/c)|w|^c) |w|^(kappa nu - 1/2).
/// k is not stored; it follows from the unit-norm condition.
struct ExtremalParams {
  double epsilon = 0.0;
  double alpha = 0.0;
  double beta = 0.0;  ///< seconds
  double kappa = 2.0;
  double nu = 1.0;
  double c = 1.0;

  double gamma() const { return c * kappa; }
  /// Throws std::invalid_argument unless kappa, nu > 0, kappa nu > 1/2, c >= 1.
  void validate() const;

  nlohmann::json to_json() const;
  /// Missing keys keep their defaults.
  static ExtremalParams from_json(const nlohmann::json& j);
};

/// k such that the analytic wavelet built from the spectrum has unit norm:
///   4 k^2 (1/c) (c/(2 kappa))^(2 kappa nu / c) Gamma(2 kappa nu / c) = 1.
double extremal_normalization(const ExtremalParams& p);

/// h^(w) as written above, with k from extremal_normalization. Zero at w = 0.
cplx extremal_spectrum(const ExtremalParams& p, double omega);

/// Frequency where |h^| peaks: ((kappa nu - 1/2) / kappa)^(1/c).
double extremal_peak_frequency(const ExtremalParams& p);

/// Constant of the structure equation a d_a log Wf = c0 - i alpha - a (beta - i gamma) d_t log Wf.
/// Exact for c = 1 with c0 = kappa nu; for other c the equation holds to first
/// order around a w = 1 with c0 = kappa (nu + c - 1).
double structure_constant(const ExtremalParams& p);

enum class WaveletFamily { extremal, morlet };

/// Analytic wavelet psi with unit norm, described by its spectrum on w > 0.
///
/// Extremal family: psi^(w) = 2 conj(h^(w)) for w > 0, so that the analysis
/// filter conj(psi^(a w)) = 2 h^(a w). This orientation makes the structure
/// equation hold with the signs of alpha and beta as written.
///
/// Morlet family: psi^(w) = k (exp(-(w - w0)^2 / 2) - exp(-(w^2 + w0^2) / 2)) for w > 0.
/// It is not an extremal and is provided as a reference analytic wavelet.
class AnalyticWavelet {
 public:
  static AnalyticWavelet extremal(const ExtremalParams& params);
  static AnalyticWavelet morlet(double omega0);

  WaveletFamily family() const { return family_; }
  bool is_extremal() const { return family_ == WaveletFamily::extremal; }
  /// Extremal parameters; nullopt for Morlet.
  const std::optional<ExtremalParams>& params() const { return params_; }
  double morlet_center() const { return omega0_; }

  /// psi^(w); zero for w <= 0.
  cplx spectrum(double omega) const;
  /// conj(psi^(w)), the factor applied to f^ in the transform.
  cplx analysis_filter(double omega) const { return std::conj(spectrum(omega)); }
  /// x d/dx log[sqrt(x) conj(psi^(x))] at x = a w, which equals a d_a of the
  /// transform integrand divided by the integrand. Extremal closed form:
  ///   kappa nu - i alpha - i beta x - kappa x^c.
  cplx scale_log_derivative(double x) const;

  /// Frequency of the spectral peak of |psi^|.
  double peak_frequency() const { return peak_; }
  /// Interval of x > 0 where |psi^(x)| >= rel * peak value.
  std::pair<double, double> spectral_support(double rel) const;

  /// integral_0^inf |psi^|^2 dw by quadrature (one for a correctly normalized wavelet).
  double norm_check() const;

  nlohmann::json descriptor() const;

 private:
  AnalyticWavelet() = default;

  WaveletFamily family_ = WaveletFamily::extremal;
  std::optional<ExtremalParams> params_;
  double log_k_ = 0.0;
  double omega0_ = 0.0;
  double morlet_k_ = 0.0;
  double peak_ = 1.0;
};

/// Admissibility constant C = integral_0^inf |psi^(w)| / w dw.
double admissibility_constant(const AnalyticWavelet& w);
/// C' = integral_0^inf |psi^(w)|^2 / w dw, the constant that makes the inverse transform exact.
double reconstruction_constant(const AnalyticWavelet& w);

}  // namespace tfr
