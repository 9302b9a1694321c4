// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tfreassign contributors

#include "tfr/extremal.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace tfr {

void ExtremalParams::validate() const {
  for (double v : {epsilon, alpha, beta, kappa, nu, c}) {
    if (!std::isfinite(v)) throw std::invalid_argument("extremal parameters must be finite");
  }
  if (!(kappa > 0.0)) throw std::invalid_argument("extremal wavelet needs kappa > 0");
  if (!(nu > 0.0)) throw std::invalid_argument("extremal wavelet needs nu > 0");
  if (!(kappa * nu > 0.5)) {
    throw std::invalid_argument("extremal wavelet is not admissible: kappa * nu must exceed 1/2");
  }
  if (!(c >= 1.0)) throw std::invalid_argument("extremal exponent c must be at least 1");
}

nlohmann::json ExtremalParams::to_json() const {
  return {{"epsilon", epsilon}, {"alpha", alpha}, {"beta", beta}, {"kappa", kappa}, {"nu", nu}, {"c", c}};
}

ExtremalParams ExtremalParams::from_json(const nlohmann::json& j) {
  ExtremalParams p;
  p.epsilon = j.value("epsilon", p.epsilon);
  p.alpha = j.value("alpha", p.alpha);
  p.beta = j.value("beta", p.beta);
  p.kappa = j.value("kappa", p.kappa);
  p.nu = j.value("nu", p.nu);
  p.c = j.value("c", p.c);
  return p;
}

namespace {

/// log of integral_0^inf w^(p-1) exp(-b w^c) dw = (1/c) b^(-p/c) Gamma(p/c).
double log_gamma_integral(double p, double b, double c) {
  return -std::log(c) - (p / c) * std::log(b) + std::lgamma(p / c);
}

double log_normalization(const ExtremalParams& p) {
  // 4 k^2 I(2 kappa nu, 2 kappa / c) = 1
  return -0.5 * (std::log(4.0) + log_gamma_integral(2.0 * p.kappa * p.nu, 2.0 * p.kappa / p.c, p.c));
}

}  // namespace

double extremal_normalization(const ExtremalParams& p) {
  p.validate();
  return std::exp(log_normalization(p));
}

cplx extremal_spectrum(const ExtremalParams& p, double omega) {
  p.validate();
  if (omega == 0.0) return {};
  const double sgn = omega > 0.0 ? 1.0 : -1.0;
  const double w = std::abs(omega);
  const double log_mag = log_normalization(p) - (p.kappa / p.c) * std::pow(w, p.c) + (p.kappa * p.nu - 0.5) * std::log(w);
  const double phase = p.epsilon * sgn - p.alpha * sgn * std::log(w) - p.beta * omega;
  return std::polar(std::exp(log_mag), phase);
}

double extremal_peak_frequency(const ExtremalParams& p) {
  p.validate();
  return std::pow((p.kappa * p.nu - 0.5) / p.kappa, 1.0 / p.c);
}

double structure_constant(const ExtremalParams& p) { return p.kappa * (p.nu + p.c - 1.0); }

AnalyticWavelet AnalyticWavelet::extremal(const ExtremalParams& params) {
  params.validate();
  AnalyticWavelet w;
  w.family_ = WaveletFamily::extremal;
  w.params_ = params;
  w.log_k_ = log_normalization(params);
  w.peak_ = extremal_peak_frequency(params);
  return w;
}

namespace {

double morlet_log_shape(double omega0, double x) {
  return -0.5 * (x - omega0) * (x - omega0) + std::log(-std::expm1(-x * omega0));
}

/// d/dx log of the Morlet spectrum.
double morlet_log_slope(double omega0, double x) { return -(x - omega0) + omega0 / std::expm1(x * omega0); }

}  // namespace

AnalyticWavelet AnalyticWavelet::morlet(double omega0) {
  if (!(omega0 > 0.0) || !std::isfinite(omega0)) throw std::invalid_argument("Morlet center frequency must be positive");
  AnalyticWavelet w;
  w.family_ = WaveletFamily::morlet;
  w.omega0_ = omega0;
  w.morlet_k_ = 1.0;
  double lo = 1e-9, hi = omega0 + 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (morlet_log_slope(omega0, mid) > 0.0 ? lo : hi) = mid;
  }
  w.peak_ = 0.5 * (lo + hi);
  auto sq = [&](double x) { return x > 0.0 ? std::exp(2.0 * morlet_log_shape(omega0, x)) : 0.0; };
  const double energy =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(sq, 0.0, omega0 + 40.0, 15, 1e-14);
  w.morlet_k_ = 1.0 / std::sqrt(energy);
  return w;
}

cplx AnalyticWavelet::spectrum(double omega) const {
  if (!(omega > 0.0)) return {};
  if (family_ == WaveletFamily::morlet) return {morlet_k_ * std::exp(morlet_log_shape(omega0_, omega)), 0.0};
  const ExtremalParams& p = *params_;
  const double log_mag =
      std::log(2.0) + log_k_ - (p.kappa / p.c) * std::pow(omega, p.c) + (p.kappa * p.nu - 0.5) * std::log(omega);
  // conj of exp(i eps - i alpha log w - i beta w)
  const double phase = -(p.epsilon - p.alpha * std::log(omega) - p.beta * omega);
  return std::polar(std::exp(log_mag), phase);
}

cplx AnalyticWavelet::scale_log_derivative(double x) const {
  if (!(x > 0.0)) throw std::invalid_argument("scale log-derivative needs a positive argument");
  if (family_ == WaveletFamily::morlet) return {0.5 + x * morlet_log_slope(omega0_, x), 0.0};
  const ExtremalParams& p = *params_;
  return {p.kappa * p.nu - p.kappa * std::pow(x, p.c), -p.alpha - p.beta * x};
}

std::pair<double, double> AnalyticWavelet::spectral_support(double rel) const {
  if (!(rel > 0.0 && rel < 1.0)) throw std::invalid_argument("relative level must be in (0, 1)");
  auto log_abs = [&](double x) {
    if (family_ == WaveletFamily::morlet) return morlet_log_shape(omega0_, x);
    const ExtremalParams& p = *params_;
    return -(p.kappa / p.c) * std::pow(x, p.c) + (p.kappa * p.nu - 0.5) * std::log(x);
  };
  const double target = log_abs(peak_) + std::log(rel);
  auto solve = [&](double inside, double outside) {
    // Bisection in log x between a point above and a point below the level.
    double a = std::log(inside), b = std::log(outside);
    for (int i = 0; i < 200; ++i) {
      const double m = 0.5 * (a + b);
      (log_abs(std::exp(m)) >= target ? a : b) = m;
    }
    return std::exp(0.5 * (a + b));
  };
  double lo = peak_, hi = peak_;
  while (log_abs(lo) >= target && lo > 1e-300) lo *= 0.5;
  while (log_abs(hi) >= target) hi *= 2.0;
  return {solve(peak_, lo), solve(peak_, hi)};
}

double AnalyticWavelet::norm_check() const {
  const double hi = spectral_support(1e-20).second;
  auto sq = [&](double x) { return std::norm(spectrum(x)); };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(sq, 0.0, hi, 20, 1e-14);
}

nlohmann::json AnalyticWavelet::descriptor() const {
  nlohmann::json j;
  if (family_ == WaveletFamily::morlet) {
    j["family"] = "morlet";
    j["omega0"] = omega0_;
    j["k"] = morlet_k_;
  } else {
    j["family"] = "extremal";
    j["params"] = params_->to_json();
    j["k"] = std::exp(log_k_);
    j["gamma"] = params_->gamma();
    j["structure_constant"] = structure_constant(*params_);
    j["sign_convention"] = "psi^(w) = 2 conj(h^(w)) for w > 0; analysis filter 2 h^(a w)";
  }
  j["peak_frequency"] = peak_;
  j["fourier_convention"] = "unitary, f^(w) = (2 pi)^(-1/2) integral f(t) exp(-i w t) dt";
  return j;
}

double admissibility_constant(const AnalyticWavelet& w) {
  if (w.is_extremal()) {
    const ExtremalParams& p = *w.params();
    const double log_k = std::log(extremal_normalization(p));
    // 2 k I(kappa nu - 1/2, kappa / c)
    return 2.0 * std::exp(log_k + log_gamma_integral(p.kappa * p.nu - 0.5, p.kappa / p.c, p.c));
  }
  const double hi = w.spectral_support(1e-20).second;
  auto g = [&](double x) { return x > 0.0 ? std::abs(w.spectrum(x)) / x : 0.0; };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, 0.0, hi, 20, 1e-14);
}

double reconstruction_constant(const AnalyticWavelet& w) {
  if (w.is_extremal()) {
    const ExtremalParams& p = *w.params();
    const double log_k = std::log(extremal_normalization(p));
    // 4 k^2 I(2 kappa nu - 1, 2 kappa / c)
    return 4.0 * std::exp(2.0 * log_k + log_gamma_integral(2.0 * p.kappa * p.nu - 1.0, 2.0 * p.kappa / p.c, p.c));
  }
  const double hi = w.spectral_support(1e-20).second;
  auto g = [&](double x) { return x > 0.0 ? std::norm(w.spectrum(x)) / x : 0.0; };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, 0.0, hi, 20, 1e-14);
}

}  // namespace tfr
