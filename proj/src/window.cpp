// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tfreassign contributors

#include "tfr/window.hpp"

#include <cmath>
#include <numbers>

namespace tfr {

namespace {
constexpr double kGaussianTruncation = 1e-12;
}

Window Window::gaussian(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("Gaussian window width must be positive");
  Window w;
  w.kind_ = WindowKind::gaussian;
  w.sigma_ = sigma;
  w.support_radius_ = sigma * std::sqrt(-2.0 * std::log(kGaussianTruncation));
  // (1/(2 pi)) * sigma * sqrt(pi)
  w.norm_squared_ = sigma * std::sqrt(std::numbers::pi) / (2.0 * std::numbers::pi);
  return w;
}

Window Window::from_samples(std::vector<cplx> samples, double sample_rate) {
  if (samples.size() < 2) throw std::invalid_argument("custom window needs at least two samples");
  if (!(sample_rate > 0.0)) throw std::invalid_argument("custom window sample rate must be positive");
  Window w;
  w.kind_ = WindowKind::custom;
  w.sample_rate_ = sample_rate;
  w.samples_ = std::move(samples);
  const std::size_t n = w.samples_.size();
  w.sample_derivs_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const cplx left = i > 0 ? w.samples_[i - 1] : cplx{};
    const cplx right = i + 1 < n ? w.samples_[i + 1] : cplx{};
    w.sample_derivs_[i] = (right - left) * (0.5 * sample_rate);
  }
  double acc = 0.0;
  for (const auto& z : w.samples_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw std::invalid_argument("window samples must be finite");
    acc += std::norm(z);
  }
  if (!(acc > 0.0)) throw std::invalid_argument("window must have positive norm");
  w.norm_squared_ = acc / sample_rate;
  w.support_radius_ = (static_cast<double>(n - 1) / 2.0 + 1.0) / sample_rate;
  return w;
}

double Window::norm() const { return std::sqrt(norm_squared_); }

namespace {

cplx interpolate(const std::vector<cplx>& s, double rate, double t) {
  const double pos = t * rate + static_cast<double>(s.size() - 1) / 2.0;
  if (pos <= -1.0 || pos >= static_cast<double>(s.size())) return {};
  const double base = std::floor(pos);
  const double frac = pos - base;
  const auto i = static_cast<std::ptrdiff_t>(base);
  const auto n = static_cast<std::ptrdiff_t>(s.size());
  const cplx a = (i >= 0 && i < n) ? s[static_cast<std::size_t>(i)] : cplx{};
  const cplx b = (i + 1 >= 0 && i + 1 < n) ? s[static_cast<std::size_t>(i + 1)] : cplx{};
  return a * (1.0 - frac) + b * frac;
}

}  // namespace

cplx Window::value(double t) const {
  if (kind_ == WindowKind::gaussian) {
    if (std::abs(t) > support_radius_) return {};
    const double u = t / sigma_;
    return {std::exp(-0.5 * u * u) / std::sqrt(2.0 * std::numbers::pi), 0.0};
  }
  return interpolate(samples_, sample_rate_, t);
}

cplx Window::derivative(double t) const {
  if (kind_ == WindowKind::gaussian) return value(t) * (-t / (sigma_ * sigma_));
  return interpolate(sample_derivs_, sample_rate_, t);
}

nlohmann::json Window::descriptor() const {
  nlohmann::json j;
  if (kind_ == WindowKind::gaussian) {
    j["kind"] = "gaussian";
    j["sigma"] = sigma_;
    j["amplitude"] = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  } else {
    j["kind"] = "custom";
    j["length"] = samples_.size();
    j["sample_rate"] = sample_rate_;
  }
  j["norm_squared"] = norm_squared_;
  j["support_radius"] = support_radius_;
  return j;
}

cplx window_self_transform(const Window& h, double dt, double domega) {
  if (h.kind() == WindowKind::gaussian) {
    const double s = h.sigma();
    return {h.norm_squared() * std::exp(-dt * dt / (4.0 * s * s) - domega * domega * s * s / 4.0), 0.0};
  }
  // Sh(dt, dw) = int h(s) conj(h(s - dt)) exp(-i dw (s - dt/2)) ds on the window's own samples.
  const double rate = h.sample_rate();
  const std::size_t n = h.samples().size();
  const double half = static_cast<double>(n - 1) / 2.0;
  cplx acc{};
  for (std::size_t m = 0; m < n; ++m) {
    const double s = (static_cast<double>(m) - half) / rate;
    acc += h.value(s) * std::conj(h.value(s - dt)) * std::polar(1.0, -domega * (s - 0.5 * dt));
  }
  return acc / rate;
}

}  // namespace tfr
