// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tfreassign contributors

#include "tfr/wavelet_kernel.hpp"

#include <cmath>
#include <numbers>

#include "tfr/fft.hpp"

namespace tfr {

namespace {

constexpr int kRowsPerOctave = 32;
constexpr int kMaxOctaves = 14;
constexpr std::size_t kSpectralSamples = 512;
constexpr std::size_t kRowLength = 2048;
constexpr double kSupportLevel = 1e-10;
constexpr double kNegligible = 1e-9;

}  // namespace

WaveletKernel::WaveletKernel(const AnalyticWavelet& w, std::optional<Method> method) : wavelet_(w) {
  const bool closed = w.is_extremal() && w.params()->c == 1.0;
  method_ = method.value_or(closed ? Method::closed_form : Method::table);
  if (method_ == Method::closed_form && !closed) {
    throw std::invalid_argument("closed-form kernel exists only for extremal wavelets with c = 1");
  }
  if (method_ == Method::closed_form) {
    const ExtremalParams& p = *w.params();
    const double k = extremal_normalization(p);
    log_prefactor_ = std::log(4.0 * k * k) + std::lgamma(2.0 * p.kappa * p.nu);
    return;
  }

  const auto [lo, hi] = w.spectral_support(kSupportLevel);
  const Fft fft(kRowLength);
  auto build = [&](double log2a) {
    const double a = std::exp2(log2a);
    Row row;
    const double w_lo = std::max(lo, lo / a);
    const double w_hi = std::min(hi, hi / a);
    if (!(w_hi > w_lo)) return row;
    const double dw = (w_hi - w_lo) / static_cast<double>(kSpectralSamples);
    const double w0 = w_lo + 0.5 * dw;
    std::vector<cplx> g(kRowLength), out(kRowLength);
    double mass = 0.0, moment = 0.0;
    for (std::size_t m = 0; m < kSpectralSamples; ++m) {
      const double omega = w0 + static_cast<double>(m) * dw;
      g[m] = w.spectrum(omega) * std::conj(w.spectrum(a * omega));
      mass += std::abs(g[m]);
      moment += std::abs(g[m]) * omega;
    }
    if (!(mass > 0.0)) return row;
    row.carrier = moment / mass;
    row.db = 2.0 * std::numbers::pi / (static_cast<double>(kRowLength) * dw);
    fft.inverse(g, out);
    const double gain = std::sqrt(a) * dw * static_cast<double>(kRowLength);
    row.values.resize(kRowLength);
    const auto half = static_cast<std::ptrdiff_t>(kRowLength / 2);
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(kRowLength); ++i) {
      const std::ptrdiff_t n = i - half;
      const auto idx = static_cast<std::size_t>((n + static_cast<std::ptrdiff_t>(kRowLength)) %
                                                static_cast<std::ptrdiff_t>(kRowLength));
      const double b = static_cast<double>(n) * row.db;
      row.values[static_cast<std::size_t>(i)] = gain * out[idx] * std::polar(1.0, b * (w0 - row.carrier));
    }
    return row;
  };
  auto peak = [](const Row& r) {
    double m = 0.0;
    for (const auto& v : r.values) m = std::max(m, std::abs(v));
    return m;
  };

  std::vector<Row> below, above;
  const double step = 1.0 / kRowsPerOctave;
  for (int i = 1; i <= kMaxOctaves * kRowsPerOctave; ++i) {
    below.push_back(build(-i * step));
    if (peak(below.back()) < kNegligible) break;
  }
  for (int i = 1; i <= kMaxOctaves * kRowsPerOctave; ++i) {
    above.push_back(build(i * step));
    if (peak(above.back()) < kNegligible) break;
  }
  log2_min_ = -static_cast<double>(below.size()) * step;
  rows_.assign(std::make_move_iterator(below.rbegin()), std::make_move_iterator(below.rend()));
  rows_.push_back(build(0.0));
  for (auto& r : above) rows_.push_back(std::move(r));
}

cplx WaveletKernel::closed_form(double a, double b) const {
  const ExtremalParams& p = *wavelet_.params();
  const double e = 2.0 * p.kappa * p.nu;
  const cplx s(p.kappa * (1.0 + a), -p.beta * (1.0 - a) - b);
  const double log_a = std::log(a);
  const cplx log_value = cplx(log_prefactor_ + p.kappa * p.nu * log_a, -p.alpha * log_a) - e * std::log(s);
  return std::exp(log_value);
}

cplx WaveletKernel::row_value(const Row& row, double b) const {
  if (row.values.empty()) return {};
  const double pos = b / row.db + static_cast<double>(kRowLength / 2);
  if (pos < 0.0 || pos > static_cast<double>(kRowLength - 1)) return {};
  const double base = std::floor(pos);
  const double frac = pos - base;
  const auto i = static_cast<std::size_t>(base);
  const cplx v0 = row.values[i];
  const cplx v1 = i + 1 < row.values.size() ? row.values[i + 1] : cplx{};
  return (v0 * (1.0 - frac) + v1 * frac) * std::polar(1.0, b * row.carrier);
}

cplx WaveletKernel::operator()(double a_ratio, double b_offset) const {
  if (!(a_ratio > 0.0) || !std::isfinite(a_ratio)) throw std::invalid_argument("kernel scale ratio must be positive");
  if (method_ == Method::closed_form) return closed_form(a_ratio, b_offset);
  const double pos = (std::log2(a_ratio) - log2_min_) * kRowsPerOctave;
  if (pos < 0.0 || pos > static_cast<double>(rows_.size() - 1)) return {};
  const double base = std::floor(pos);
  const double frac = pos - base;
  const auto i = static_cast<std::size_t>(base);
  const cplx v0 = row_value(rows_[i], b_offset);
  if (frac == 0.0 || i + 1 >= rows_.size()) return v0;
  return v0 * (1.0 - frac) + row_value(rows_[i + 1], b_offset) * frac;
}

cplx wavelet_kernel(const AnalyticWavelet& w, double a_ratio, double b_offset) {
  return WaveletKernel(w)(a_ratio, b_offset);
}

}  // namespace tfr
