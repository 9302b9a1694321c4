// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tfreassign contributors

#include "tfr/cwt.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "tfr/fft.hpp"

namespace tfr {

std::vector<double> geometric_scales(double a_min, double a_max, int voices) {
  if (!(a_min > 0.0) || !(a_max >= a_min) || !std::isfinite(a_max)) {
    throw std::invalid_argument("scale range must satisfy 0 < a_min <= a_max");
  }
  if (voices < 1) throw std::invalid_argument("voices per octave must be positive");
  std::vector<double> scales;
  for (int j = 0;; ++j) {
    const double a = a_min * std::exp2(static_cast<double>(j) / voices);
    if (a > a_max * (1.0 + 1e-12)) break;
    scales.push_back(a);
  }
  return scales;
}

namespace {

void check_scales(const std::vector<double>& scales) {
  if (scales.empty()) throw std::invalid_argument("scale axis is empty");
  for (std::size_t j = 0; j < scales.size(); ++j) {
    if (!(scales[j] > 0.0) || !std::isfinite(scales[j])) throw std::invalid_argument("scales must be positive");
    if (j > 0 && !(scales[j] > scales[j - 1])) throw std::invalid_argument("scales must be strictly increasing");
  }
}

}  // namespace

ComplexGrid cwt(const ComplexSignal& f, const AnalyticWavelet& w, const std::vector<double>& scales,
                CwtVariant variant) {
  check_scales(scales);
  const std::size_t n = f.size();
  const double rate = f.sample_rate();
  const Fft fft(n);
  std::vector<cplx> spectrum(n);
  fft.forward(f.samples(), spectrum);

  const auto rows = static_cast<Eigen::Index>(scales.size());
  Eigen::MatrixXcd values(rows, static_cast<Eigen::Index>(n));
#pragma omp parallel for schedule(dynamic)
  for (Eigen::Index j = 0; j < rows; ++j) {
    const double a = scales[j];
    std::vector<cplx> filtered(n), row(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double omega = fft_bin_frequency(k, n, rate);
      // The Nyquist bin of an even length has no positive-frequency partner.
      if (!(omega > 0.0) || 2 * k == n) continue;
      cplx g = w.analysis_filter(a * omega);
      if (g == cplx{}) continue;
      if (variant == CwtVariant::time_derivative) g *= cplx(0.0, omega);
      if (variant == CwtVariant::scale_derivative) g *= w.scale_log_derivative(a * omega);
      filtered[k] = spectrum[k] * g;
    }
    fft.inverse(filtered, row);
    const double gain = std::sqrt(2.0 * std::numbers::pi * a);
    for (std::size_t i = 0; i < n; ++i) values(j, static_cast<Eigen::Index>(i)) = gain * row[i];
  }

  std::vector<double> times(n);
  for (std::size_t i = 0; i < n; ++i) times[i] = f.time(i);

  nlohmann::json desc;
  desc["transform"] = "cwt";
  desc["wavelet"] = w.descriptor();
  desc["signal"] = {{"rate", rate}, {"start", f.start_time()}, {"n", n}};
  if (scales.size() > 1) {
    desc["voices"] = std::log(2.0) / std::log(scales[1] / scales[0]);
  }
  switch (variant) {
    case CwtVariant::value:
      break;
    case CwtVariant::time_derivative:
      desc["variant"] = "time_derivative";
      break;
    case CwtVariant::scale_derivative:
      desc["variant"] = "scale_derivative";
      break;
  }
  nlohmann::json warnings = nlohmann::json::array();
  const double nyquist = std::numbers::pi * rate;
  const double lowest = 2.0 * std::numbers::pi * rate / static_cast<double>(n);
  const auto [lo, hi] = w.spectral_support(1e-3);
  if (scales.front() * nyquist < hi) {
    std::ostringstream s;
    s << "wavelet spectrum is cut by the Nyquist limit for scales below " << hi / nyquist << " s";
    warnings.push_back(s.str());
  }
  // Fewer than eight frequency bins across the wavelet's band.
  if ((hi - lo) / scales.back() < 8.0 * lowest) {
    std::ostringstream s;
    s << "wavelet spectrum is not resolved by the frequency grid for scales above " << (hi - lo) / (8.0 * lowest)
      << " s";
    warnings.push_back(s.str());
  }
  desc["warnings"] = warnings;
  return ComplexGrid(std::move(values), std::move(times), scales, AxisKind::scale, std::move(desc));
}

ComplexGrid cwt(const Signal& f, const AnalyticWavelet& w, const std::vector<double>& scales, CwtVariant variant) {
  return cwt(ComplexSignal(f), w, scales, variant);
}

IcwtResult icwt(const ComplexGrid& grid, const AnalyticWavelet& w) {
  if (grid.axis_kind() != AxisKind::scale) throw std::invalid_argument("icwt needs a scale grid");
  const auto& desc = grid.descriptor();
  if (!desc.contains("signal")) throw std::invalid_argument("grid carries no signal descriptor");
  const double rate = desc["signal"]["rate"].get<double>();
  const double start = desc["signal"]["start"].get<double>();
  const auto n = static_cast<std::size_t>(grid.cols());
  const auto& scales = grid.second_axis();
  const std::size_t m = scales.size();

  std::vector<double> weights(m, 0.0);
  for (std::size_t j = 0; j + 1 < m; ++j) {
    const double d = std::log(scales[j + 1] / scales[j]);
    weights[j] += 0.5 * d;
    weights[j + 1] += 0.5 * d;
  }
  if (m == 1) weights[0] = 1.0;

  const double cprime = reconstruction_constant(w);
  const Fft fft(n);
  std::vector<cplx> total(n);
  std::vector<double> coverage(n, 0.0);
  std::vector<cplx> row(n), spec(n);
  for (std::size_t j = 0; j < m; ++j) {
    const double a = scales[j];
    for (std::size_t i = 0; i < n; ++i) row[i] = grid.values()(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i));
    fft.forward(row, spec);
    const double factor = weights[j] / a * std::sqrt(2.0 * std::numbers::pi * a);
    for (std::size_t k = 0; k < n; ++k) {
      const double omega = fft_bin_frequency(k, n, rate);
      const cplx psi = w.spectrum(a * omega);
      total[k] += factor * psi * spec[k];
      coverage[k] += weights[j] * std::norm(psi) / cprime;
    }
  }
  std::vector<cplx> out(n);
  fft.inverse(total, out);
  std::vector<double> samples(n);
  const double scale = 1.0 / (std::numbers::pi * cprime);
  for (std::size_t i = 0; i < n; ++i) samples[i] = scale * out[i].real();

  // The composed transform multiplies each positive frequency by coverage[k].
  double err = 0.0, ref = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (!(fft_bin_frequency(k, n, rate) > 0.0) || coverage[k] < 0.05) continue;
    const double est = std::norm(total[k]) / (coverage[k] * coverage[k]);
    ref += est;
    err += est * (1.0 - coverage[k]) * (1.0 - coverage[k]);
  }
  IcwtResult result{Signal(std::move(samples), rate, start), ref > 0.0 ? std::sqrt(err / ref) : 0.0, {}};
  if (result.residual_estimate > 5e-2) {
    std::ostringstream s;
    s << "scale axis does not cover the signal band (estimated residual " << result.residual_estimate << ")";
    result.warning = s.str();
  }
  return result;
}

}  // namespace tfr
