// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tfreassign contributors

#include "tfr/stft.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "tfr/fft.hpp"

namespace tfr {

namespace {

std::ptrdiff_t window_half_samples(const Window& h, double rate) {
  return static_cast<std::ptrdiff_t>(std::floor(h.support_radius() * rate + 1e-9));
}

cplx variant_value(const Window& h, WindowVariant v, double t) {
  switch (v) {
    case WindowVariant::window:
      return h.value(t);
    case WindowVariant::derivative:
      return h.derivative(t);
    case WindowVariant::time_weighted:
      return t * h.value(t);
  }
  return {};
}

std::ptrdiff_t hop_samples(double time_step, double rate) {
  if (!(time_step > 0.0) || !std::isfinite(time_step)) throw std::invalid_argument("time step must be positive");
  const double hop = time_step * rate;
  const double whole = std::round(hop);
  if (whole < 1.0 || std::abs(hop - whole) > 1e-6 * std::max(1.0, whole)) {
    throw std::invalid_argument("time step must be a whole number of sample periods");
  }
  return static_cast<std::ptrdiff_t>(whole);
}

double uniform_step(const std::vector<double>& axis) {
  if (axis.size() < 2) return 0.0;
  const double step = (axis.back() - axis.front()) / static_cast<double>(axis.size() - 1);
  for (std::size_t k = 1; k < axis.size(); ++k) {
    if (std::abs(axis[k] - axis[k - 1] - step) > 1e-6 * std::abs(step)) {
      throw std::invalid_argument("omega axis must be uniform");
    }
  }
  return step;
}

/// Quadrature weights along the omega axis and whether the axis is one-sided.
std::vector<double> omega_weights(const std::vector<double>& axis, double rate, bool& one_sided) {
  const double step = uniform_step(axis);
  const double width = axis.size() > 1 ? step : 2.0 * std::numbers::pi * rate;
  std::vector<double> w(axis.size(), width);
  one_sided = axis.front() >= 0.0;
  if (one_sided) {
    const double nyquist = std::numbers::pi * rate;
    for (std::size_t k = 0; k < axis.size(); ++k) {
      if (std::abs(axis[k]) < 1e-9 * nyquist || std::abs(axis[k] - nyquist) < 1e-9 * nyquist) w[k] *= 0.5;
    }
  }
  return w;
}

}  // namespace

std::vector<double> default_omega_axis(const Window& h, double rate) {
  const auto half = window_half_samples(h, rate);
  const std::size_t nfft = next_pow2(static_cast<std::size_t>(2 * half + 1));
  std::vector<double> axis(nfft / 2 + 1);
  for (std::size_t k = 0; k < axis.size(); ++k) {
    axis[k] = 2.0 * std::numbers::pi * rate * static_cast<double>(k) / static_cast<double>(nfft);
  }
  return axis;
}

ComplexGrid stft(const ComplexSignal& f, const Window& h, const StftGrid& grid, WindowVariant variant) {
  const double rate = f.sample_rate();
  const auto hop = hop_samples(grid.time_step, rate);
  if (grid.omega_axis.empty()) throw std::invalid_argument("omega axis is empty");
  const double nyquist = std::numbers::pi * rate;
  for (double w : grid.omega_axis) {
    if (!std::isfinite(w) || std::abs(w) > nyquist * (1.0 + 1e-12)) {
      throw AliasingError("omega axis exceeds the Nyquist frequency");
    }
  }
  uniform_step(grid.omega_axis);
  const auto half = window_half_samples(h, rate);
  if (half < 1) throw std::invalid_argument("window support is narrower than one sample period");

  const auto n = static_cast<std::ptrdiff_t>(f.size());
  const std::ptrdiff_t pad = hop * ((half + hop - 1) / hop);
  const std::ptrdiff_t first = -pad;
  const std::ptrdiff_t ncols = (n - 1 + 2 * pad) / hop + 1;
  const std::ptrdiff_t span = 2 * half + 1;
  const auto nw = static_cast<Eigen::Index>(grid.omega_axis.size());

  // E(k, l) = exp(-i w_k tau_l) conj(h(tau_l)), tau_l = (l - half) / rate.
  Eigen::MatrixXcd kernel(nw, span);
  for (std::ptrdiff_t l = 0; l < span; ++l) {
    const double tau = static_cast<double>(l - half) / rate;
    const cplx hv = std::conj(variant_value(h, variant, tau));
    for (Eigen::Index k = 0; k < nw; ++k) kernel(k, l) = std::polar(1.0, -grid.omega_axis[k] * tau) * hv;
  }

  std::vector<double> times(static_cast<std::size_t>(ncols));
  for (std::ptrdiff_t j = 0; j < ncols; ++j) times[j] = f.start_time() + static_cast<double>(first + j * hop) / rate;

  Eigen::MatrixXcd values(nw, ncols);
  const std::ptrdiff_t block = 64;
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t b0 = 0; b0 < ncols; b0 += block) {
    const std::ptrdiff_t b1 = std::min(ncols, b0 + block);
    Eigen::MatrixXcd segments = Eigen::MatrixXcd::Zero(span, b1 - b0);
    for (std::ptrdiff_t j = b0; j < b1; ++j) {
      const std::ptrdiff_t center = first + j * hop;
      for (std::ptrdiff_t l = 0; l < span; ++l) {
        const std::ptrdiff_t idx = center + l - half;
        if (idx >= 0 && idx < n) segments(l, j - b0) = f[static_cast<std::size_t>(idx)];
      }
    }
    Eigen::MatrixXcd out = kernel * segments;
    for (std::ptrdiff_t j = b0; j < b1; ++j) {
      const double t = times[j];
      for (Eigen::Index k = 0; k < nw; ++k) {
        values(k, j) = out(k, j - b0) * std::polar(1.0 / rate, -0.5 * grid.omega_axis[k] * t);
      }
    }
  }

  nlohmann::json desc;
  desc["transform"] = "stft";
  desc["window"] = h.descriptor();
  desc["time_step"] = grid.time_step;
  desc["hop_samples"] = hop;
  desc["signal"] = {{"rate", rate}, {"start", f.start_time()}, {"n", f.size()}};
  switch (variant) {
    case WindowVariant::window:
      break;
    case WindowVariant::derivative:
      desc["window_variant"] = "derivative";
      break;
    case WindowVariant::time_weighted:
      desc["window_variant"] = "time_weighted";
      break;
  }
  return ComplexGrid(std::move(values), std::move(times), grid.omega_axis, AxisKind::frequency, std::move(desc));
}

ComplexGrid stft(const Signal& f, const Window& h, const StftGrid& grid, WindowVariant variant) {
  return stft(ComplexSignal(f), h, grid, variant);
}

cplx stft_at(const Signal& f, const Window& h, double t, double omega, WindowVariant variant) {
  const double rate = f.sample_rate();
  const double r = h.support_radius();
  const auto lo = static_cast<std::ptrdiff_t>(std::ceil((t - r - f.start_time()) * rate));
  const auto hi = static_cast<std::ptrdiff_t>(std::floor((t + r - f.start_time()) * rate));
  cplx acc{};
  for (std::ptrdiff_t i = std::max<std::ptrdiff_t>(lo, 0); i <= std::min<std::ptrdiff_t>(hi, f.size() - 1); ++i) {
    const double s = f.time(static_cast<std::size_t>(i));
    acc += f[static_cast<std::size_t>(i)] * std::conj(variant_value(h, variant, s - t)) * std::polar(1.0, -omega * s);
  }
  return acc * std::polar(1.0 / rate, 0.5 * omega * t);
}

IstftResult istft(const ComplexGrid& grid, const Window& h) {
  if (grid.axis_kind() != AxisKind::frequency) throw std::invalid_argument("istft needs a frequency grid");
  const auto& desc = grid.descriptor();
  if (!desc.contains("signal")) throw std::invalid_argument("grid carries no signal descriptor");
  const double rate = desc["signal"]["rate"].get<double>();
  const double start = desc["signal"]["start"].get<double>();
  const auto n = desc["signal"]["n"].get<std::ptrdiff_t>();
  const auto& times = grid.time_axis();
  const auto& omegas = grid.second_axis();
  const double dt = times.size() > 1 ? (times.back() - times.front()) / static_cast<double>(times.size() - 1)
                                     : 1.0 / rate;
  bool one_sided = false;
  const std::vector<double> wk = omega_weights(omegas, rate, one_sided);
  const double domega = omegas.size() > 1 ? omegas[1] - omegas[0] : 2.0 * std::numbers::pi * rate;

  const auto half = window_half_samples(h, rate);
  const std::ptrdiff_t span = 2 * half + 1;
  const auto nw = static_cast<Eigen::Index>(omegas.size());
  // D(l, k) = exp(i w_k tau_l) h(tau_l) w_k
  Eigen::MatrixXcd synth(span, nw);
  std::vector<cplx> hv(static_cast<std::size_t>(span));
  for (std::ptrdiff_t l = 0; l < span; ++l) {
    const double tau = static_cast<double>(l - half) / rate;
    hv[l] = h.value(tau);
    for (Eigen::Index k = 0; k < nw; ++k) synth(l, k) = std::polar(wk[k], omegas[k] * tau) * hv[l];
  }

  const double scale = dt / (2.0 * std::numbers::pi * h.norm_squared());
  std::vector<cplx> acc(static_cast<std::size_t>(n));
  const auto ncols = static_cast<std::ptrdiff_t>(times.size());
  Eigen::VectorXcd column(nw);
  for (std::ptrdiff_t j = 0; j < ncols; ++j) {
    const double tj = times[j];
    for (Eigen::Index k = 0; k < nw; ++k) column[k] = grid.values()(k, j) * std::polar(1.0, 0.5 * omegas[k] * tj);
    const Eigen::VectorXcd seg = synth * column;
    const auto center = static_cast<std::ptrdiff_t>(std::llround((tj - start) * rate));
    for (std::ptrdiff_t l = 0; l < span; ++l) {
      const std::ptrdiff_t idx = center + l - half;
      if (idx >= 0 && idx < n) acc[idx] += seg[l];
    }
  }

  std::vector<double> out(static_cast<std::size_t>(n));
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = scale * (one_sided ? 2.0 * acc[i].real() : acc[i].real());

  // Diagonal of the discrete frame operator in time.
  double defect = 0.0;
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double t = start + static_cast<double>(i) / rate;
    double g = 0.0;
    for (std::ptrdiff_t j = 0; j < ncols; ++j) {
      const double u = t - times[j];
      if (std::abs(u) <= h.support_radius()) g += std::norm(h.value(u));
    }
    defect = std::max(defect, std::abs(g * dt / h.norm_squared() - 1.0));
  }
  // Frequency sampling aliases the window at a lag of 2 pi / dw.
  const double lag = 2.0 * std::numbers::pi / std::abs(domega);
  double peak = 0.0, alias = 0.0;
  for (std::ptrdiff_t l = 0; l < span; ++l) peak = std::max(peak, std::norm(hv[l]));
  for (std::ptrdiff_t l = 0; l < span; ++l) {
    const double tau = static_cast<double>(l - half) / rate;
    alias = std::max(alias, std::abs(hv[l] * h.value(tau - lag)));
  }
  defect += alias / peak;

  IstftResult result{Signal(std::move(out), rate, start), defect, defect < 1e-3, {}};
  std::ostringstream warn;
  if (!result.adequate) warn << "grid too sparse for reconstruction (frame defect " << defect << ")";
  const double nyquist = std::numbers::pi * rate;
  const double lo = omegas.front() - 0.5 * domega;
  const double hi = omegas.back() + 0.5 * domega;
  if ((one_sided && (lo > 1e-9 * nyquist || hi < nyquist * (1.0 - 1e-9))) ||
      (!one_sided && (lo > -nyquist * (1.0 - 1e-9) || hi < nyquist * (1.0 - 1e-9)))) {
    if (warn.tellp() > 0) warn << "; ";
    warn << "omega axis does not cover the full band";
  }
  result.warning = warn.str();
  return result;
}

double stft_energy(const ComplexGrid& grid, const Window& h) {
  const auto& times = grid.time_axis();
  const double rate = grid.descriptor().contains("signal") ? grid.descriptor()["signal"]["rate"].get<double>() : 1.0;
  const double dt = times.size() > 1 ? (times.back() - times.front()) / static_cast<double>(times.size() - 1) : 1.0;
  bool one_sided = false;
  const std::vector<double> wk = omega_weights(grid.second_axis(), rate, one_sided);
  double e = 0.0;
  for (Eigen::Index k = 0; k < grid.rows(); ++k) e += wk[k] * grid.values().row(k).cwiseAbs2().sum();
  if (one_sided) e *= 2.0;
  return e * dt / (2.0 * std::numbers::pi * h.norm_squared());
}

}  // namespace tfr
