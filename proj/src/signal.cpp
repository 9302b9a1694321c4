// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tfreassign contributors

#include "tfr/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace tfr {

namespace {

void check_rate(double sample_rate) {
  if (!(sample_rate > 0.0) || !std::isfinite(sample_rate)) {
    throw std::invalid_argument("sample rate must be positive and finite");
  }
}

void check_below_nyquist(double freq, double rate, const char* what) {
  const double nyquist = std::numbers::pi * rate;
  if (freq >= nyquist) {
    throw AliasingError(std::string(what) + " " + std::to_string(freq) + " rad/s is at or above Nyquist " +
                        std::to_string(nyquist) + " rad/s");
  }
}

void check_axis(const std::vector<double>& axis, const char* name) {
  for (std::size_t i = 0; i < axis.size(); ++i) {
    if (!std::isfinite(axis[i])) throw std::invalid_argument(std::string(name) + " axis has non-finite entry");
    if (i > 0 && !(axis[i] > axis[i - 1])) {
      throw std::invalid_argument(std::string(name) + " axis must be strictly increasing");
    }
  }
}

}  // namespace

Signal::Signal(std::vector<double> samples, double sample_rate, double start_time)
    : samples_(std::move(samples)), sample_rate_(sample_rate), start_time_(start_time) {
  if (samples_.empty()) throw std::invalid_argument("signal must have at least one sample");
  check_rate(sample_rate_);
  if (!std::isfinite(start_time_)) throw std::invalid_argument("start time must be finite");
  if (!std::all_of(samples_.begin(), samples_.end(), [](double x) { return std::isfinite(x); })) {
    throw std::invalid_argument("signal samples must be finite");
  }
}

double Signal::norm() const {
  double acc = 0.0;
  for (double x : samples_) acc += x * x;
  return std::sqrt(acc / sample_rate_);
}

ComplexSignal::ComplexSignal(std::vector<cplx> samples, double sample_rate, double start_time)
    : samples_(std::move(samples)), sample_rate_(sample_rate), start_time_(start_time) {
  if (samples_.empty()) throw std::invalid_argument("signal must have at least one sample");
  check_rate(sample_rate_);
  if (!std::isfinite(start_time_)) throw std::invalid_argument("start time must be finite");
  for (const auto& z : samples_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw std::invalid_argument("signal samples must be finite");
    }
  }
}

ComplexSignal::ComplexSignal(const Signal& real)
    : samples_(real.samples().begin(), real.samples().end()),
      sample_rate_(real.sample_rate()),
      start_time_(real.start_time()) {}

double ComplexSignal::norm() const {
  double acc = 0.0;
  for (const auto& z : samples_) acc += std::norm(z);
  return std::sqrt(acc / sample_rate_);
}

Signal ComplexSignal::real_part(double tolerance) const {
  double peak = 0.0;
  double worst_imag = 0.0;
  for (const auto& z : samples_) {
    peak = std::max(peak, std::abs(z));
    worst_imag = std::max(worst_imag, std::abs(z.imag()));
  }
  if (worst_imag > tolerance * peak) {
    throw std::invalid_argument("complex samples are not real valued (max imaginary part " +
                                std::to_string(worst_imag) + ")");
  }
  std::vector<double> re(samples_.size());
  std::transform(samples_.begin(), samples_.end(), re.begin(), [](const cplx& z) { return z.real(); });
  return Signal(std::move(re), sample_rate_, start_time_);
}

std::string to_string(AxisKind kind) { return kind == AxisKind::frequency ? "frequency" : "scale"; }

AxisKind axis_kind_from_string(const std::string& name) {
  if (name == "frequency") return AxisKind::frequency;
  if (name == "scale") return AxisKind::scale;
  throw FormatError("unknown axis kind '" + name + "'");
}

ComplexGrid::ComplexGrid(Eigen::MatrixXcd values, std::vector<double> time_axis, std::vector<double> second_axis,
                         AxisKind kind, nlohmann::json descriptor)
    : values_(std::move(values)),
      time_axis_(std::move(time_axis)),
      second_axis_(std::move(second_axis)),
      kind_(kind),
      descriptor_(std::move(descriptor)) {
  if (time_axis_.empty() || second_axis_.empty()) throw std::invalid_argument("grid axes must be non-empty");
  check_axis(time_axis_, "time");
  check_axis(second_axis_, kind_ == AxisKind::frequency ? "frequency" : "scale");
  if (values_.rows() != static_cast<Eigen::Index>(second_axis_.size()) ||
      values_.cols() != static_cast<Eigen::Index>(time_axis_.size())) {
    throw std::invalid_argument("grid dimensions do not match axis lengths");
  }
  if (kind_ == AxisKind::scale && second_axis_.front() <= 0.0) {
    throw std::invalid_argument("scale axis must be positive");
  }
  if (!values_.allFinite()) throw std::invalid_argument("grid values must be finite");
}

ComplexGrid ComplexGrid::zeros_like(const ComplexGrid& like) {
  return ComplexGrid(Eigen::MatrixXcd::Zero(like.rows(), like.cols()), like.time_axis_, like.second_axis_, like.kind_,
                     like.descriptor_);
}

double ComplexGrid::max_abs() const { return values_.size() == 0 ? 0.0 : values_.cwiseAbs().maxCoeff(); }

Signal gen_cosine(double freq, double amplitude, std::size_t n, double rate) {
  check_rate(rate);
  if (!(freq > 0.0)) throw std::invalid_argument("cosine frequency must be positive");
  check_below_nyquist(freq, rate, "cosine frequency");
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = amplitude * std::cos(freq * static_cast<double>(i) / rate);
  return Signal(std::move(x), rate);
}

Signal gen_click(double position, std::size_t n, double rate) {
  check_rate(rate);
  const double duration = static_cast<double>(n) / rate;
  if (!(position >= 0.0) || !(position < duration)) {
    throw std::invalid_argument("click position " + std::to_string(position) + " s outside [0, " +
                                std::to_string(duration) + ")");
  }
  std::vector<double> x(n, 0.0);
  const auto index = std::min<std::size_t>(static_cast<std::size_t>(std::llround(position * rate)), n - 1);
  x[index] = rate;
  return Signal(std::move(x), rate);
}

Signal gen_chirp(double f0, double f1, std::size_t n, double rate) {
  check_rate(rate);
  if (f0 < 0.0 || f1 < 0.0) throw std::invalid_argument("chirp frequencies must be non-negative");
  check_below_nyquist(f0, rate, "chirp start frequency");
  check_below_nyquist(f1, rate, "chirp end frequency");
  const double span = n > 1 ? static_cast<double>(n - 1) / rate : 1.0;
  const double sweep = (f1 - f0) / span;
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / rate;
    x[i] = std::cos(f0 * t + 0.5 * sweep * t * t);
  }
  return Signal(std::move(x), rate);
}

Signal gen_tones(std::span<const double> freqs, std::span<const double> amplitudes, std::size_t n, double rate) {
  check_rate(rate);
  if (freqs.size() != amplitudes.size()) throw std::invalid_argument("one amplitude per tone required");
  if (freqs.empty()) throw std::invalid_argument("at least one tone required");
  std::vector<double> x(n, 0.0);
  for (std::size_t k = 0; k < freqs.size(); ++k) {
    if (!(freqs[k] > 0.0)) throw std::invalid_argument("tone frequency must be positive");
    check_below_nyquist(freqs[k], rate, "tone frequency");
    for (std::size_t i = 0; i < n; ++i) x[i] += amplitudes[k] * std::cos(freqs[k] * static_cast<double>(i) / rate);
  }
  return Signal(std::move(x), rate);
}

Signal gen_gaussian_tone(double center, double width, double freq, std::size_t n, double rate) {
  check_rate(rate);
  if (!(width > 0.0)) throw std::invalid_argument("envelope width must be positive");
  if (freq < 0.0) throw std::invalid_argument("tone frequency must be non-negative");
  check_below_nyquist(freq, rate, "tone frequency");
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / rate;
    const double u = (t - center) / width;
    x[i] = std::exp(-0.5 * u * u) * std::cos(freq * t);
  }
  return Signal(std::move(x), rate);
}

}  // namespace tfr
