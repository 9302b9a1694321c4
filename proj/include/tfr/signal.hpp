// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tfreassign contributors

#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

namespace tfr {

using cplx = std::complex<double>;
using Mask = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A requested frequency does not fit below the Nyquist limit.
class AliasingError : public Error {
 public:
  using Error::Error;
};

/// Malformed or unsupported file content.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Uniformly sampled real-valued time series.
///
/// Invariants: at least one sample, positive sample rate, every sample finite.
class Signal {
 public:
  Signal(std::vector<double> samples, double sample_rate, double start_time = 0.0);

  std::span<const double> samples() const { return samples_; }
  double operator[](std::size_t i) const { return samples_[i]; }
  std::size_t size() const { return samples_.size(); }
  double sample_rate() const { return sample_rate_; }
  double sample_period() const { return 1.0 / sample_rate_; }
  double start_time() const { return start_time_; }
  double time(std::size_t i) const { return start_time_ + static_cast<double>(i) / sample_rate_; }
  /// Length of the sampled interval, n / rate.
  double duration() const { return static_cast<double>(samples_.size()) / sample_rate_; }

  /// L2 norm with the sample period as quadrature weight.
  double norm() const;

 private:
  std::vector<double> samples_;
  double sample_rate_;
  double start_time_;
};

/// Complex samples on a uniform grid. Used for window functions, group actions
/// and any intermediate that is not real valued.
class ComplexSignal {
 public:
  ComplexSignal(std::vector<cplx> samples, double sample_rate, double start_time = 0.0);
  explicit ComplexSignal(const Signal& real);

  std::span<const cplx> samples() const { return samples_; }
  const cplx& operator[](std::size_t i) const { return samples_[i]; }
  std::size_t size() const { return samples_.size(); }
  double sample_rate() const { return sample_rate_; }
  double sample_period() const { return 1.0 / sample_rate_; }
  double start_time() const { return start_time_; }
  double time(std::size_t i) const { return start_time_ + static_cast<double>(i) / sample_rate_; }
  double norm() const;

  /// Real part as a Signal. Throws if any imaginary part exceeds `tolerance`
  /// times the peak magnitude.
  Signal real_part(double tolerance) const;

 private:
  std::vector<cplx> samples_;
  double sample_rate_;
  double start_time_;
};

enum class AxisKind { frequency, scale };

std::string to_string(AxisKind kind);
AxisKind axis_kind_from_string(const std::string& name);

/// Complex matrix over (second axis) x (time). Rows follow the frequency
/// (rad/s) or scale (s) axis, columns follow the time axis (s).
class ComplexGrid {
 public:
  ComplexGrid(Eigen::MatrixXcd values, std::vector<double> time_axis, std::vector<double> second_axis,
              AxisKind kind, nlohmann::json descriptor = nlohmann::json::object());

  /// Zero grid with the same axes and descriptor as `like`.
  static ComplexGrid zeros_like(const ComplexGrid& like);

  const Eigen::MatrixXcd& values() const { return values_; }
  Eigen::MatrixXcd& values() { return values_; }
  const std::vector<double>& time_axis() const { return time_axis_; }
  const std::vector<double>& second_axis() const { return second_axis_; }
  AxisKind axis_kind() const { return kind_; }
  const nlohmann::json& descriptor() const { return descriptor_; }
  nlohmann::json& descriptor() { return descriptor_; }

  Eigen::Index rows() const { return values_.rows(); }
  Eigen::Index cols() const { return values_.cols(); }
  double max_abs() const;

 private:
  Eigen::MatrixXcd values_;
  std::vector<double> time_axis_;
  std::vector<double> second_axis_;
  AxisKind kind_;
  nlohmann::json descriptor_;
};

// Generators. Frequencies are angular (rad/s); rates are in Hz.

Signal gen_cosine(double freq, double amplitude, std::size_t n, double rate);

/// Discrete unit impulse: a single sample of value `rate` at round(position * rate),
/// so that the sample sum divided by the rate is exactly one.
Signal gen_click(double position, std::size_t n, double rate);

/// Linear sweep of instantaneous frequency from f0 at the first sample to f1 at the last.
Signal gen_chirp(double f0, double f1, std::size_t n, double rate);

/// Sum of cosines with the given angular frequencies and amplitudes.
Signal gen_tones(std::span<const double> freqs, std::span<const double> amplitudes, std::size_t n,
                 double rate);

/// exp(-(t - center)^2 / (2 width^2)) cos(freq t).
Signal gen_gaussian_tone(double center, double width, double freq, std::size_t n, double rate);

}  // namespace tfr
