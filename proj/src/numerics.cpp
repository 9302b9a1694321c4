// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tfreassign contributors

#include "tfr/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>

namespace tfr {

double median(std::vector<double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  const auto mid = values.begin() + static_cast<std::ptrdiff_t>(values.size() / 2);
  std::nth_element(values.begin(), mid, values.end());
  if (values.size() % 2 == 1) return *mid;
  const double hi = *mid;
  const double lo = *std::max_element(values.begin(), mid);
  return 0.5 * (lo + hi);
}

double wrap_phase(double angle) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double w = std::remainder(angle, two_pi);
  if (w <= -std::numbers::pi) w += two_pi;
  return w;
}

Mask energetic_mask(const Eigen::MatrixXcd& values, double fraction) {
  const Eigen::MatrixXd mag = values.cwiseAbs();
  const double peak = mag.size() ? mag.maxCoeff() : 0.0;
  if (peak == 0.0) return Mask::Constant(values.rows(), values.cols(), false);
  return mag.array() >= fraction * peak;
}

Mask magnitude_mask(const Eigen::MatrixXcd& values, double fraction) {
  const Eigen::MatrixXd mag = values.cwiseAbs();
  const double peak = mag.size() ? mag.maxCoeff() : 0.0;
  if (peak == 0.0) return Mask::Constant(values.rows(), values.cols(), false);
  return mag.array() > fraction * peak;
}

double renyi_entropy(const Eigen::MatrixXcd& values, double order) {
  if (order <= 0.0 || order == 1.0) throw std::invalid_argument("Renyi order must be positive and != 1");
  const Eigen::ArrayXXd energy = values.cwiseAbs2().array();
  const double total = energy.sum();
  if (total <= 0.0) throw std::invalid_argument("Renyi entropy of an all-zero distribution");
  const double moment = (energy / total).pow(order).sum();
  return std::log2(moment) / (1.0 - order);
}

namespace {

template <typename T>
std::optional<T> derivative_impl(std::span<const double> axis, std::span<const T> f, std::span<const bool> valid,
                                 std::size_t i) {
  const std::size_t n = axis.size();
  if (n < 2 || !valid[i]) return std::nullopt;
  const bool has_left = i > 0 && valid[i - 1];
  const bool has_right = i + 1 < n && valid[i + 1];
  if (has_left && has_right) {
    const double h1 = axis[i] - axis[i - 1];
    const double h2 = axis[i + 1] - axis[i];
    return (-h2 / (h1 * (h1 + h2))) * f[i - 1] + ((h2 - h1) / (h1 * h2)) * f[i] + (h1 / (h2 * (h1 + h2))) * f[i + 1];
  }
  if (has_right) return (f[i + 1] - f[i]) / (axis[i + 1] - axis[i]);
  if (has_left) return (f[i] - f[i - 1]) / (axis[i] - axis[i - 1]);
  return std::nullopt;
}

}  // namespace

std::optional<double> axis_derivative(std::span<const double> axis, std::span<const double> f,
                                      std::span<const bool> valid, std::size_t i) {
  return derivative_impl<double>(axis, f, valid, i);
}

std::optional<cplx> axis_derivative(std::span<const double> axis, std::span<const cplx> f,
                                    std::span<const bool> valid, std::size_t i) {
  return derivative_impl<cplx>(axis, f, valid, i);
}

Eigen::MatrixXcd log_derivative(const Eigen::MatrixXcd& values, std::span<const double> axis, GridDirection along,
                                const Mask& mask) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Constant(values.rows(), values.cols(), cplx(nan, nan));
  const bool rows = along == GridDirection::rows;
  const Eigen::Index len = rows ? values.rows() : values.cols();
  const Eigen::Index lines = rows ? values.cols() : values.rows();
  if (static_cast<Eigen::Index>(axis.size()) != len) throw std::invalid_argument("axis length does not match grid");
  auto at = [&](Eigen::Index line, Eigen::Index i) -> cplx { return rows ? values(i, line) : values(line, i); };
  auto ok = [&](Eigen::Index line, Eigen::Index i) {
    return (rows ? mask(i, line) : mask(line, i)) && at(line, i) != cplx{};
  };
  for (Eigen::Index line = 0; line < lines; ++line) {
    for (Eigen::Index i = 0; i < len; ++i) {
      if (!ok(line, i)) continue;
      const bool left = i > 0 && ok(line, i - 1);
      const bool right = i + 1 < len && ok(line, i + 1);
      cplx d;
      if (left && right) {
        const double h1 = axis[i] - axis[i - 1];
        const double h2 = axis[i + 1] - axis[i];
        const cplx d1 = std::log(at(line, i) / at(line, i - 1));
        const cplx d2 = std::log(at(line, i + 1) / at(line, i));
        d = (h2 / (h1 * (h1 + h2))) * d1 + (h1 / (h2 * (h1 + h2))) * d2;
      } else if (right) {
        d = std::log(at(line, i + 1) / at(line, i)) / (axis[i + 1] - axis[i]);
      } else if (left) {
        d = std::log(at(line, i) / at(line, i - 1)) / (axis[i] - axis[i - 1]);
      } else {
        continue;
      }
      (rows ? out(i, line) : out(line, i)) = d;
    }
  }
  return out;
}

Eigen::MatrixXd jacobian_determinant(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, const Mask& mask,
                                     std::span<const double> row_axis, std::span<const double> col_axis) {
  const Eigen::Index rows = x.rows();
  const Eigen::Index cols = x.cols();
  Eigen::MatrixXd det = Eigen::MatrixXd::Constant(rows, cols, std::numeric_limits<double>::quiet_NaN());

  std::vector<double> bufx(std::max(rows, cols)), bufy(std::max(rows, cols));
  auto bufv = std::make_unique<bool[]>(static_cast<std::size_t>(std::max(rows, cols)));
  Eigen::MatrixXd dx_dr = det, dy_dr = det, dx_dc = det, dy_dc = det;

  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) {
      bufx[r] = x(r, c);
      bufy[r] = y(r, c);
      bufv[r] = mask(r, c);
    }
    std::span<const bool> valid(bufv.get(), static_cast<std::size_t>(rows));
    for (Eigen::Index r = 0; r < rows; ++r) {
      auto gx = axis_derivative(row_axis, std::span<const double>(bufx.data(), rows), valid, static_cast<std::size_t>(r));
      auto gy = axis_derivative(row_axis, std::span<const double>(bufy.data(), rows), valid, static_cast<std::size_t>(r));
      if (gx && gy) {
        dx_dr(r, c) = *gx;
        dy_dr(r, c) = *gy;
      }
    }
  }
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      bufx[c] = x(r, c);
      bufy[c] = y(r, c);
      bufv[c] = mask(r, c);
    }
    std::span<const bool> valid(bufv.get(), static_cast<std::size_t>(cols));
    for (Eigen::Index c = 0; c < cols; ++c) {
      auto gx = axis_derivative(col_axis, std::span<const double>(bufx.data(), cols), valid, static_cast<std::size_t>(c));
      auto gy = axis_derivative(col_axis, std::span<const double>(bufy.data(), cols), valid, static_cast<std::size_t>(c));
      if (gx && gy) {
        dx_dc(r, c) = *gx;
        dy_dc(r, c) = *gy;
      }
    }
  }
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      if (mask(r, c)) det(r, c) = dx_dr(r, c) * dy_dc(r, c) - dx_dc(r, c) * dy_dr(r, c);
    }
  }
  return det;
}

namespace {

std::optional<std::size_t> nearest_from_position(double pos, std::size_t n, bool clamp) {
  if (!std::isfinite(pos)) return std::nullopt;
  const double last = static_cast<double>(n) - 1.0;
  if (!clamp && (pos < -0.5 || pos > last + 0.5)) return std::nullopt;
  double idx = std::ceil(pos - 0.5);
  idx = std::clamp(idx, 0.0, last);
  return static_cast<std::size_t>(idx);
}

}  // namespace

std::optional<std::size_t> nearest_uniform(std::span<const double> axis, double value, bool clamp) {
  if (axis.empty()) return std::nullopt;
  if (axis.size() == 1) return (clamp || value == axis[0]) ? std::optional<std::size_t>(0) : std::nullopt;
  const double step = (axis.back() - axis.front()) / static_cast<double>(axis.size() - 1);
  return nearest_from_position((value - axis.front()) / step, axis.size(), clamp);
}

std::optional<std::size_t> nearest_geometric(std::span<const double> axis, double value, bool clamp) {
  if (axis.empty() || !(value > 0.0)) return clamp && !axis.empty() ? std::optional<std::size_t>(0) : std::nullopt;
  if (axis.size() == 1) return clamp ? std::optional<std::size_t>(0) : std::nullopt;
  const double step = std::log(axis.back() / axis.front()) / static_cast<double>(axis.size() - 1);
  return nearest_from_position(std::log(value / axis.front()) / step, axis.size(), clamp);
}

}  // namespace tfr
