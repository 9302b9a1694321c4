// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tfreassign contributors

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "tfr/signal.hpp"

namespace tfr {

/// Median of the values; NaN for an empty input.
double median(std::vector<double> values);

/// Wraps an angle into (-pi, pi].
double wrap_phase(double angle);

/// Points whose magnitude is at least `fraction` of the grid maximum.
Mask energetic_mask(const Eigen::MatrixXcd& values, double fraction);

/// Points whose magnitude is strictly above `fraction` of the grid maximum
/// (an all-zero grid yields an empty mask).
Mask magnitude_mask(const Eigen::MatrixXcd& values, double fraction);

/// Renyi entropy (base 2) of the normalized energy distribution |v|^2 / sum |v|^2.
double renyi_entropy(const Eigen::MatrixXcd& values, double order);

/// Derivative of `f` sampled on the non-uniform `axis` at index i, using the
/// three-point second-order formula in the interior and a one-sided difference
/// at the ends. Returns nullopt when the stencil would use an invalid sample.
std::optional<double> axis_derivative(std::span<const double> axis, std::span<const double> f,
                                      std::span<const bool> valid, std::size_t i);

/// Same stencil for complex samples.
std::optional<cplx> axis_derivative(std::span<const double> axis, std::span<const cplx> f,
                                    std::span<const bool> valid, std::size_t i);

enum class GridDirection { rows, cols };

/// Derivative of log V along the row axis (second axis) or the column axis
/// (time), from principal logarithms of neighbor ratios so that no unwrapping is
/// needed. Same stencil rules as axis_derivative; NaN where unavailable.
Eigen::MatrixXcd log_derivative(const Eigen::MatrixXcd& values, std::span<const double> axis, GridDirection along,
                                const Mask& mask);

/// Signed Jacobian determinant of the map (r, c) -> (X, Y) where rows follow
/// `row_axis` and columns follow `col_axis`:
///   det [[dX/d row, dX/d col], [dY/d row, dY/d col]].
/// Central differences inside, one-sided at borders and next to masked points;
/// NaN where no valid stencil exists.
Eigen::MatrixXd jacobian_determinant(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, const Mask& mask,
                                     std::span<const double> row_axis, std::span<const double> col_axis);

/// Nearest index on a uniform axis; ties go to the smaller index. Returns nullopt
/// outside [axis.front() - step/2, axis.back() + step/2] unless `clamp` is set.
std::optional<std::size_t> nearest_uniform(std::span<const double> axis, double value, bool clamp);

/// Nearest index on a geometric axis (uniform in log); same tie and range rules.
std::optional<std::size_t> nearest_geometric(std::span<const double> axis, double value, bool clamp);

}  // namespace tfr
