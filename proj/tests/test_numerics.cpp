// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tfreassign contributors

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "tfr/numerics.hpp"

using namespace tfr;

TEST_CASE("median and phase wrapping") {
  CHECK(median({3.0, 1.0, 2.0}) == 2.0);
  CHECK(median({4.0, 1.0, 2.0, 3.0}) == 2.5);
  CHECK(std::isnan(median({})));
  CHECK(wrap_phase(3.0 * std::numbers::pi) == doctest::Approx(std::numbers::pi));
  CHECK(wrap_phase(-std::numbers::pi) == doctest::Approx(std::numbers::pi));
  CHECK(wrap_phase(0.25) == doctest::Approx(0.25));
}

TEST_CASE("masks") {
  Eigen::MatrixXcd v(1, 4);
  v << 1.0, 0.1, 0.05, 0.0;
  const Mask e = energetic_mask(v, 0.1);
  CHECK(e(0, 0));
  CHECK(e(0, 1));
  CHECK_FALSE(e(0, 2));
  const Mask m = magnitude_mask(v, 0.1);
  CHECK_FALSE(m(0, 1));
  CHECK(magnitude_mask(Eigen::MatrixXcd::Zero(2, 2), 0.0).count() == 0);
}

TEST_CASE("renyi entropy of simple distributions") {
  // Uniform energy over N cells has entropy log2 N for every order.
  const Eigen::MatrixXcd u = Eigen::MatrixXcd::Constant(4, 8, cplx(0.3, 0.4));
  CHECK(renyi_entropy(u, 3.0) == doctest::Approx(5.0));
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(4, 8);
  d(1, 2) = 7.0;
  CHECK(renyi_entropy(d, 3.0) == doctest::Approx(0.0));
  // Two cells with energies p, 1 - p: (1/(1-a)) log2(p^a + (1-p)^a).
  Eigen::MatrixXcd two = Eigen::MatrixXcd::Zero(1, 2);
  two(0, 0) = std::sqrt(0.8);
  two(0, 1) = std::sqrt(0.2);
  CHECK(renyi_entropy(two, 3.0) == doctest::Approx(-0.5 * std::log2(0.512 + 0.008)));
}

TEST_CASE("non-uniform derivative is exact for quadratics") {
  const std::vector<double> x = {0.0, 0.1, 0.35, 0.4, 1.0};
  std::vector<double> f;
  for (double v : x) f.push_back(2.0 * v * v - v + 3.0);
  const bool valid[5] = {true, true, true, true, true};
  for (std::size_t i = 1; i + 1 < x.size(); ++i) {
    const auto d = axis_derivative(x, f, valid, i);
    REQUIRE(d);
    CHECK(*d == doctest::Approx(4.0 * x[i] - 1.0));
  }
  const bool holes[5] = {true, true, false, true, true};
  CHECK_FALSE(axis_derivative(x, f, holes, 2));
  // Next to a hole the one-sided difference is used.
  const auto one_sided = axis_derivative(x, f, holes, 1);
  REQUIRE(one_sided);
  CHECK(*one_sided == doctest::Approx((f[1] - f[0]) / 0.1));
}

TEST_CASE("log derivative of an exponential ramp") {
  // V = exp((0.5 + 3 i) t) along columns; the derivative of log V is constant.
  const int n = 40;
  std::vector<double> t(n);
  Eigen::MatrixXcd v(2, n);
  for (int j = 0; j < n; ++j) {
    t[j] = 0.05 * j;
    v(0, j) = std::exp(cplx(0.5, 3.0) * t[j]);
    v(1, j) = 2.0 * v(0, j);
  }
  const Mask all = Mask::Constant(2, n, true);
  const Eigen::MatrixXcd d = log_derivative(v, t, GridDirection::cols, all);
  for (int j = 0; j < n; ++j) CHECK(std::abs(d(0, j) - cplx(0.5, 3.0)) < 1e-9);
  // Phase steps of 0.15 rad per sample pass without unwrapping.
  Mask hole = all;
  hole(0, 5) = false;
  const Eigen::MatrixXcd d2 = log_derivative(v, t, GridDirection::cols, hole);
  CHECK(std::isnan(d2(0, 5).real()));
}

TEST_CASE("jacobian of a linear map") {
  const std::vector<double> rows = {0.0, 1.0, 2.0, 3.0};
  const std::vector<double> cols = {0.0, 0.5, 1.0};
  Eigen::MatrixXd x(4, 3), y(4, 3);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 3; ++c) {
      x(r, c) = 2.0 * rows[r] + 1.0 * cols[c];
      y(r, c) = -1.0 * rows[r] + 3.0 * cols[c];
    }
  }
  const Eigen::MatrixXd j = jacobian_determinant(x, y, Mask::Constant(4, 3, true), rows, cols);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 3; ++c) CHECK(j(r, c) == doctest::Approx(2.0 * 3.0 - 1.0 * (-1.0)));
  }
}

TEST_CASE("nearest bins") {
  const std::vector<double> u = {0.0, 1.0, 2.0, 3.0};
  CHECK(*nearest_uniform(u, 1.4, false) == 1);
  CHECK(*nearest_uniform(u, 1.5, false) == 1);
  CHECK_FALSE(nearest_uniform(u, 3.6, false));
  CHECK(*nearest_uniform(u, 3.6, true) == 3);
  const std::vector<double> g = {1.0, 2.0, 4.0, 8.0};
  CHECK(*nearest_geometric(g, 2.9, false) == 2);
  CHECK(*nearest_geometric(g, 2.7, false) == 1);
  CHECK_FALSE(nearest_geometric(g, 0.5, false));
  CHECK(*nearest_geometric(g, 100.0, true) == 3);
}
