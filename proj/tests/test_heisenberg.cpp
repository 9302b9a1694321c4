// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tfreassign contributors

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "tfr/heisenberg.hpp"

using namespace tfr;

namespace {

bool same(const HeisenbergPoint& a, const HeisenbergPoint& b) {
  return std::abs(a.s - b.s) < 1e-12 && std::abs(a.xi - b.xi) < 1e-12 && std::abs(a.z - b.z) < 1e-12;
}

ComplexSignal bump(std::size_t n, double rate) {
  std::vector<cplx> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / rate - 0.5 * static_cast<double>(n) / rate;
    x[i] = std::exp(-t * t / 0.002) * std::polar(1.0, 90.0 * t);
  }
  return ComplexSignal(x, rate, -0.5 * static_cast<double>(n) / rate);
}

}  // namespace

TEST_CASE("group law") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int k = 0; k < 20; ++k) {
    const HeisenbergPoint a{u(rng), u(rng), u(rng)}, b{u(rng), u(rng), u(rng)}, c{u(rng), u(rng), u(rng)};
    CHECK(same(heisenberg_mul(heisenberg_mul(a, b), c), heisenberg_mul(a, heisenberg_mul(b, c))));
    CHECK(same(heisenberg_mul(a, heisenberg_inverse(a)), {}));
    CHECK(same(heisenberg_mul(heisenberg_inverse(a), a), {}));
  }
  const HeisenbergPoint p = heisenberg_mul({1.0, 0.0, 0.0}, {0.0, 1.0, 0.0});
  CHECK(p.z == doctest::Approx(-0.5));
}

TEST_CASE("action on samples follows the definition") {
  const double rate = 100.0;
  const ComplexSignal f = bump(64, rate);
  const HeisenbergPoint x{3.0 / rate, 7.0, 0.4};
  const ComplexSignal g = schroedinger_action(x, f);
  for (std::size_t i = 3; i < f.size(); ++i) {
    const double t = f.time(i);
    const cplx want = std::polar(1.0, x.z + x.xi * (t - 0.5 * x.s)) * f[i - 3];
    CHECK(std::abs(g[i] - want) < 1e-14);
  }
  CHECK(std::abs(g[0]) == 0.0);
}

TEST_CASE("action is a representation on whole-sample shifts") {
  const double rate = 200.0;
  const ComplexSignal f = bump(256, rate);
  const HeisenbergPoint a{5.0 / rate, 12.0, 0.1}, b{-2.0 / rate, -4.0, 1.3};
  const ComplexSignal lhs = schroedinger_action(a, schroedinger_action(b, f));
  const ComplexSignal rhs = schroedinger_action(heisenberg_mul(a, b), f);
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(std::abs(lhs[i] - rhs[i]) < 1e-12);
}

TEST_CASE("band-limited interpolation") {
  const double rate = 64.0;
  const std::size_t n = 64;
  std::vector<cplx> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = std::polar(1.0, 2.0 * std::numbers::pi * 5.0 * i / rate);
  const ComplexSignal f(x, rate);
  const std::vector<double> times = {0.0, 0.3, 0.51234, 63.0 / rate};
  const auto v = bandlimited_values(f, times);
  for (std::size_t k = 0; k < times.size(); ++k) {
    CHECK(std::abs(v[k] - std::polar(1.0, 2.0 * std::numbers::pi * 5.0 * times[k])) < 1e-12);
  }
  const auto outside = bandlimited_values(f, std::vector<double>{-0.5, 2.0});
  CHECK(std::abs(outside[0]) == 0.0);
  CHECK(std::abs(outside[1]) == 0.0);
}

TEST_CASE("fractional shift of a smooth pulse") {
  const double rate = 400.0;
  const ComplexSignal f = bump(512, rate);
  const double s = 0.37 / rate;
  const ComplexSignal g = schroedinger_action({s, 0.0, 0.0}, f);
  for (std::size_t i = 100; i < 400; ++i) {
    const double t = f.time(i) - s;
    const cplx want = std::exp(-t * t / 0.002) * std::polar(1.0, 90.0 * t);
    CHECK(std::abs(g[i] - want) < 1e-9);
  }
}
