// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tfreassign contributors

#include <doctest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/tools/minima.hpp>
#include <cmath>

#include "tfr/extremal.hpp"

using namespace tfr;

namespace {

// Integrals over (0, inf) by a double-exponential rule.
template <class F>
double half_line(F f) {
  boost::math::quadrature::exp_sinh<double> rule;
  return rule.integrate(f, 1e-13);
}

std::vector<ExtremalParams> samples() {
  std::vector<ExtremalParams> out;
  out.push_back({});
  out.push_back({0.3, 0.5, 0.002, 2.0, 1.0, 1.0});
  out.push_back({0.0, 0.0, 0.0, 8.0, 1.0, 1.0});
  out.push_back({0.0, -0.4, 0.01, 1.5, 0.7, 2.0});
  out.push_back({0.0, 0.0, 0.0, 3.0, 1.2, 1.5});
  return out;
}

}  // namespace

TEST_CASE("normalization gives a unit-norm wavelet") {
  for (const auto& p : samples()) {
    const auto w = AnalyticWavelet::extremal(p);
    const double e = half_line([&](double x) { return std::norm(w.spectrum(x)); });
    CHECK(e == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(w.norm_check() == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("spectrum follows the closed form") {
  const ExtremalParams p{0.3, 0.5, 0.002, 2.0, 1.0, 1.0};
  const double k = extremal_normalization(p);
  for (double x : {0.1, 1.0, 3.7}) {
    const cplx h = k * std::polar(1.0, p.epsilon - p.alpha * std::log(x) - p.beta * x) * std::exp(-p.kappa * x) *
                   std::pow(x, p.kappa * p.nu - 0.5);
    CHECK(std::abs(extremal_spectrum(p, x) - h) < 1e-14);
    CHECK(std::abs(AnalyticWavelet::extremal(p).spectrum(x) - 2.0 * std::conj(h)) < 1e-13);
  }
  CHECK(std::abs(extremal_spectrum(p, 0.0)) == 0.0);
  CHECK(std::abs(AnalyticWavelet::extremal(p).spectrum(-1.0)) == 0.0);
}

TEST_CASE("admissibility and reconstruction constants") {
  for (const auto& p : samples()) {
    const auto w = AnalyticWavelet::extremal(p);
    const double c = half_line([&](double x) { return std::abs(w.spectrum(x)) / x; });
    const double cp = half_line([&](double x) { return std::norm(w.spectrum(x)) / x; });
    CHECK(admissibility_constant(w) == doctest::Approx(c).epsilon(1e-8));
    CHECK(reconstruction_constant(w) == doctest::Approx(cp).epsilon(1e-8));
  }
  const auto m = AnalyticWavelet::morlet(6.0);
  const double cp = half_line([&](double x) { return std::norm(m.spectrum(x)) / x; });
  CHECK(reconstruction_constant(m) == doctest::Approx(cp).epsilon(1e-6));
}

TEST_CASE("peak frequency maximizes the spectrum") {
  for (const auto& p : samples()) {
    const auto w = AnalyticWavelet::extremal(p);
    const auto [x, v] = boost::math::tools::brent_find_minima([&](double y) { return -std::abs(w.spectrum(y)); },
                                                              1e-3, 20.0, 40);
    CHECK(extremal_peak_frequency(p) == doctest::Approx(x).epsilon(1e-6));
    CHECK(w.peak_frequency() == doctest::Approx(x).epsilon(1e-6));
    const auto [lo, hi] = w.spectral_support(1e-3);
    CHECK(std::abs(w.spectrum(lo)) == doctest::Approx(-1e-3 * v).epsilon(1e-6));
    CHECK(std::abs(w.spectrum(hi)) == doctest::Approx(-1e-3 * v).epsilon(1e-6));
  }
  const auto m = AnalyticWavelet::morlet(6.0);
  CHECK(m.peak_frequency() == doctest::Approx(6.0).epsilon(1e-6));
  CHECK(m.norm_check() == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("scale log-derivative") {
  auto g = [](const AnalyticWavelet& w, double x) { return std::log(std::sqrt(x) * w.analysis_filter(x)); };
  for (const auto& p : samples()) {
    const auto w = AnalyticWavelet::extremal(p);
    for (double x : {0.2, 0.9, 2.5}) {
      const double e = 1e-6 * x;
      const cplx fd = x * (g(w, x + e) - g(w, x - e)) / (2.0 * e);
      const cplx got = w.scale_log_derivative(x);
      CHECK(std::abs(got - fd) < 1e-6 * (1.0 + std::abs(fd)));
      const cplx closed(p.kappa * p.nu - p.kappa * std::pow(x, p.c), -p.alpha - p.beta * x);
      CHECK(std::abs(got - closed) < 1e-12);
    }
  }
  const auto m = AnalyticWavelet::morlet(6.0);
  const double x = 5.0, e = 1e-6;
  const cplx fd = x * (g(m, x + e) - g(m, x - e)) / (2.0 * e);
  CHECK(std::abs(m.scale_log_derivative(x) - fd) < 1e-6);
}

TEST_CASE("structure constant") {
  CHECK(structure_constant({}) == 2.0);
  ExtremalParams p;
  p.kappa = 3.0;
  p.nu = 1.5;
  CHECK(structure_constant(p) == doctest::Approx(4.5));
  p.c = 2.0;
  CHECK(structure_constant(p) == doctest::Approx(3.0 * 2.5));
}

TEST_CASE("parameter validation and json") {
  ExtremalParams p;
  p.kappa = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = {};
  p.kappa = 0.5;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = {};
  p.c = 0.5;
  CHECK_THROWS_AS(AnalyticWavelet::extremal(p), std::invalid_argument);
  CHECK_THROWS_AS(AnalyticWavelet::morlet(-1.0), std::invalid_argument);

  const ExtremalParams q{0.1, 0.2, 0.003, 4.0, 0.9, 1.5};
  const ExtremalParams r = ExtremalParams::from_json(q.to_json());
  CHECK(r.epsilon == q.epsilon);
  CHECK(r.beta == q.beta);
  CHECK(r.c == q.c);
  CHECK(ExtremalParams::from_json({{"kappa", 8.0}}).nu == 1.0);
  CHECK(AnalyticWavelet::extremal(q).descriptor()["family"] == "extremal");
  CHECK_FALSE(AnalyticWavelet::morlet(6.0).params());
}
