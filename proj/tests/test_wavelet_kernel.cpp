// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tfreassign contributors

#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "tfr/wavelet_kernel.hpp"

using namespace tfr;

namespace {

// sqrt(a) integral psi^(w) conj(psi^(a w)) exp(i b w) dw on (0, upper).
cplx spectral(const AnalyticWavelet& w, double a, double b, double upper) {
  auto g = [&](double x) { return std::sqrt(a) * w.spectrum(x) * std::conj(w.spectrum(a * x)) * std::polar(1.0, b * x); };
  using boost::math::quadrature::gauss_kronrod;
  const double re = gauss_kronrod<double, 61>::integrate([&](double x) { return g(x).real(); }, 0.0, upper, 15, 1e-13);
  const double im = gauss_kronrod<double, 61>::integrate([&](double x) { return g(x).imag(); }, 0.0, upper, 15, 1e-13);
  return {re, im};
}

const std::vector<std::pair<double, double>> kPoints = {{1.0, 0.0}, {1.0, 1.5}, {0.7, -2.0}, {1.6, 0.4}, {2.5, 6.0}};

}  // namespace

TEST_CASE("closed form against spectral quadrature") {
  for (const ExtremalParams& p : {ExtremalParams{}, ExtremalParams{0.2, 0.5, 0.3, 2.0, 1.0, 1.0},
                                  ExtremalParams{0.0, 0.0, 0.0, 8.0, 1.0, 1.0}}) {
    const auto w = AnalyticWavelet::extremal(p);
    const WaveletKernel k(w);
    CHECK(k.method() == WaveletKernel::Method::closed_form);
    for (auto [a, b] : kPoints) {
      const cplx want = spectral(w, a, b, 80.0);
      CHECK(std::abs(k(a, b) - want) < 1e-9);
    }
    CHECK(std::abs(k(1.0, 0.0) - 1.0) < 1e-12);
  }
}

TEST_CASE("table against the closed form") {
  const ExtremalParams p{0.0, 0.4, 0.2, 2.0, 1.0, 1.0};
  const auto w = AnalyticWavelet::extremal(p);
  const WaveletKernel closed(w);
  const WaveletKernel table(w, WaveletKernel::Method::table);
  CHECK(table.method() == WaveletKernel::Method::table);
  for (auto [a, b] : kPoints) CHECK(std::abs(table(a, b) - closed(a, b)) < 5e-3);
}

TEST_CASE("table for other wavelets against quadrature") {
  const auto m = AnalyticWavelet::morlet(6.0);
  const WaveletKernel k(m);
  CHECK(k.method() == WaveletKernel::Method::table);
  for (auto [a, b] : std::vector<std::pair<double, double>>{{1.0, 0.0}, {1.05, 0.3}, {0.9, -0.5}}) {
    CHECK(std::abs(k(a, b) - spectral(m, a, b, 20.0)) < 5e-3);
  }
  ExtremalParams c2;
  c2.c = 2.0;
  const auto w2 = AnalyticWavelet::extremal(c2);
  const WaveletKernel k2(w2);
  CHECK(k2.method() == WaveletKernel::Method::table);
  for (auto [a, b] : kPoints) CHECK(std::abs(k2(a, b) - spectral(w2, a, b, 20.0)) < 5e-3);
}

TEST_CASE("closed form is limited to c = 1 extremals") {
  CHECK_THROWS_AS(WaveletKernel(AnalyticWavelet::morlet(6.0), WaveletKernel::Method::closed_form),
                  std::invalid_argument);
  ExtremalParams p;
  p.c = 1.5;
  CHECK_THROWS_AS(WaveletKernel(AnalyticWavelet::extremal(p), WaveletKernel::Method::closed_form),
                  std::invalid_argument);
  CHECK_THROWS(WaveletKernel(AnalyticWavelet::extremal({}))(0.0, 1.0));
  CHECK(std::abs(wavelet_kernel(AnalyticWavelet::extremal({}), 1.0, 0.0) - 1.0) < 1e-12);
}
