// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tfreassign contributors

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "tfr/cwt.hpp"
#include "tfr/numerics.hpp"
#include "tfr/scalogram_reassign.hpp"

using namespace tfr;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRate = 1000.0;
constexpr std::size_t kN = 2048;
const double kNu0 = 2.0 * kPi * kRate * 128.0 / kN;  // whole cycles over the record

Signal cosine() { return gen_cosine(kNu0, 1.0, kN, kRate); }

Signal click() {
  const double half = static_cast<double>(kN / 2) / kRate;
  const Signal c = gen_click(half, kN, kRate);
  return Signal(std::vector<double>(c.samples().begin(), c.samples().end()), kRate, -half);
}

Signal chirp() { return gen_chirp(2.0 * kPi * 40.0, 2.0 * kPi * 200.0, kN, kRate); }

std::vector<double> scales(double lo, double hi, int voices = 16) { return geometric_scales(lo / kRate, hi / kRate, voices); }

// Largest |a_hat/a - 1| and |t_hat - t| / dt on the line t = a beta.
std::pair<double, double> click_errors(const ExtremalParams& p) {
  const auto sc = scales(1.0, 60.0);
  const auto m = map_Tbeta(cwt_log_derivatives(click(), AnalyticWavelet::extremal(p), sc), p);
  double ws = 0.0, wt = 0.0;
  for (Eigen::Index i = 0; i < m.mask.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.mask.cols(); ++j) {
      if (!(std::abs(m.times[j] - sc[i] * p.beta) < 0.999 / kRate)) continue;
      REQUIRE(m.mask(i, j));
      ws = std::max(ws, std::abs(m.a_hat(i, j) / sc[i] - 1.0));
      wt = std::max(wt, std::abs(m.t_hat(i, j) - m.times[j]) * kRate);
    }
  }
  return {ws, wt};
}

}  // namespace

TEST_CASE("cosine maps to its scale and shifted time") {
  const auto sc = scales(0.5, 20.0);
  ExtremalParams p;
  const auto wa = AnalyticWavelet::extremal(p);
  const auto ld = cwt_log_derivatives(cosine(), wa, sc);
  for (const ScaleTimeMap& m : {map_T(ld), map_Tbeta(ld, p)}) {
    CHECK(m.mask.count() > 0);
    for (Eigen::Index i = 0; i < m.mask.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.mask.cols(); j += 17) {
        if (!m.mask(i, j)) continue;
        CHECK(std::abs(1.0 / m.a_hat(i, j) - kNu0) < 1e-6 * kNu0);
        CHECK(std::abs(m.t_hat(i, j) - m.times[j]) < 1e-3 * sc[i]);
      }
    }
  }
  ExtremalParams q{0.0, 0.7, 3.0 / kRate, 2.0, 1.0, 1.0};
  const auto ldq = cwt_log_derivatives(cosine(), AnalyticWavelet::extremal(q), sc);
  const ScaleTimeMap m = map_Tbeta(ldq, q);
  CHECK(m.method == MapMethod::phase_Tbeta);
  for (Eigen::Index i = 0; i < m.mask.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.mask.cols(); j += 17) {
      if (!m.mask(i, j)) continue;
      CHECK(std::abs(1.0 / m.a_hat(i, j) - kNu0) < 1e-6 * kNu0);
      CHECK(std::abs(m.t_hat(i, j) - (m.times[j] - sc[i] * q.alpha)) < 1e-3 * sc[i]);
    }
  }
}

TEST_CASE("click localization depends on kappa") {
  ExtremalParams sharp;
  sharp.kappa = 8.0;
  for (double beta : {0.0, 0.05}) {
    sharp.beta = beta;
    const auto [ws, wt] = click_errors(sharp);
    CHECK(ws < 0.1);
    CHECK(wt < 2.0);
  }
  // On the click line a~/a = gamma / (kappa nu + 1/2), which is 0.8 for the default wavelet.
  const auto [ws, wt] = click_errors({});
  CHECK(ws == doctest::Approx(0.2).epsilon(0.05));
  CHECK(wt < 2.0);
}

TEST_CASE("structure equation") {
  const auto sc = scales(0.5, 20.0);
  for (const Signal& f : {cosine(), chirp()}) {
    ExtremalParams p{0.0, 0.4, 2.0 / kRate, 2.0, 1.0, 1.0};
    const auto r = structure_residual(cwt_log_derivatives(f, AnalyticWavelet::extremal(p), sc), p);
    CHECK(r.region.count() > 100);
    CHECK(r.median_abs < 1e-2);
    CHECK(r.median_abs_fd < 1e-2);
    CHECK(std::abs(r.fitted_constant - cplx(2.0, -0.4)) < 1e-2);
    CHECK(std::abs(r.constant - cplx(2.0, -0.4)) < 1e-12);
  }
  ExtremalParams c2;
  c2.c = 2.0;
  const auto r2 = structure_residual(cwt_log_derivatives(chirp(), AnalyticWavelet::extremal(c2), sc), c2);
  CHECK(std::isfinite(r2.median_abs));
  CHECK(r2.median_abs > 1e-2);
}

TEST_CASE("holomorphic part of a cosine") {
  const auto sc = scales(0.5, 20.0);
  const ExtremalParams p;
  const auto h = extract_holomorphic(cwt(cosine(), AnalyticWavelet::extremal(p), sc), p);
  CHECK(h.median_cr_ratio < 1e-2);
  std::vector<double> err;
  for (Eigen::Index i = 0; i < h.energetic.rows(); ++i) {
    for (Eigen::Index j = 0; j < h.energetic.cols(); ++j) {
      if (h.energetic(i, j) && h.mask(i, j)) err.push_back(std::abs(h.df_dz(i, j) - cplx(0.0, kNu0)) / kNu0);
    }
  }
  REQUIRE(!err.empty());
  CHECK(median(err) < 1e-3);
  CHECK(holomorphic_variable(0.01, 0.5, p) == cplx(0.5, 0.02));
}

TEST_CASE("holomorphic part of a click") {
  // For an impulse F(z) = const - p log z with p = kappa nu + 1/2 - i alpha, so z dF/dz = -p.
  const auto sc = scales(1.0, 40.0);
  const ExtremalParams p{0.0, 0.3, 0.0, 2.0, 1.0, 1.0};
  const auto h = extract_holomorphic(cwt(click(), AnalyticWavelet::extremal(p), sc), p);
  const cplx want(-(p.kappa * p.nu + 0.5), p.alpha);
  std::vector<double> err;
  for (Eigen::Index i = 0; i < h.energetic.rows(); ++i) {
    for (Eigen::Index j = 0; j < h.energetic.cols(); ++j) {
      if (!h.energetic(i, j) || !h.mask(i, j)) continue;
      err.push_back(std::abs(holomorphic_variable(sc[i], h.times[j], p) * h.df_dz(i, j) - want) / std::abs(want));
    }
  }
  REQUIRE(err.size() > 20);
  CHECK(median(err) < 5e-2);
}

TEST_CASE("maps agree on a chirp") {
  const auto sc = scales(0.5, 20.0);
  const ExtremalParams p{0.0, 0.3, 2.0 / kRate, 2.0, 1.0, 1.0};
  const auto ld = cwt_log_derivatives(chirp(), AnalyticWavelet::extremal(p), sc);
  const ScaleTimeMap a = map_Tbeta(ld, p), b = map_amplitude(ld, p), c = map_holomorphic(extract_holomorphic(ld.transform, p), p);
  CHECK(b.method == MapMethod::amplitude);
  CHECK(c.method == MapMethod::holomorphic);
  const Mask e = energetic_mask(ld.transform.values(), 0.1);
  for (const ScaleTimeMap* other : {&b, &c}) {
    std::vector<double> ds, dt;
    for (Eigen::Index i = 0; i < e.rows(); ++i) {
      for (Eigen::Index j = 0; j < e.cols(); ++j) {
        if (!e(i, j) || !a.mask(i, j) || !other->mask(i, j)) continue;
        ds.push_back(sc[i] * std::abs(1.0 / a.a_hat(i, j) - 1.0 / other->a_hat(i, j)));
        dt.push_back(std::abs(a.t_hat(i, j) - other->t_hat(i, j)) / sc[i]);
      }
    }
    REQUIRE(ds.size() > 100);
    CHECK(median(ds) < 5e-2);
    CHECK(median(dt) < 5e-2);
  }
}

TEST_CASE("amplitude scaling leaves the maps unchanged") {
  const auto sc = scales(1.0, 16.0, 8);
  const ExtremalParams p;
  const auto w = AnalyticWavelet::extremal(p);
  const Signal f = chirp();
  std::vector<double> big(f.samples().begin(), f.samples().end());
  for (auto& x : big) x *= 37.0;
  const auto ld = cwt_log_derivatives(f, w, sc);
  const auto m1 = map_amplitude(ld, p);
  const auto m2 = map_amplitude(cwt_log_derivatives(Signal(big, kRate), w, sc), p);
  const Mask e = energetic_mask(ld.transform.values(), 0.1);
  for (Eigen::Index i = 0; i < m1.mask.rows(); ++i) {
    for (Eigen::Index j = 0; j < m1.mask.cols(); j += 7) {
      if (!e(i, j)) continue;
      CHECK(m1.mask(i, j) == m2.mask(i, j));
      if (!m1.mask(i, j) || !m2.mask(i, j)) continue;
      CHECK(m1.a_hat(i, j) == doctest::Approx(m2.a_hat(i, j)).epsilon(1e-9));
      CHECK(m1.t_hat(i, j) == doctest::Approx(m2.t_hat(i, j)).epsilon(1e-9));
    }
  }
}

TEST_CASE("reassignment concentrates energy") {
  const auto sc = scales(1.0, 64.0);
  const ExtremalParams p;
  const auto w = AnalyticWavelet::extremal(p);
  SUBCASE("cosine near its ridge") {
    const auto ld = cwt_log_derivatives(cosine(), w, sc);
    const auto m = map_Tbeta(ld, p);
    const ComplexGrid out = reassign_scalogram(ld.transform, m, w, ld.transform.time_axis(), sc);
    const auto k = static_cast<Eigen::Index>(*nearest_geometric(sc, 1.0 / kNu0, true));
    const Eigen::MatrixXd e = out.values().cwiseAbs2();
    CHECK(e.middleRows(k - 1, 3).sum() / e.sum() >= 0.9);
    CHECK(renyi_entropy(out.values(), 3.0) < renyi_entropy(ld.transform.values(), 3.0));
    CHECK(out.descriptor()["reassignment"]["kernel"] == "closed_form");
  }
  SUBCASE("click near its time") {
    // A three-octave scale range keeps the spread of the click's reassigned times small.
    const auto narrow = scales(2.0, 16.0);
    const auto ld = cwt_log_derivatives(click(), w, narrow);
    const auto m = map_Tbeta(ld, p);
    const ComplexGrid out = reassign_scalogram(ld.transform, m, w, ld.transform.time_axis(), narrow);
    const Eigen::MatrixXd e = out.values().cwiseAbs2();
    CHECK(e.middleCols(kN / 2 - 2, 5).sum() / e.sum() >= 0.8);
    CHECK(renyi_entropy(out.values(), 3.0) < renyi_entropy(ld.transform.values(), 3.0));
  }
  SUBCASE("dropped scales are counted") {
    const auto ld = cwt_log_derivatives(cosine(), w, sc);
    const auto m = map_Tbeta(ld, p);
    const std::vector<double> small(sc.begin(), sc.begin() + 16);
    const ComplexGrid out = reassign_scalogram(ld.transform, m, w, ld.transform.time_axis(), small);
    CHECK(out.rows() == 16);
    CHECK(out.descriptor()["reassignment"]["dropped_scales"].get<long>() > 0);
  }
}

TEST_CASE("zero signal is fully masked") {
  const auto sc = scales(1.0, 16.0, 8);
  const ExtremalParams p;
  const auto w = AnalyticWavelet::extremal(p);
  const auto ld = cwt_log_derivatives(Signal(std::vector<double>(kN, 0.0), kRate), w, sc);
  CHECK(ld.mask.count() == 0);
  const auto m = map_T(ld);
  CHECK(m.mask.count() == 0);
  CHECK(reassign_scalogram(ld.transform, m, w, ld.transform.time_axis(), sc).max_abs() == 0.0);
}

TEST_CASE("non-extremal wavelet") {
  const auto sc = scales(1.0, 16.0, 8);
  const auto w = AnalyticWavelet::morlet(6.0);
  const auto ld = cwt_log_derivatives(cosine(), w, sc);
  const auto m = map_amplitude(ld, {});
  CHECK(m.notes.contains("warning"));
  const auto t = map_T(ld);
  CHECK(t.mask.count() > 0);
  const ComplexGrid out = reassign_scalogram(ld.transform, t, w, ld.transform.time_axis(), sc);
  CHECK(out.descriptor()["reassignment"]["kernel"] == "table");
  CHECK(to_string(MapMethod::phase_T) == "phase_T");
}
