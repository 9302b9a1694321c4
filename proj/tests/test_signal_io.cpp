// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tfreassign contributors

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include "tfr/io.hpp"
#include "tfr/signal.hpp"

using namespace tfr;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "tfr_test_signal_io";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("signal invariants") {
  CHECK_THROWS_AS(Signal({}, 100.0), std::invalid_argument);
  CHECK_THROWS_AS(Signal({1.0}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(Signal({1.0, NAN}, 10.0), std::invalid_argument);
  const Signal s({1.0, 2.0, 3.0}, 10.0, -0.5);
  CHECK(s.time(2) == doctest::Approx(-0.3));
  CHECK(s.duration() == doctest::Approx(0.3));
  CHECK(s.norm() == doctest::Approx(std::sqrt(14.0 / 10.0)));
}

TEST_CASE("generators") {
  const double rate = 1000.0;
  SUBCASE("click has unit mass at the requested sample") {
    const Signal c = gen_click(0.25, 1000, rate);
    double sum = 0.0;
    for (double x : c.samples()) sum += x / rate;
    CHECK(sum == doctest::Approx(1.0));
    CHECK(c[250] == rate);
    CHECK_THROWS_AS(gen_click(1.0, 1000, rate), std::invalid_argument);
  }
  SUBCASE("cosine samples") {
    const double w = 2.0 * std::numbers::pi * 50.0;
    const Signal c = gen_cosine(w, 0.5, 64, rate);
    for (std::size_t i = 0; i < c.size(); ++i) CHECK(c[i] == doctest::Approx(0.5 * std::cos(w * i / rate)));
  }
  SUBCASE("aliasing is rejected") {
    CHECK_THROWS_AS(gen_cosine(std::numbers::pi * rate, 1.0, 16, rate), AliasingError);
    CHECK_THROWS_AS(gen_chirp(1.0, 4000.0, 16, rate), AliasingError);
  }
  SUBCASE("chirp instantaneous frequency sweeps linearly") {
    const double f0 = 2.0 * std::numbers::pi * 20.0, f1 = 2.0 * std::numbers::pi * 100.0;
    const std::size_t n = 2001;
    const Signal c = gen_chirp(f0, f1, n, rate);
    // Phase difference between neighbouring samples recovers the frequency.
    const double t = 1.0;
    const double sweep = (f1 - f0) / ((n - 1) / rate);
    const double phase_at = f0 * t + 0.5 * sweep * t * t;
    CHECK(c[1000] == doctest::Approx(std::cos(phase_at)).epsilon(1e-9));
  }
  SUBCASE("tones and gaussian tone") {
    const double f[2] = {100.0, 300.0};
    const double a[2] = {1.0, 0.25};
    const Signal s = gen_tones(f, a, 8, rate);
    CHECK(s[3] == doctest::Approx(std::cos(0.3) + 0.25 * std::cos(0.9)));
    const Signal g = gen_gaussian_tone(0.5, 0.1, 200.0, 1000, rate);
    CHECK(g[500] == doctest::Approx(std::cos(100.0)));
    CHECK(std::abs(g[0]) < 1e-5);
  }
}

TEST_CASE("csv signal roundtrip keeps rate and start time") {
  std::mt19937 rng(3);
  std::normal_distribution<double> nd;
  std::vector<double> x(300);
  for (auto& v : x) v = nd(rng);
  const Signal s(x, 8000.0, -0.125);
  const auto path = scratch("noise.csv");
  write_signal(s, path, SignalFormat::csv);
  const Signal r = read_signal(path, signal_format_from_path(path));
  REQUIRE(r.size() == s.size());
  CHECK(r.sample_rate() == 8000.0);
  CHECK(r.start_time() == -0.125);
  for (std::size_t i = 0; i < s.size(); ++i) CHECK(r[i] == s[i]);
}

TEST_CASE("csv without header needs a rate") {
  const auto path = scratch("bare.csv");
  {
    std::ofstream out(path);
    out << "0.5\n-0.25\n1\n";
  }
  CHECK_THROWS_AS(read_signal(path, SignalFormat::csv), FormatError);
  const Signal s = read_signal(path, SignalFormat::csv, 44100.0);
  CHECK(s.size() == 3);
  CHECK(s.sample_rate() == 44100.0);
  CHECK(s[1] == -0.25);
}

TEST_CASE("csv with several columns is rejected") {
  const auto path = scratch("stereo.csv");
  {
    std::ofstream out(path);
    out << "# sample_rate=100\n0.1,0.2\n";
  }
  CHECK_THROWS_AS(read_signal(path, SignalFormat::csv), FormatError);
}

TEST_CASE("wav roundtrip within 16-bit quantization") {
  const Signal s = gen_cosine(2.0 * std::numbers::pi * 440.0, 0.8, 2000, 16000.0);
  const auto path = scratch("tone.wav");
  write_signal(s, path, SignalFormat::wav);
  const Signal r = read_signal(path, signal_format_from_path(path));
  REQUIRE(r.size() == s.size());
  CHECK(r.sample_rate() == 16000.0);
  for (std::size_t i = 0; i < s.size(); ++i) CHECK(std::abs(r[i] - s[i]) <= 1.0 / 32768.0);
  CHECK_THROWS_AS(write_signal(Signal({2.0}, 100.0), scratch("loud.wav"), SignalFormat::wav), std::invalid_argument);
}

TEST_CASE("grid roundtrip") {
  Eigen::MatrixXcd v(2, 3);
  v << cplx(1, 2), cplx(0, -1), cplx(3.5, 0), cplx(-1e-300, 7), cplx(0.1, 0.2), cplx(5, 5);
  const ComplexGrid g(v, {0.0, 0.1, 0.2}, {1.0, 2.0}, AxisKind::frequency, {{"transform", "test"}});
  const std::string prefix = scratch("grid").string();
  write_grid(g, prefix, {{"note", "x"}});
  const ComplexGrid r = read_grid(prefix);
  CHECK(r.axis_kind() == AxisKind::frequency);
  CHECK(r.time_axis() == g.time_axis());
  CHECK(r.second_axis() == g.second_axis());
  CHECK((r.values() - v).cwiseAbs().maxCoeff() == 0.0);
  CHECK(r.descriptor()["transform"] == "test");
  const auto meta = read_json(prefix + ".meta.json");
  CHECK(meta["files"]["real"] == "grid.re.csv");
  CHECK(meta["metadata"]["note"] == "x");
}

TEST_CASE("grid construction checks") {
  CHECK_THROWS_AS(ComplexGrid(Eigen::MatrixXcd::Zero(2, 2), {0.0, 1.0}, {1.0}, AxisKind::frequency),
                  std::invalid_argument);
  CHECK_THROWS_AS(ComplexGrid(Eigen::MatrixXcd::Zero(1, 2), {0.0, 1.0}, {0.0}, AxisKind::scale), std::invalid_argument);
}

TEST_CASE("matrix csv keeps NaN") {
  Eigen::MatrixXd m(2, 2);
  m << 1.0, NAN, -2.5, 1e-17;
  const auto path = scratch("m.csv");
  write_matrix_csv(m, path);
  const Eigen::MatrixXd r = read_matrix_csv(path);
  CHECK(r(0, 0) == 1.0);
  CHECK(std::isnan(r(0, 1)));
  CHECK(r(1, 1) == 1e-17);
}

TEST_CASE("fields file set") {
  Eigen::MatrixXd a = Eigen::MatrixXd::Constant(2, 3, 4.0);
  const std::string prefix = scratch("fields").string();
  write_fields({{"a_hat", a}}, {0.0, 1.0, 2.0}, {0.1, 0.2}, AxisKind::scale, prefix, {{"method", "amplitude"}});
  const auto meta = read_json(prefix + ".meta.json");
  CHECK(meta["files"]["a_hat"] == "fields.a_hat.csv");
  CHECK(meta["metadata"]["method"] == "amplitude");
  CHECK(read_matrix_csv(prefix + ".a_hat.csv")(1, 2) == 4.0);
}

TEST_CASE("malformed grid metadata") {
  const auto path = scratch("broken.meta.json");
  {
    std::ofstream out(path);
    out << "{\"axis_kind\": \"frequency\"}";
  }
  CHECK_THROWS_AS(read_grid(scratch("broken").string()), FormatError);
}
