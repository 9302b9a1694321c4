// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tfreassign contributors

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "cli.hpp"
#include "tfr/io.hpp"
#include "tfr/render.hpp"

using namespace tfr;
namespace fs = std::filesystem;

namespace {

const fs::path kDir = TFR_TEST_TMP;

std::string at(const std::string& name) {
  fs::create_directories(kDir);
  return (kDir / name).string();
}

int tool(std::vector<std::string> args) {
  args.insert(args.begin(), "tfr");
  return cli::run(args);
}

int make_cosine(const std::string& name, const std::string& hz = "62.5") {
  return tool({"gen", "cosine", "--freq", hz, "--rate", "1000", "--samples", "2048", "--out-prefix", at(name)});
}

}  // namespace

TEST_CASE("frequency parsing") {
  CHECK(cli::parse_frequency("440") == doctest::Approx(2.0 * std::numbers::pi * 440.0));
  CHECK(cli::parse_frequency("440hz") == doctest::Approx(2.0 * std::numbers::pi * 440.0));
  CHECK(cli::parse_frequency("440 Hz") == doctest::Approx(2.0 * std::numbers::pi * 440.0));
  CHECK(cli::parse_frequency("3rad/s") == doctest::Approx(3.0));
  CHECK_THROWS_AS(cli::parse_frequency("fast"), std::invalid_argument);
}

TEST_CASE("gen writes a signal and its metadata") {
  REQUIRE(make_cosine("gen_cos") == 0);
  const Signal s = read_signal(at("gen_cos") + ".csv", SignalFormat::csv);
  CHECK(s.size() == 2048);
  CHECK(s[4] == doctest::Approx(std::cos(2.0 * std::numbers::pi * 62.5 * 4 / 1000.0)));
  const auto meta = read_json(at("gen_cos") + ".meta.json");
  CHECK(meta["command"] == "gen");
  CHECK(meta["config"]["freq"].get<double>() == doctest::Approx(2.0 * std::numbers::pi * 62.5));
  CHECK(meta["config"]["units"]["freq"] == "rad/s");
}

TEST_CASE("invalid combinations write nothing") {
  CHECK(tool({"gen", "click", "--freq", "10", "--out-prefix", at("bad_click")}) == 2);
  CHECK_FALSE(fs::exists(at("bad_click") + ".csv"));
  CHECK(tool({"gen", "cosine", "--freq", "900", "--rate", "1000", "--out-prefix", at("alias")}) == 2);
  CHECK_FALSE(fs::exists(at("alias") + ".csv"));
  CHECK(tool({"stft", "--in", at("missing.csv"), "--out-prefix", at("nothing")}) == 2);
  CHECK_FALSE(fs::exists(at("nothing") + ".meta.json"));
  CHECK(tool({"frobnicate"}) == 2);
}

TEST_CASE("stft of a zero signal") {
  {
    std::ofstream out(at("zeros.csv"));
    out << "# sample_rate=500\n";
    for (int i = 0; i < 512; ++i) out << "0\n";
  }
  REQUIRE(tool({"stft", "--in", at("zeros.csv"), "--out-prefix", at("zeros_stft")}) == 0);
  const ComplexGrid g = read_grid(at("zeros_stft"));
  CHECK(g.max_abs() == 0.0);
  CHECK(g.axis_kind() == AxisKind::frequency);
}

TEST_CASE("cwt peaks on the tone's scale") {
  REQUIRE(make_cosine("cwt_cos") == 0);
  REQUIRE(tool({"cwt", "--in", at("cwt_cos") + ".csv", "--out-prefix", at("cwt_out"), "--voices", "32"}) == 0);
  const ComplexGrid g = read_grid(at("cwt_out"));
  Eigen::Index best = 0;
  g.values().col(1024).cwiseAbs().maxCoeff(&best);
  const double nu0 = 2.0 * std::numbers::pi * 62.5;
  CHECK(std::abs(std::log2(g.second_axis()[best] * nu0)) < 1.0 / 32.0);
  const auto meta = read_json(at("cwt_out") + ".meta.json");
  CHECK(meta["metadata"]["config"]["kappa"] == 2.0);
  CHECK(meta["metadata"]["config"]["voices"] == 16 * 2);
}

TEST_CASE("reassign methods") {
  REQUIRE(make_cosine("re_cos") == 0);
  const std::string in = at("re_cos") + ".csv";
  CHECK(tool({"reassign", "--in", in, "--method", "stft", "--out-prefix", at("re_stft")}) == 0);
  CHECK(fs::exists(at("re_stft.map") + ".omega_hat.csv"));
  REQUIRE(tool({"reassign", "--in", in, "--method", "cwt-amplitude", "--out-prefix", at("re_amp")}) == 0);
  const auto meta = read_json(at("re_amp") + ".meta.json");
  CHECK(meta["metadata"]["method"] == "amplitude");
  CHECK(meta["metadata"]["warnings"].empty());
  CHECK(fs::exists(at("re_amp.raw") + ".meta.json"));
  CHECK(fs::exists(at("re_amp.map") + ".a_hat.csv"));
  CHECK(tool({"reassign", "--in", in, "--method", "cwt-T", "--sigma", "0.01", "--out-prefix", at("re_mix")}) == 2);
  CHECK(tool({"reassign", "--in", in, "--method", "wigner", "--out-prefix", at("re_bad")}) == 2);
}

TEST_CASE("morlet with the amplitude map warns and succeeds") {
  REQUIRE(make_cosine("mor_cos") == 0);
  REQUIRE(tool({"reassign", "--in", at("mor_cos") + ".csv", "--method", "cwt-amplitude", "--wavelet", "morlet",
                "--out-prefix", at("mor")}) == 0);
  const auto meta = read_json(at("mor") + ".meta.json");
  REQUIRE(meta["metadata"]["warnings"].size() >= 1);
  bool found = false;
  for (const auto& w : meta["metadata"]["warnings"]) found = found || w.get<std::string>().find("extremal") != std::string::npos;
  CHECK(found);
}

TEST_CASE("render writes a graymap") {
  REQUIRE(make_cosine("ren_cos") == 0);
  REQUIRE(tool({"stft", "--in", at("ren_cos") + ".csv", "--out-prefix", at("ren_stft")}) == 0);
  REQUIRE(tool({"render", "--in", at("ren_stft"), "--out-prefix", at("ren"), "--channel", "phase"}) == 0);
  const ComplexGrid g = read_grid(at("ren_stft"));
  const GrayImage img = read_pgm(at("ren") + ".pgm");
  CHECK(img.width == static_cast<std::size_t>(g.cols()));
  CHECK(img.height == static_cast<std::size_t>(g.rows()));
  CHECK(*std::max_element(img.pixels.begin(), img.pixels.end()) == 255);
  CHECK(fs::exists(at("ren") + ".phase.pgm"));
  CHECK(read_json(at("ren") + ".render.json")["config"]["range_db"] == 60.0);
}

TEST_CASE("verify exit codes") {
  CHECK(tool({"verify", "structure", "--c", "1", "--out-prefix", at("ver1")}) == 0);
  CHECK(read_json(at("ver1") + ".json")["passed"] == true);
  CHECK(tool({"verify", "structure", "--c", "2"}) == 1);
  CHECK(tool({"verify", "nonsense"}) == 2);
}

TEST_CASE("config file and flags") {
  REQUIRE(make_cosine("cfg_cos") == 0);
  {
    std::ofstream out(at("cfg.json"));
    out << R"({"kappa": 4, "voices": 8, "fmin": 20, "fmax": 200})";
  }
  REQUIRE(tool({"cwt", "--in", at("cfg_cos") + ".csv", "--config", at("cfg.json"), "--kappa", "3", "--threads", "1",
                "--out-prefix", at("cfg_out")}) == 0);
  const auto cfg = read_json(at("cfg_out") + ".meta.json")["metadata"]["config"];
  CHECK(cfg["kappa"] == 3.0);
  CHECK(cfg["voices"] == 8);
  CHECK(cfg["fmin"].get<double>() == doctest::Approx(2.0 * std::numbers::pi * 20.0));
  {
    std::ofstream out(at("cfg_bad.json"));
    out << R"({"kapa": 4})";
  }
  CHECK(tool({"cwt", "--in", at("cfg_cos") + ".csv", "--config", at("cfg_bad.json"), "--out-prefix", at("cfg_bad")}) == 2);
  CHECK(tool({"cwt", "--in", at("cfg_cos") + ".csv", "--threads", "0", "--out-prefix", at("cfg_t0")}) == 2);
}
