// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tfreassign contributors

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numbers>

#include "tfr/render.hpp"

using namespace tfr;

namespace {

ComplexGrid ramp(AxisKind kind) {
  // Row r holds 10^(-r) so that each row is 20 dB below the previous one.
  Eigen::MatrixXcd v(4, 3);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 3; ++c) v(r, c) = std::polar(std::pow(10.0, -r), 0.5 * c);
  }
  return ComplexGrid(v, {0.0, 0.1, 0.2}, {1.0, 2.0, 3.0, 4.0}, kind);
}

}  // namespace

TEST_CASE("zero grid renders black") {
  const ComplexGrid z(Eigen::MatrixXcd::Zero(5, 7), {0, 1, 2, 3, 4, 5, 6}, {1, 2, 3, 4, 5}, AxisKind::frequency);
  const GrayImage img = render_magnitude(z);
  CHECK(img.width == 7);
  CHECK(img.height == 5);
  for (auto p : img.pixels) CHECK(p == 0);
  for (auto p : render_phase(z).pixels) CHECK(p == 0);
}

TEST_CASE("levels and orientation") {
  SUBCASE("frequency: largest frequency on top") {
    const GrayImage img = render_magnitude(ramp(AxisKind::frequency));
    // Row 0 of the grid (strongest, lowest frequency) is the bottom row.
    CHECK(img.at(3, 0) == 255);
    CHECK(img.at(2, 1) == std::lround(255.0 * 40.0 / 60.0));
    CHECK(img.at(1, 2) == std::lround(255.0 * 20.0 / 60.0));
    CHECK(img.at(0, 0) == 0);
  }
  SUBCASE("scale: smallest scale on top") {
    const GrayImage img = render_magnitude(ramp(AxisKind::scale));
    CHECK(img.at(0, 0) == 255);
    CHECK(img.at(3, 0) == 0);
  }
  SUBCASE("range and gamma") {
    RenderOptions o;
    o.dynamic_range_db = 80.0;
    o.gamma = 2.0;
    const GrayImage img = render_magnitude(ramp(AxisKind::scale), o);
    CHECK(img.at(3, 0) == std::lround(255.0 * std::pow(20.0 / 80.0, 2.0)));
    o.dynamic_range_db = 0.0;
    CHECK_THROWS_AS(render_magnitude(ramp(AxisKind::scale), o), std::invalid_argument);
  }
}

TEST_CASE("phase picture") {
  Eigen::MatrixXcd v(1, 3);
  v << std::polar(1.0, std::numbers::pi), std::polar(1.0, -std::numbers::pi + 1e-9), 0.0;
  const GrayImage img = render_phase(ComplexGrid(v, {0.0, 1.0, 2.0}, {1.0}, AxisKind::frequency));
  CHECK(img.at(0, 0) == 255);
  CHECK(img.at(0, 1) == 1);
  CHECK(img.at(0, 2) == 0);
}

TEST_CASE("pgm roundtrip") {
  const GrayImage img = render_magnitude(ramp(AxisKind::frequency));
  const auto path = std::filesystem::temp_directory_path() / "tfr_test_render.pgm";
  write_pgm(img, path);
  const GrayImage back = read_pgm(path);
  CHECK(back.width == img.width);
  CHECK(back.height == img.height);
  CHECK(back.pixels == img.pixels);
  CHECK(std::filesystem::file_size(path) > img.pixels.size());
}
