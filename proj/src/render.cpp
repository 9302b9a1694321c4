// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tfreassign contributors

#include "tfr/render.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

namespace tfr {

namespace {

/// Row of the grid shown at image row `y`.
Eigen::Index source_row(const ComplexGrid& grid, std::size_t y) {
  const auto h = static_cast<Eigen::Index>(grid.rows());
  // Frequency axes ascend, so the largest frequency is the last row; scale
  // axes ascend, so the smallest scale is the first row.
  return grid.axis_kind() == AxisKind::frequency ? h - 1 - static_cast<Eigen::Index>(y) : static_cast<Eigen::Index>(y);
}

}  // namespace

GrayImage render_magnitude(const ComplexGrid& grid, const RenderOptions& options) {
  if (!(options.dynamic_range_db > 0.0)) throw std::invalid_argument("dynamic range must be positive");
  if (!(options.gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
  GrayImage img;
  img.width = static_cast<std::size_t>(grid.cols());
  img.height = static_cast<std::size_t>(grid.rows());
  img.pixels.assign(img.width * img.height, 0);
  const double peak = grid.max_abs();
  if (!(peak > 0.0)) return img;
  for (std::size_t y = 0; y < img.height; ++y) {
    const Eigen::Index r = source_row(grid, y);
    for (std::size_t x = 0; x < img.width; ++x) {
      const double m = std::abs(grid.values()(r, static_cast<Eigen::Index>(x)));
      if (!(m > 0.0)) continue;
      const double db = 20.0 * std::log10(m / peak);
      const double level = std::clamp((db + options.dynamic_range_db) / options.dynamic_range_db, 0.0, 1.0);
      img.pixels[y * img.width + x] = static_cast<std::uint8_t>(std::lround(255.0 * std::pow(level, options.gamma)));
    }
  }
  return img;
}

GrayImage render_phase(const ComplexGrid& grid) {
  GrayImage img;
  img.width = static_cast<std::size_t>(grid.cols());
  img.height = static_cast<std::size_t>(grid.rows());
  img.pixels.assign(img.width * img.height, 0);
  for (std::size_t y = 0; y < img.height; ++y) {
    const Eigen::Index r = source_row(grid, y);
    for (std::size_t x = 0; x < img.width; ++x) {
      const cplx v = grid.values()(r, static_cast<Eigen::Index>(x));
      if (v == cplx{}) continue;
      const double u = (std::arg(v) + std::numbers::pi) / (2.0 * std::numbers::pi);
      img.pixels[y * img.width + x] = static_cast<std::uint8_t>(1 + std::lround(254.0 * std::clamp(u, 0.0, 1.0)));
    }
  }
  return img;
}

void write_pgm(const GrayImage& image, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << "P5\n" << image.width << ' ' << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.pixels.data()), static_cast<std::streamsize>(image.pixels.size()));
  if (!out) throw Error("failed writing " + path.string());
}

GrayImage read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::string magic;
  GrayImage img;
  int maxval = 0;
  in >> magic >> img.width >> img.height >> maxval;
  if (magic != "P5" || maxval != 255 || !in) throw FormatError("not an 8-bit binary PGM: " + path.string());
  in.get();
  img.pixels.resize(img.width * img.height);
  in.read(reinterpret_cast<char*>(img.pixels.data()), static_cast<std::streamsize>(img.pixels.size()));
  if (!in) throw FormatError("truncated PGM: " + path.string());
  return img;
}

}  // namespace tfr
