// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tfreassign contributors

#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "tfr/signal.hpp"

namespace tfr {

struct RenderOptions {
  double dynamic_range_db = 60.0;  ///< levels below peak - range map to black
  double gamma = 1.0;
};

/// 8-bit image, row-major, `height` rows of `width` pixels.
struct GrayImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> pixels;

  std::uint8_t at(std::size_t row, std::size_t col) const { return pixels[row * width + col]; }
};

/// Log-magnitude picture: one pixel per grid bin, 255 at the peak, black at
/// or below peak - dynamic range. The top row holds the largest frequency or
/// the smallest scale. An all-zero grid is black.
GrayImage render_magnitude(const ComplexGrid& grid, const RenderOptions& options = {});

/// Phase picture: (-pi, pi] mapped onto 1..255, zero-valued bins black.
/// Same orientation as render_magnitude.
GrayImage render_phase(const ComplexGrid& grid);

/// Binary portable graymap (P5).
void write_pgm(const GrayImage& image, const std::filesystem::path& path);
GrayImage read_pgm(const std::filesystem::path& path);

}  // namespace tfr
