// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tfreassign contributors

#include "tfr/affine.hpp"

#include <cmath>

#include "tfr/heisenberg.hpp"

namespace tfr {

AffinePoint affine_mul(const AffinePoint& x, const AffinePoint& y) { return {x.a * y.a, x.a * y.b + x.b}; }

AffinePoint affine_inverse(const AffinePoint& x) {
  if (!(x.a > 0.0)) throw std::invalid_argument("dilation must be positive");
  return {1.0 / x.a, -x.b / x.a};
}

ComplexSignal affine_action(const AffinePoint& x, const ComplexSignal& f) {
  if (!(x.a > 0.0) || !std::isfinite(x.a)) throw std::invalid_argument("dilation must be positive");
  std::vector<double> times(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) times[i] = (f.time(i) - x.b) / x.a;
  std::vector<cplx> values = bandlimited_values(f, times);
  const double gain = 1.0 / std::sqrt(x.a);
  for (auto& v : values) v *= gain;
  return ComplexSignal(std::move(values), f.sample_rate(), f.start_time());
}

}  // namespace tfr
