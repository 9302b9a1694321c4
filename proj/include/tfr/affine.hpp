// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tfreassign contributors

#pragma once

#include "tfr/signal.hpp"

namespace tfr {

/// Element (a, b) of the affine group: dilation a > 0 and translation b (s).
struct AffinePoint {
  double a = 1.0;
  double b = 0.0;
};

/// (a, b)(a', b') = (a a', a b' + b)
AffinePoint affine_mul(const AffinePoint& x, const AffinePoint& y);
/// (1/a, -b/a)
AffinePoint affine_inverse(const AffinePoint& x);

/// (rho_(a,b) f)(t) = a^(-1/2) f((t - b) / a) on f's own grid, with
/// band-limited interpolation of f; zero where (t - b)/a leaves f's interval.
ComplexSignal affine_action(const AffinePoint& x, const ComplexSignal& f);

}  // namespace tfr
