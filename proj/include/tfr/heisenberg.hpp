// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tfreassign contributors

#pragma once

#include <span>
#include <vector>

#include "tfr/signal.hpp"

namespace tfr {

/// Element (s, xi, z) of the Heisenberg group: time shift (s), frequency
/// shift (rad/s) and central phase (rad).
struct HeisenbergPoint {
  double s = 0.0;
  double xi = 0.0;
  double z = 0.0;
};

/// (s1+s2, xi1+xi2, z1+z2+(xi1 s2 - xi2 s1)/2)
HeisenbergPoint heisenberg_mul(const HeisenbergPoint& a, const HeisenbergPoint& b);
HeisenbergPoint heisenberg_inverse(const HeisenbergPoint& x);

/// Schroedinger representation (rho_x f)(t) = exp(i z + i xi (t - s/2)) f(t - s),
/// sampled on f's own grid. Shifts that are whole samples are exact; other
/// shifts use band-limited interpolation. f is taken as zero outside its frame.
ComplexSignal schroedinger_action(const HeisenbergPoint& x, const ComplexSignal& f);

/// Band-limited (trigonometric) interpolation of f at arbitrary times; zero
/// outside f's sampled interval.
std::vector<cplx> bandlimited_values(const ComplexSignal& f, std::span<const double> times);

}  // namespace tfr
