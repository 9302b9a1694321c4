// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tfreassign contributors

#include "tfr/heisenberg.hpp"

#include <cmath>
#include <numbers>

#include "tfr/fft.hpp"

namespace tfr {

HeisenbergPoint heisenberg_mul(const HeisenbergPoint& a, const HeisenbergPoint& b) {
  return {a.s + b.s, a.xi + b.xi, a.z + b.z + 0.5 * (a.xi * b.s - b.xi * a.s)};
}

HeisenbergPoint heisenberg_inverse(const HeisenbergPoint& x) { return {-x.s, -x.xi, -x.z}; }

std::vector<cplx> bandlimited_values(const ComplexSignal& f, std::span<const double> times) {
  const std::size_t n = f.size();
  const double rate = f.sample_rate();
  std::vector<cplx> spectrum(n);
  Fft(n).forward(f.samples(), spectrum);

  const double end = f.start_time() + static_cast<double>(n - 1) / rate;
  const double tol = 1e-9 / rate;
  std::vector<cplx> out(times.size());
  for (std::size_t j = 0; j < times.size(); ++j) {
    const double x = times[j] - f.start_time();
    if (times[j] < f.start_time() - tol || times[j] > end + tol) continue;
    const double pos = x * rate;
    const double nearest = std::round(pos);
    if (std::abs(pos - nearest) < 1e-9) {
      out[j] = f[static_cast<std::size_t>(std::clamp(nearest, 0.0, static_cast<double>(n - 1)))];
      continue;
    }
    cplx acc{};
    for (std::size_t k = 0; k < n; ++k) {
      if (2 * k == n) {
        // Nyquist bin: split evenly between +/- Nyquist.
        acc += spectrum[k] * std::cos(std::numbers::pi * pos);
      } else {
        const double w = fft_bin_frequency(k, n, rate);
        acc += spectrum[k] * std::polar(1.0, w * x);
      }
    }
    out[j] = acc / static_cast<double>(n);
  }
  return out;
}

ComplexSignal schroedinger_action(const HeisenbergPoint& x, const ComplexSignal& f) {
  const std::size_t n = f.size();
  const double rate = f.sample_rate();
  std::vector<cplx> shifted(n);
  const double shift_samples = x.s * rate;
  const double whole = std::round(shift_samples);
  if (std::abs(shift_samples - whole) < 1e-9) {
    const auto k = static_cast<std::ptrdiff_t>(whole);
    for (std::size_t i = 0; i < n; ++i) {
      const auto src = static_cast<std::ptrdiff_t>(i) - k;
      if (src >= 0 && src < static_cast<std::ptrdiff_t>(n)) shifted[i] = f[static_cast<std::size_t>(src)];
    }
  } else {
    std::vector<double> times(n);
    for (std::size_t i = 0; i < n; ++i) times[i] = f.time(i) - x.s;
    shifted = bandlimited_values(f, times);
  }
  for (std::size_t i = 0; i < n; ++i) {
    shifted[i] *= std::polar(1.0, x.z + x.xi * (f.time(i) - 0.5 * x.s));
  }
  return ComplexSignal(std::move(shifted), rate, f.start_time());
}

}  // namespace tfr
