// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tfreassign contributors

#pragma once

#include <memory>
#include <span>

#include "tfr/signal.hpp"

namespace tfr {

/// Complex DFT of fixed length backed by FFTW.
///
/// forward: X[k] = sum_n x[n] exp(-2 pi i k n / N)
/// inverse: x[n] = (1/N) sum_k X[k] exp(+2 pi i k n / N)
///
/// Execution is thread safe; plans are created under a global lock.
class Fft {
 public:
  explicit Fft(std::size_t n);
  ~Fft();
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;
  Fft(Fft&&) noexcept;
  Fft& operator=(Fft&&) noexcept;

  std::size_t size() const { return n_; }
  void forward(std::span<const cplx> in, std::span<cplx> out) const;
  void inverse(std::span<const cplx> in, std::span<cplx> out) const;

 private:
  struct Plans;
  std::size_t n_;
  std::unique_ptr<Plans> plans_;
};

/// Angular frequency of DFT bin k for length n at the given rate: bins above
/// n/2 map to negative frequencies, bin n/2 (even n) to +Nyquist.
double fft_bin_frequency(std::size_t k, std::size_t n, double rate);

std::size_t next_pow2(std::size_t n);

}  // namespace tfr
