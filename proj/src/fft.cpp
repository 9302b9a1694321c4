// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tfreassign contributors

#include "tfr/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <numbers>
#include <vector>

namespace tfr {

namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct Fft::Plans {
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;
};

Fft::Fft(std::size_t n) : n_(n), plans_(std::make_unique<Plans>()) {
  if (n == 0) throw std::invalid_argument("FFT length must be positive");
  std::vector<cplx> a(n), b(n);
  auto* pa = reinterpret_cast<fftw_complex*>(a.data());
  auto* pb = reinterpret_cast<fftw_complex*>(b.data());
  const int len = static_cast<int>(n);
  std::lock_guard lock(planner_mutex());
  plans_->forward = fftw_plan_dft_1d(len, pa, pb, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  plans_->inverse = fftw_plan_dft_1d(len, pa, pb, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (plans_->forward == nullptr || plans_->inverse == nullptr) throw Error("FFTW planning failed");
}

Fft::~Fft() {
  if (!plans_) return;
  std::lock_guard lock(planner_mutex());
  if (plans_->forward) fftw_destroy_plan(plans_->forward);
  if (plans_->inverse) fftw_destroy_plan(plans_->inverse);
}

Fft::Fft(Fft&&) noexcept = default;
Fft& Fft::operator=(Fft&&) noexcept = default;

void Fft::forward(std::span<const cplx> in, std::span<cplx> out) const {
  if (in.size() != n_ || out.size() != n_) throw std::invalid_argument("FFT buffer size mismatch");
  fftw_execute_dft(plans_->forward, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data())),
                   reinterpret_cast<fftw_complex*>(out.data()));
}

void Fft::inverse(std::span<const cplx> in, std::span<cplx> out) const {
  if (in.size() != n_ || out.size() != n_) throw std::invalid_argument("FFT buffer size mismatch");
  fftw_execute_dft(plans_->inverse, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data())),
                   reinterpret_cast<fftw_complex*>(out.data()));
  const double scale = 1.0 / static_cast<double>(n_);
  for (auto& z : out) z *= scale;
}

double fft_bin_frequency(std::size_t k, std::size_t n, double rate) {
  const double step = 2.0 * std::numbers::pi * rate / static_cast<double>(n);
  const auto kk = static_cast<double>(k);
  return 2 * k <= n ? kk * step : (kk - static_cast<double>(n)) * step;
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace tfr
