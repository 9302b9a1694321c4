// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tfreassign contributors

#include "tfr/stft_reassign.hpp"

#include <cmath>
#include <limits>

#include "tfr/numerics.hpp"

namespace tfr {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

PhaseGradientField stft_phase_gradients(const Signal& f, const Window& h, const StftGrid& grid, double threshold) {
  ComplexGrid sf = stft(f, h, grid);
  const ComplexGrid sd = stft(f, h, grid, WindowVariant::derivative);
  const ComplexGrid st = stft(f, h, grid, WindowVariant::time_weighted);
  const Mask mask = magnitude_mask(sf.values(), threshold);
  const auto& times = sf.time_axis();
  const auto& omegas = sf.second_axis();
  Eigen::MatrixXd dt = Eigen::MatrixXd::Constant(sf.rows(), sf.cols(), kNaN);
  Eigen::MatrixXd dw = dt;
#pragma omp parallel for
  for (Eigen::Index j = 0; j < sf.cols(); ++j) {
    for (Eigen::Index k = 0; k < sf.rows(); ++k) {
      if (!mask(k, j)) continue;
      const cplx s = sf.values()(k, j);
      dt(k, j) = 0.5 * omegas[k] - (sd.values()(k, j) / s).imag();
      dw(k, j) = -0.5 * times[j] - (st.values()(k, j) / s).real();
    }
  }
  return {std::move(sf), std::move(dt), std::move(dw), mask};
}

ReassignmentField reassignment_map(const PhaseGradientField& pg) {
  const auto& times = pg.transform.time_axis();
  const auto& omegas = pg.transform.second_axis();
  const Eigen::Index rows = pg.transform.rows();
  const Eigen::Index cols = pg.transform.cols();
  ReassignmentField out{times, omegas, Eigen::MatrixXd::Constant(rows, cols, kNaN),
                        Eigen::MatrixXd::Constant(rows, cols, kNaN), {}, pg.mask};
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index k = 0; k < rows; ++k) {
      if (!pg.mask(k, j)) continue;
      out.t_hat(k, j) = 0.5 * times[j] - pg.dphi_domega(k, j);
      out.omega_hat(k, j) = 0.5 * omegas[k] + pg.dphi_dt(k, j);
    }
  }
  out.jacobian = jacobian_determinant(out.omega_hat, out.t_hat, out.mask, omegas, times);
  return out;
}

DisplacementField displacement_field(const PhaseGradientField& pg) {
  const auto& times = pg.transform.time_axis();
  const auto& omegas = pg.transform.second_axis();
  const Eigen::Index rows = pg.transform.rows();
  const Eigen::Index cols = pg.transform.cols();
  DisplacementField v{Eigen::MatrixXd::Constant(rows, cols, kNaN), Eigen::MatrixXd::Constant(rows, cols, kNaN),
                      pg.mask};
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index k = 0; k < rows; ++k) {
      if (!pg.mask(k, j)) continue;
      v.dt(k, j) = -0.5 * times[j] - pg.dphi_domega(k, j);
      v.domega(k, j) = -0.5 * omegas[k] + pg.dphi_dt(k, j);
    }
  }
  return v;
}

Eigen::MatrixXd geometric_phase(const Signal& f, const Window& h, double t0, double omega0,
                                const std::vector<double>& dts, const std::vector<double>& domegas,
                                double min_magnitude) {
  if (std::abs(stft_at(f, h, t0, omega0)) <= min_magnitude) {
    throw Error("geometric phase requested at a masked point");
  }
  Eigen::MatrixXd phi(static_cast<Eigen::Index>(domegas.size()), static_cast<Eigen::Index>(dts.size()));
  for (std::size_t k = 0; k < domegas.size(); ++k) {
    for (std::size_t j = 0; j < dts.size(); ++j) {
      const double t = dts[j];
      const double w = domegas[k];
      const double arg = std::arg(stft_at(f, h, t + t0, w + omega0));
      phi(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = wrap_phase(arg - 0.5 * (t * omega0 - t0 * w));
    }
  }
  return phi;
}

ComplexGrid reassign_spectrogram(const ComplexGrid& sf, const ReassignmentField& field, const Window& h,
                                 const std::vector<double>& target_times, const std::vector<double>& target_omegas,
                                 const ReassignOptions& options) {
  if (target_times.empty() || target_omegas.empty()) throw std::invalid_argument("empty target grid");
  if (sf.rows() != field.t_hat.rows() || sf.cols() != field.t_hat.cols()) {
    throw std::invalid_argument("reassignment field does not match the transform grid");
  }
  const auto& times = sf.time_axis();
  const auto& omegas = sf.second_axis();
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(target_omegas.size()),
                                                static_cast<Eigen::Index>(target_times.size()));
  long contributing = 0, clamped = 0, jac_clamped = 0, jac_missing = 0;
  const double sign = options.phase == KernelPhase::coherent ? 1.0 : -1.0;
  const double max_weight = 1.0 / options.jacobian_threshold;

  // Sequential accumulation keeps the sum order fixed.
  for (Eigen::Index j = 0; j < sf.cols(); ++j) {
    for (Eigen::Index k = 0; k < sf.rows(); ++k) {
      if (!field.mask(k, j)) continue;
      const double th = field.t_hat(k, j);
      const double wh = field.omega_hat(k, j);
      if (!std::isfinite(th) || !std::isfinite(wh)) continue;
      const auto l_in = nearest_uniform(target_times, th, false);
      const auto m_in = nearest_uniform(target_omegas, wh, false);
      const std::size_t l = *nearest_uniform(target_times, th, true);
      const std::size_t m = *nearest_uniform(target_omegas, wh, true);
      if (!l_in || !m_in) ++clamped;
      ++contributing;
      const cplx value = sf.values()(k, j);
      cplx contribution;
      if (options.mode == ReassignMode::grid_sum) {
        if (options.unweighted) {
          contribution = value;
        } else {
          const double phase = 0.5 * sign * (target_times[l] * omegas[k] - target_omegas[m] * times[j]);
          contribution = std::polar(1.0, phase) * value;
        }
      } else {
        const double phase = 0.5 * sign * (th * omegas[k] - wh * times[j]);
        cplx kernel = window_self_transform(h, th - times[j], wh - omegas[k]);
        if (options.phase == KernelPhase::as_written) kernel = std::conj(kernel);
        double weight = 1.0;
        const double jac = field.jacobian(k, j);
        if (!std::isfinite(jac)) {
          ++jac_missing;
        } else if (std::abs(jac) < options.jacobian_threshold) {
          weight = max_weight;
          ++jac_clamped;
        } else {
          weight = 1.0 / std::abs(jac);
        }
        contribution = std::polar(weight, phase) * kernel * value;
      }
      acc(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(l)) += contribution;
    }
  }

  nlohmann::json desc = sf.descriptor();
  desc["reassignment"] = {
      {"mode", options.mode == ReassignMode::grid_sum ? "grid_sum" : "full_kernel"},
      {"kernel_phase", options.phase == KernelPhase::coherent ? "coherent" : "as_written"},
      {"unweighted", options.unweighted},
      {"jacobian_threshold", options.jacobian_threshold},
      {"contributing_points", contributing},
      {"clamped_targets", clamped},
      {"jacobian_clamped", jac_clamped},
      {"jacobian_missing", jac_missing},
  };
  return ComplexGrid(std::move(acc), target_times, target_omegas, AxisKind::frequency, std::move(desc));
}

HolomorphicFactor holomorphic_factor(const PhaseGradientField& pg, const Window& h, double energetic_fraction) {
  if (h.kind() != WindowKind::gaussian) throw std::invalid_argument("holomorphic factor needs a Gaussian window");
  const double sigma = h.sigma();
  const auto& sf = pg.transform.values();
  const auto& times = pg.transform.time_axis();
  const auto& omegas = pg.transform.second_axis();
  const Eigen::Index rows = sf.rows();
  const Eigen::Index cols = sf.cols();

  HolomorphicFactor out;
  out.log_f = Eigen::MatrixXcd::Constant(rows, cols, cplx(kNaN, kNaN));
  out.cr_ratio = Eigen::MatrixXd::Constant(rows, cols, kNaN);
  out.grad_t = out.cr_ratio;
  out.grad_omega = out.cr_ratio;
  out.v_deviation = out.cr_ratio;
  out.region = Mask::Constant(rows, cols, false);

  const Mask valid = pg.mask;
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index k = 0; k < rows; ++k) {
      if (!valid(k, j)) continue;
      const double x = sigma * omegas[k];
      const double y = times[j] / sigma;
      out.log_f(k, j) = std::log(sf(k, j)) + 0.25 * (x * x + y * y);
    }
  }

  // Differencing is done on Sf with the Weyl phase removed and added back
  // analytically, which keeps neighbor phase steps small.
  Eigen::MatrixXcd demod_t(rows, cols), demod_w(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index k = 0; k < rows; ++k) {
      demod_t(k, j) = sf(k, j) * std::polar(1.0, -0.5 * omegas[k] * times[j]);
      demod_w(k, j) = sf(k, j) * std::polar(1.0, 0.5 * omegas[k] * times[j]);
    }
  }
  Eigen::MatrixXcd d_t = log_derivative(demod_t, times, GridDirection::cols, valid);
  Eigen::MatrixXcd d_w = log_derivative(demod_w, omegas, GridDirection::rows, valid);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index k = 0; k < rows; ++k) {
      d_t(k, j) += cplx(0.0, 0.5 * omegas[k]);
      d_w(k, j) -= cplx(0.0, 0.5 * times[j]);
    }
  }
  const Mask energetic = energetic_mask(sf, energetic_fraction);
  const DisplacementField v = displacement_field(pg);

  std::vector<double> crs, devs;
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index k = 0; k < rows; ++k) {
      if (!valid(k, j) || !std::isfinite(d_t(k, j).real()) || !std::isfinite(d_w(k, j).real())) continue;
      const cplx zeta(sigma * omegas[k], times[j] / sigma);
      // d/dx = sigma^-1 d/dw, d/dy = sigma d/dt on log Sf; the Gaussian factor adds zeta/4 and conj(zeta)/4.
      const cplx dx = d_w(k, j) / sigma;
      const cplx dy = d_t(k, j) * sigma;
      const cplx dzbar = 0.5 * (dx + cplx(0, 1) * dy) + 0.25 * zeta;
      const cplx dz = 0.5 * (dx - cplx(0, 1) * dy) + 0.25 * std::conj(zeta);
      out.cr_ratio(k, j) = std::abs(dz) > 0.0 ? std::abs(dzbar) / std::abs(dz) : kNaN;
      // In the frame centered here the Gaussian factor has zero gradient.
      out.grad_t(k, j) = sigma * sigma * d_t(k, j).real();
      out.grad_omega(k, j) = d_w(k, j).real() / (sigma * sigma);
      const double vn = std::hypot(v.dt(k, j), v.domega(k, j));
      if (vn > 0.0) {
        out.v_deviation(k, j) =
            std::hypot(v.dt(k, j) - out.grad_t(k, j), v.domega(k, j) - out.grad_omega(k, j)) / vn;
      }
      if (energetic(k, j)) {
        out.region(k, j) = true;
        if (std::isfinite(out.cr_ratio(k, j))) crs.push_back(out.cr_ratio(k, j));
        if (std::isfinite(out.v_deviation(k, j))) devs.push_back(out.v_deviation(k, j));
      }
    }
  }
  out.median_cr_ratio = median(crs);
  out.median_v_deviation = median(devs);
  return out;
}

}  // namespace tfr
