// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tfreassign contributors

#include "tfr/scalogram_reassign.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "tfr/numerics.hpp"
#include "tfr/wavelet_kernel.hpp"

namespace tfr {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> log_axis(const std::vector<double>& scales) {
  std::vector<double> out(scales.size());
  for (std::size_t i = 0; i < scales.size(); ++i) out[i] = std::log(scales[i]);
  return out;
}

ScaleTimeMap empty_map(const ComplexGrid& g, MapMethod method) {
  ScaleTimeMap m;
  m.scales = g.second_axis();
  m.times = g.time_axis();
  m.a_hat = Eigen::MatrixXd::Constant(g.rows(), g.cols(), kNaN);
  m.t_hat = m.a_hat;
  m.jacobian = m.a_hat;
  m.mask = Mask::Constant(g.rows(), g.cols(), false);
  m.method = method;
  return m;
}

/// Stores a point when its reassigned scale is positive and finite.
void store(ScaleTimeMap& m, Eigen::Index r, Eigen::Index c, double inv_a, double t) {
  if (!(inv_a > 0.0) || !std::isfinite(inv_a) || !std::isfinite(t)) return;
  m.a_hat(r, c) = 1.0 / inv_a;
  m.t_hat(r, c) = t;
  m.mask(r, c) = true;
}

void finish(ScaleTimeMap& m) {
  Eigen::MatrixXd log_a = m.a_hat.array().log().matrix();
  const std::vector<double> la = log_axis(m.scales);
  m.jacobian = jacobian_determinant(log_a, m.t_hat, m.mask, la, m.times);
  m.notes["method"] = to_string(m.method);
  m.notes["valid_points"] = m.mask.count();
}

}  // namespace

std::string to_string(MapMethod method) {
  switch (method) {
    case MapMethod::phase_T:
      return "phase_T";
    case MapMethod::phase_Tbeta:
      return "phase_Tbeta";
    case MapMethod::amplitude:
      return "amplitude";
    case MapMethod::holomorphic:
      return "holomorphic";
  }
  return "unknown";
}

LogDerivField cwt_log_derivatives(const Signal& f, const AnalyticWavelet& w, const std::vector<double>& scales,
                                  double threshold) {
  ComplexGrid wf = cwt(f, w, scales);
  const ComplexGrid wt = cwt(f, w, scales, CwtVariant::time_derivative);
  const ComplexGrid wa = cwt(f, w, scales, CwtVariant::scale_derivative);
  const Mask mask = magnitude_mask(wf.values(), threshold);
  const cplx nan(kNaN, kNaN);
  Eigen::MatrixXcd dt = Eigen::MatrixXcd::Constant(wf.rows(), wf.cols(), nan);
  Eigen::MatrixXcd da = dt;
#pragma omp parallel for
  for (Eigen::Index c = 0; c < wf.cols(); ++c) {
    for (Eigen::Index r = 0; r < wf.rows(); ++r) {
      if (!mask(r, c)) continue;
      const cplx v = wf.values()(r, c);
      dt(r, c) = wt.values()(r, c) / v;
      da(r, c) = wa.values()(r, c) / v;
    }
  }
  return {std::move(wf), std::move(dt), std::move(da), mask};
}

ScaleTimeMap map_T(const LogDerivField& ld) {
  ScaleTimeMap m = empty_map(ld.transform, MapMethod::phase_T);
  for (Eigen::Index c = 0; c < ld.transform.cols(); ++c) {
    for (Eigen::Index r = 0; r < ld.transform.rows(); ++r) {
      if (!ld.mask(r, c)) continue;
      const double a = m.scales[r];
      store(m, r, c, ld.dlog_dt(r, c).imag(), m.times[c] + a * ld.a_dlog_da(r, c).imag());
    }
  }
  finish(m);
  return m;
}

ScaleTimeMap map_Tbeta(const LogDerivField& ld, const ExtremalParams& p) {
  ScaleTimeMap m = empty_map(ld.transform, MapMethod::phase_Tbeta);
  for (Eigen::Index c = 0; c < ld.transform.cols(); ++c) {
    for (Eigen::Index r = 0; r < ld.transform.rows(); ++r) {
      if (!ld.mask(r, c)) continue;
      const double a = m.scales[r];
      const double phi_t = ld.dlog_dt(r, c).imag();
      store(m, r, c, phi_t, m.times[c] + a * ld.a_dlog_da(r, c).imag() + a * a * p.beta * phi_t);
    }
  }
  m.notes["params"] = p.to_json();
  finish(m);
  return m;
}

ScaleTimeMap map_amplitude(const LogDerivField& ld, const ExtremalParams& p) {
  p.validate();
  ScaleTimeMap m = empty_map(ld.transform, MapMethod::amplitude);
  const double c0 = structure_constant(p);
  const double g = p.gamma();
  for (Eigen::Index c = 0; c < ld.transform.cols(); ++c) {
    for (Eigen::Index r = 0; r < ld.transform.rows(); ++r) {
      if (!ld.mask(r, c)) continue;
      const double a = m.scales[r];
      const double rho = ld.dlog_dt(r, c).real();
      const double inv_a = (c0 - ld.a_dlog_da(r, c).real() - a * p.beta * rho) / (a * g);
      store(m, r, c, inv_a, m.times[c] - a * p.alpha + a * a * g * rho);
    }
  }
  m.notes["params"] = p.to_json();
  m.notes["structure_constant"] = c0;
  const auto& desc = ld.transform.descriptor();
  const bool extremal = desc.contains("wavelet") && desc["wavelet"].value("family", "") == "extremal";
  if (!extremal) m.notes["warning"] = "amplitude map applied to a transform made with a non-extremal wavelet";
  finish(m);
  return m;
}

cplx holomorphic_variable(double a, double t, const ExtremalParams& p) { return {t - a * p.beta, a * p.gamma()}; }

HolomorphicDecomposition extract_holomorphic(const ComplexGrid& wf, const ExtremalParams& p, double threshold,
                                             double energetic_fraction) {
  p.validate();
  if (wf.axis_kind() != AxisKind::scale) throw std::invalid_argument("holomorphic extraction needs a scale grid");
  const auto& w = wf.values();
  const Eigen::Index rows = w.rows();
  const Eigen::Index cols = w.cols();
  const auto& scales = wf.second_axis();
  const auto& times = wf.time_axis();
  const cplx nan(kNaN, kNaN);

  HolomorphicDecomposition h;
  h.scales = scales;
  h.times = times;
  h.mask = magnitude_mask(w, threshold);
  h.energetic = energetic_mask(w, energetic_fraction) && h.mask;
  Eigen::MatrixXcd logw = Eigen::MatrixXcd::Constant(rows, cols, nan);

  // Unwrap each run of valid columns along time.
  std::vector<std::vector<std::pair<Eigen::Index, Eigen::Index>>> runs(static_cast<std::size_t>(rows));
  for (Eigen::Index r = 0; r < rows; ++r) {
    Eigen::Index c = 0;
    while (c < cols) {
      if (!h.mask(r, c)) {
        ++c;
        continue;
      }
      const Eigen::Index start = c;
      logw(r, c) = std::log(w(r, c));
      for (++c; c < cols && h.mask(r, c); ++c) logw(r, c) = logw(r, c - 1) + std::log(w(r, c) / w(r, c - 1));
      runs[r].emplace_back(start, c);
      ++h.runs;
    }
  }

  // Align each run to its neighbor row, moving outward from the strongest row.
  Eigen::Index best_r = 0, best_c = 0;
  if (w.size() > 0) w.cwiseAbs().maxCoeff(&best_r, &best_c);
  auto align = [&](Eigen::Index r, Eigen::Index ref) {
    for (const auto& [c0, c1] : runs[r]) {
      double strength = -1.0;
      Eigen::Index anchor = -1;
      for (Eigen::Index c = c0; c < c1; ++c) {
        if (!h.mask(ref, c)) continue;
        const double s = std::min(std::abs(w(r, c)), std::abs(w(ref, c)));
        if (s > strength) {
          strength = s;
          anchor = c;
        }
      }
      if (anchor < 0) continue;
      const double expected = logw(ref, anchor).imag() + std::arg(w(r, anchor) / w(ref, anchor));
      const double turns = std::round((expected - logw(r, anchor).imag()) / (2.0 * std::numbers::pi));
      if (turns == 0.0) continue;
      for (Eigen::Index c = c0; c < c1; ++c) logw(r, c) += cplx(0.0, 2.0 * std::numbers::pi * turns);
    }
  };
  for (Eigen::Index r = best_r + 1; r < rows; ++r) align(r, r - 1);
  for (Eigen::Index r = best_r - 1; r >= 0; --r) align(r, r + 1);

  const cplx pgamma(structure_constant(p), -p.alpha);
  h.f = Eigen::MatrixXcd::Constant(rows, cols, nan);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      if (h.mask(r, c)) h.f(r, c) = logw(r, c) - pgamma * std::log(scales[r]);
    }
  }

  const std::vector<double> la = log_axis(scales);
  const Eigen::MatrixXcd d_t = log_derivative(w, times, GridDirection::cols, h.mask);
  const Eigen::MatrixXcd d_la = log_derivative(w, la, GridDirection::rows, h.mask);
  h.df_dz = Eigen::MatrixXcd::Constant(rows, cols, nan);
  h.df_dzbar = h.df_dz;
  h.cr_ratio = Eigen::MatrixXd::Constant(rows, cols, kNaN);
  const cplx i(0.0, 1.0);
  const double g = p.gamma();
  std::vector<double> ratios;
  for (Eigen::Index r = 0; r < rows; ++r) {
    const double a = scales[r];
    for (Eigen::Index c = 0; c < cols; ++c) {
      if (!h.mask(r, c) || !std::isfinite(d_t(r, c).real()) || !std::isfinite(d_la(r, c).real())) continue;
      const cplx ft = d_t(r, c);
      const cplx fa = (d_la(r, c) - pgamma) / a;
      const cplx shear = fa + p.beta * ft;
      h.df_dz(r, c) = 0.5 * (ft - (i / g) * shear);
      h.df_dzbar(r, c) = 0.5 * (ft + (i / g) * shear);
      const double denom = std::abs(h.df_dz(r, c));
      if (denom > 0.0) {
        h.cr_ratio(r, c) = std::abs(h.df_dzbar(r, c)) / denom;
        if (h.energetic(r, c)) ratios.push_back(h.cr_ratio(r, c));
      }
    }
  }
  h.median_cr_ratio = median(ratios);
  return h;
}

ScaleTimeMap map_holomorphic(const HolomorphicDecomposition& h, const ExtremalParams& p) {
  ScaleTimeMap m;
  m.scales = h.scales;
  m.times = h.times;
  const Eigen::Index rows = h.f.rows();
  const Eigen::Index cols = h.f.cols();
  m.a_hat = Eigen::MatrixXd::Constant(rows, cols, kNaN);
  m.t_hat = m.a_hat;
  m.mask = Mask::Constant(rows, cols, false);
  m.method = MapMethod::holomorphic;
  const double g = p.gamma();
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) {
      const cplx d = h.df_dz(r, c);
      if (!h.mask(r, c) || !std::isfinite(d.real())) continue;
      const double a = m.scales[r];
      store(m, r, c, d.imag(), m.times[c] - a * p.alpha + a * a * g * d.real());
    }
  }
  m.notes["params"] = p.to_json();
  m.notes["median_cr_ratio"] = h.median_cr_ratio;
  finish(m);
  return m;
}

StructureResidual structure_residual(const LogDerivField& ld, const ExtremalParams& p, double energetic_fraction) {
  p.validate();
  const auto& wf = ld.transform;
  const Eigen::Index rows = wf.rows();
  const Eigen::Index cols = wf.cols();
  const auto& scales = wf.second_axis();
  const cplx shear(p.beta, -p.gamma());
  StructureResidual out;
  out.region = energetic_mask(wf.values(), energetic_fraction) && ld.mask;

  std::vector<double> re, im;
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) {
      if (!out.region(r, c)) continue;
      const cplx s = ld.a_dlog_da(r, c) + scales[r] * shear * ld.dlog_dt(r, c);
      re.push_back(s.real());
      im.push_back(s.imag());
    }
  }
  out.fitted_constant = cplx(median(re), median(im));
  const cplx base(structure_constant(p), -p.alpha);
  const cplx shifted = base + 0.5;
  out.constant = std::abs(out.fitted_constant - base) <= std::abs(out.fitted_constant - shifted) ? base : shifted;

  const Eigen::MatrixXcd fd = log_derivative(wf.values(), log_axis(scales), GridDirection::rows, ld.mask);
  out.residual = Eigen::MatrixXcd::Constant(rows, cols, cplx(kNaN, kNaN));
  std::vector<double> mags, mags_fd;
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) {
      if (!ld.mask(r, c)) continue;
      const cplx tail = scales[r] * shear * ld.dlog_dt(r, c) - out.constant;
      out.residual(r, c) = ld.a_dlog_da(r, c) + tail;
      if (!out.region(r, c)) continue;
      mags.push_back(std::abs(out.residual(r, c)));
      if (std::isfinite(fd(r, c).real())) mags_fd.push_back(std::abs(fd(r, c) + tail));
    }
  }
  out.median_abs = median(mags);
  out.median_abs_fd = median(mags_fd);
  return out;
}

ComplexGrid reassign_scalogram(const ComplexGrid& wf, const ScaleTimeMap& map, const AnalyticWavelet& w,
                               const std::vector<double>& target_times, const std::vector<double>& target_scales,
                               const ReassignOptions& options) {
  if (target_times.empty() || target_scales.empty()) throw std::invalid_argument("empty target grid");
  if (wf.rows() != map.a_hat.rows() || wf.cols() != map.a_hat.cols()) {
    throw std::invalid_argument("scale-time map does not match the transform grid");
  }
  const WaveletKernel kernel(w);
  const auto& scales = wf.second_axis();
  const auto& times = wf.time_axis();
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(target_scales.size()),
                                                static_cast<Eigen::Index>(target_times.size()));
  long contributing = 0, dropped = 0, clamped = 0, jac_clamped = 0, jac_missing = 0;
  const bool coherent = options.phase == KernelPhase::coherent;

  for (Eigen::Index c = 0; c < wf.cols(); ++c) {
    for (Eigen::Index r = 0; r < wf.rows(); ++r) {
      if (!map.mask(r, c)) continue;
      const double ah = map.a_hat(r, c);
      const double th = map.t_hat(r, c);
      const auto m = nearest_geometric(target_scales, ah, false);
      if (!m) {
        ++dropped;
        continue;
      }
      if (!nearest_uniform(target_times, th, false)) ++clamped;
      const std::size_t l = *nearest_uniform(target_times, th, true);
      ++contributing;
      const double a = scales[r];
      const cplx value = wf.values()(r, c);
      cplx contribution;
      if (options.mode == ReassignMode::grid_sum) {
        if (options.unweighted) {
          contribution = value;
        } else {
          const double at = target_scales[*m];
          const cplx k = kernel(a / at, (times[c] - target_times[l]) / at);
          contribution = (coherent ? std::conj(k) : k) * value;
        }
      } else {
        const cplx k = kernel(a / ah, (times[c] - th) / ah);
        double weight = 1.0;
        const double jac = map.jacobian(r, c);
        if (!std::isfinite(jac)) {
          ++jac_missing;
        } else if (std::abs(jac) < options.jacobian_threshold) {
          weight = 1.0 / options.jacobian_threshold;
          ++jac_clamped;
        } else {
          weight = 1.0 / std::abs(jac);
        }
        contribution = weight * (coherent ? std::conj(k) : k) * value;
      }
      acc(static_cast<Eigen::Index>(*m), static_cast<Eigen::Index>(l)) += contribution;
    }
  }

  nlohmann::json desc = wf.descriptor();
  desc["reassignment"] = {
      {"method", to_string(map.method)},
      {"mode", options.mode == ReassignMode::grid_sum ? "grid_sum" : "full_kernel"},
      {"kernel_phase", coherent ? "coherent" : "as_written"},
      {"kernel", kernel.method() == WaveletKernel::Method::closed_form ? "closed_form" : "table"},
      {"unweighted", options.unweighted},
      {"jacobian_threshold", options.jacobian_threshold},
      {"contributing_points", contributing},
      {"dropped_scales", dropped},
      {"clamped_times", clamped},
      {"jacobian_clamped", jac_clamped},
      {"jacobian_missing", jac_missing},
      {"map_notes", map.notes},
  };
  return ComplexGrid(std::move(acc), target_times, target_scales, AxisKind::scale, std::move(desc));
}

}  // namespace tfr
