// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tfreassign contributors

#pragma once

#include <string>
#include <vector>

#include "tfr/cwt.hpp"
#include "tfr/extremal.hpp"
#include "tfr/stft_reassign.hpp"

namespace tfr {

/// Logarithmic derivatives of Wf. Rows follow scale, columns follow time.
struct LogDerivField {
  ComplexGrid transform;      ///< Wf itself
  Eigen::MatrixXcd dlog_dt;   ///< d_t log Wf (1/s)
  Eigen::MatrixXcd a_dlog_da; ///< a d_a log Wf
  Mask mask;
};

/// d_t Wf from the spectral factor i w, a d_a Wf from the wavelet's closed-form
/// scale log-derivative; both divided by Wf. |Wf| < threshold * max|Wf| is masked.
LogDerivField cwt_log_derivatives(const Signal& f, const AnalyticWavelet& w, const std::vector<double>& scales,
                                  double threshold = kDefaultMagnitudeThreshold);

enum class MapMethod { phase_T, phase_Tbeta, amplitude, holomorphic };
std::string to_string(MapMethod method);

/// Reassigned scale and time for every grid point.
struct ScaleTimeMap {
  std::vector<double> scales;
  std::vector<double> times;
  Eigen::MatrixXd a_hat;
  Eigen::MatrixXd t_hat;
  /// Jacobian of (log a, t) -> (log a~, t~); NaN where no stencil exists.
  Eigen::MatrixXd jacobian;
  Mask mask;
  MapMethod method = MapMethod::phase_T;
  nlohmann::json notes = nlohmann::json::object();
};

/// 1/a~ = d_t phi,  t~ = t + a^2 d_a phi. Points with d_t phi <= 0 are masked.
ScaleTimeMap map_T(const LogDerivField& ld);

/// As map_T with t~ = t + a^2 (d_a + beta d_t) phi.
ScaleTimeMap map_Tbeta(const LogDerivField& ld, const ExtremalParams& p);

/// From amplitude derivatives only, with rho = d_t log r and c0 = structure_constant(p):
///   1/a~ = (c0 - a d_a log r - a beta rho) / (a gamma),  t~ = t - a alpha + a^2 gamma rho.
/// A transform made with a non-extremal wavelet is accepted and flagged in notes.
ScaleTimeMap map_amplitude(const LogDerivField& ld, const ExtremalParams& p);

/// z = t - a beta + i a gamma.
cplx holomorphic_variable(double a, double t, const ExtremalParams& p);

/// log Wf = (c0 - i alpha) log a + F(z) on the unmasked region.
struct HolomorphicDecomposition {
  std::vector<double> scales;
  std::vector<double> times;
  Eigen::MatrixXcd f;         ///< F with a continuous branch per connected run
  Eigen::MatrixXcd df_dz;     ///< (1/2)(d_t - (i/gamma)(d_a + beta d_t)) F
  Eigen::MatrixXcd df_dzbar;  ///< (1/2)(d_t + (i/gamma)(d_a + beta d_t)) F
  Eigen::MatrixXd cr_ratio;   ///< |dF/dz-bar| / |dF/dz|
  Mask mask;
  Mask energetic;
  double median_cr_ratio = 0.0;
  int runs = 0;  ///< number of unwrapped row segments
};

/// Unwraps log Wf along time in each row (jumps above pi), aligns rows to each
/// other by 2 pi multiples starting from the strongest row, subtracts
/// (c0 - i alpha) log a and differentiates by finite differences.
HolomorphicDecomposition extract_holomorphic(const ComplexGrid& wf, const ExtremalParams& p,
                                             double threshold = kDefaultMagnitudeThreshold,
                                             double energetic_fraction = 0.1);

/// 1/a~ = Im dF/dz,  t~ = t - a alpha + a^2 gamma Re dF/dz.
ScaleTimeMap map_holomorphic(const HolomorphicDecomposition& h, const ExtremalParams& p);

struct StructureResidual {
  /// R = a d_a log Wf - (c0 - i alpha) + a (beta - i gamma) d_t log Wf
  Eigen::MatrixXcd residual;
  Mask region;              ///< energetic valid points
  double median_abs = 0.0;  ///< median |R| over region
  /// Same residual with a d_a log Wf from finite differences across scales.
  double median_abs_fd = 0.0;
  /// Median of a d_a log Wf + a (beta - i gamma) d_t log Wf over the region.
  cplx fitted_constant;
  /// The candidate among c0 - i alpha and c0 + 1/2 - i alpha nearest the fit;
  /// R uses this value.
  cplx constant;
};

StructureResidual structure_residual(const LogDerivField& ld, const ExtremalParams& p,
                                     double energetic_fraction = 0.1);

/// Accumulates Wf at the target bins nearest (a~, t~). The kernel is the
/// reproducing kernel conj(W psi(a/a~, (t - t~)/a~)) for KernelPhase::coherent
/// and W psi(a/a~, (t - t~)/a~) for KernelPhase::as_written, evaluated at
/// target-bin coordinates in grid_sum mode and at the exact targets in
/// full_kernel mode. Scales outside the target axis are dropped and counted;
/// times are clamped and counted.
ComplexGrid reassign_scalogram(const ComplexGrid& wf, const ScaleTimeMap& map, const AnalyticWavelet& w,
                               const std::vector<double>& target_times, const std::vector<double>& target_scales,
                               const ReassignOptions& options = {});

}  // namespace tfr
