// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tfreassign contributors

#pragma once

#include <vector>

#include "tfr/signal.hpp"
#include "tfr/stft.hpp"
#include "tfr/window.hpp"

namespace tfr {

inline constexpr double kDefaultMagnitudeThreshold = 1e-6;
inline constexpr double kDefaultJacobianThreshold = 1e-3;

/// Local phase derivatives of Sf. Rows follow omega, columns follow time.
struct PhaseGradientField {
  ComplexGrid transform;       ///< Sf itself
  Eigen::MatrixXd dphi_dt;     ///< rad/s
  Eigen::MatrixXd dphi_domega; ///< s
  Mask mask;
};

/// Phase derivatives from the auxiliary windows h' and t h:
///   dphi/dt = w/2 - Im(S_h' f / Sf),   dphi/dw = -t/2 - Re(S_th f / Sf).
/// Points with |Sf| < threshold * max|Sf| are masked.
PhaseGradientField stft_phase_gradients(const Signal& f, const Window& h, const StftGrid& grid,
                                        double threshold = kDefaultMagnitudeThreshold);

/// Target coordinates of each grid point and the signed Jacobian of the map.
struct ReassignmentField {
  std::vector<double> time_axis;
  std::vector<double> omega_axis;
  Eigen::MatrixXd t_hat;
  Eigen::MatrixXd omega_hat;
  Eigen::MatrixXd jacobian;  ///< NaN where no difference stencil exists
  Mask mask;
};

/// t~ = t/2 - dphi/dw,  w~ = w/2 + dphi/dt.
ReassignmentField reassignment_map(const PhaseGradientField& pg);

struct DisplacementField {
  Eigen::MatrixXd dt;      ///< t~ - t
  Eigen::MatrixXd domega;  ///< w~ - w
  Mask mask;
};

/// v = (-t/2 - dphi/dw, -w/2 + dphi/dt).
DisplacementField displacement_field(const PhaseGradientField& pg);

/// Phi(t, w) = phi(t + t0, w + w0) - (t w0 - t0 w)/2 on the local patch
/// dts x domegas (rows follow domegas). Values are principal arguments.
/// Throws if |Sf(t0, w0)| <= min_magnitude.
Eigen::MatrixXd geometric_phase(const Signal& f, const Window& h, double t0, double omega0,
                                const std::vector<double>& dts, const std::vector<double>& domegas,
                                double min_magnitude = 0.0);

enum class ReassignMode { grid_sum, full_kernel };
/// Phase convention of the moving kernel. `coherent` uses the reproducing
/// kernel (rho_x h, rho_x~ h) = exp(i(t~ w - w~ t)/2) Sh(t~ - t, w~ - w);
/// `as_written` uses its complex conjugate.
enum class KernelPhase { coherent, as_written };

struct ReassignOptions {
  ReassignMode mode = ReassignMode::grid_sum;
  KernelPhase phase = KernelPhase::coherent;
  double jacobian_threshold = kDefaultJacobianThreshold;
  /// grid_sum only: drop the kernel phase and accumulate raw values.
  bool unweighted = false;
};

/// Accumulates every valid source value at the target bin nearest its
/// reassigned coordinates. Targets outside the axes are clamped to the border
/// bins and counted. Ties go to the smaller index.
ComplexGrid reassign_spectrogram(const ComplexGrid& sf, const ReassignmentField& field, const Window& h,
                                 const std::vector<double>& target_times, const std::vector<double>& target_omegas,
                                 const ReassignOptions& options = {});

/// Gaussian-window factorization Sf = exp(-|z|^2/4) F(z), z = sigma w + i t / sigma.
struct HolomorphicFactor {
  Eigen::MatrixXcd log_f;  ///< log F, imaginary part principal
  Eigen::MatrixXd cr_ratio; ///< |dF/dz-bar| / |dF/dz|, NaN where unavailable
  /// Gradient of log|F| in the frame centered at each point, scaled to (t, w)
  /// units like the displacement: (sigma^2 d/dt, sigma^-2 d/dw) log|F_local|.
  Eigen::MatrixXd grad_t;
  Eigen::MatrixXd grad_omega;
  Eigen::MatrixXd v_deviation; ///< |v - grad| / |v|
  Mask region;               ///< energetic points with full stencils
  double median_cr_ratio = 0.0;
  double median_v_deviation = 0.0;
};

/// Throws std::invalid_argument for non-Gaussian windows.
HolomorphicFactor holomorphic_factor(const PhaseGradientField& pg, const Window& h, double energetic_fraction = 0.1);

}  // namespace tfr
