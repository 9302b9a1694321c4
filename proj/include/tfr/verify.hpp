// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tfreassign contributors

#pragma once

#include <string>
#include <vector>

#include "tfr/signal.hpp"

namespace tfr {

/// Outcome of one numerical check. `detail` carries the measured values and
/// the parameters that produced them.
struct CheckResult {
  std::string name;
  bool passed = false;
  nlohmann::json detail = nlohmann::json::object();

  nlohmann::json to_json() const;
};

// Individual checks. Each accepts an options object; missing keys take the
// defaults listed in the detail output.

/// Cosine scale law: 1/a~ = nu0 and t~ = t - a alpha under the phase maps.
/// Options: c, kappa, nu, alpha, beta (override the two default cases).
CheckResult check_cosine(const nlohmann::json& options = nlohmann::json::object());
/// Click fixed point along t = a beta for beta in {0, 0.05}. Options: kappa (default 8), betas.
CheckResult check_click(const nlohmann::json& options = nlohmann::json::object());
/// Structure-equation residual on cosine, chirp and two-tone. Options: c, kappa, nu, alpha, beta.
CheckResult check_structure(const nlohmann::json& options = nlohmann::json::object());
/// Pairwise agreement of the phase (T_beta), amplitude and holomorphic maps.
CheckResult check_agreement(const nlohmann::json& options = nlohmann::json::object());
/// Energy concentration of the reassigned scalogram and Renyi-3 decrease.
CheckResult check_concentration(const nlohmann::json& options = nlohmann::json::object());
/// STFT covariance under on-grid shifts and modulations.
CheckResult check_covariance(const nlohmann::json& options = nlohmann::json::object());
/// Holomorphic factor of a Gaussian-window STFT.
CheckResult check_holomorphy(const nlohmann::json& options = nlohmann::json::object());
/// STFT and CWT reconstruction errors.
CheckResult check_roundtrip(const nlohmann::json& options = nlohmann::json::object());
/// Orthogonality of the displacement to the geometric-phase gradient.
CheckResult check_tangency(const nlohmann::json& options = nlohmann::json::object());

/// Suite names accepted by run_suite, in acceptance order; "all" runs every one.
std::vector<std::string> suite_names();
/// Throws std::invalid_argument for an unknown name.
std::vector<CheckResult> run_suite(const std::string& name, const nlohmann::json& options = nlohmann::json::object());

}  // namespace tfr
