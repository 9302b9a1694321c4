// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tfreassign contributors

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "tfr/signal.hpp"

namespace tfr {

enum class SignalFormat { wav, csv };

/// Picks the format from the file extension (.wav or .csv).
SignalFormat signal_format_from_path(const std::filesystem::path& path);

/// Reads a mono signal.
///
/// CSV files hold one sample per line. An optional leading comment line
/// `# sample_rate=<hz>,start_time=<s>` carries the sampling metadata; without it
/// `fallback_rate` is used (an error if absent). WAV files must be PCM 16-bit
/// mono little-endian; samples are scaled to [-1, 1).
Signal read_signal(const std::filesystem::path& path, SignalFormat format,
                   std::optional<double> fallback_rate = std::nullopt);

/// CSV output is lossless (shortest round-trip decimal form). WAV output is
/// 16-bit PCM; samples outside [-1, 1] are rejected.
void write_signal(const Signal& signal, const std::filesystem::path& path, SignalFormat format);

/// Writes `<prefix>.meta.json`, `<prefix>.re.csv` and `<prefix>.im.csv`.
/// `extra` is merged into the metadata object under "metadata".
void write_grid(const ComplexGrid& grid, const std::string& prefix,
                const nlohmann::json& extra = nlohmann::json::object());

ComplexGrid read_grid(const std::string& prefix);

/// Writes a set of real-valued fields sharing the axes of a grid:
/// `<prefix>.meta.json` plus one `<prefix>.<name>.csv` per field.
void write_fields(const std::map<std::string, Eigen::MatrixXd>& fields, const std::vector<double>& time_axis,
                  const std::vector<double>& second_axis, AxisKind kind, const std::string& prefix,
                  const nlohmann::json& extra = nlohmann::json::object());

Eigen::MatrixXd read_matrix_csv(const std::filesystem::path& path);
void write_matrix_csv(const Eigen::MatrixXd& m, const std::filesystem::path& path);

nlohmann::json read_json(const std::filesystem::path& path);

}  // namespace tfr
