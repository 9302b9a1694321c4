// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tfreassign contributors

#include "tfr/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

namespace tfr {

namespace fs = std::filesystem;

namespace {

std::string format_double(double x) {
  std::array<char, 32> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc()) throw Error("cannot format number");
  return std::string(buf.data(), end);
}

double parse_double(std::string_view text, const fs::path& path, std::size_t line) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw FormatError(path.string() + ":" + std::to_string(line) + ": cannot parse '" + std::string(text) + "'");
  }
  return value;
}

std::ifstream open_in(const fs::path& path, std::ios::openmode mode = std::ios::in) {
  std::ifstream in(path, mode);
  if (!in) throw Error("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const fs::path& path, std::ios::openmode mode = std::ios::out) {
  std::ofstream out(path, mode);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

// "# sample_rate=16000,start_time=0"
void parse_header(const std::string& line, std::optional<double>& rate, double& start, const fs::path& path) {
  std::string body = line.substr(1);
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) continue;
    std::string key = item.substr(0, eq);
    key.erase(std::remove_if(key.begin(), key.end(), [](char c) { return c == ' ' || c == '\t'; }), key.end());
    const double value = parse_double(std::string_view(item).substr(eq + 1), path, 1);
    if (key == "sample_rate") rate = value;
    if (key == "start_time") start = value;
  }
}

Signal read_csv_signal(const fs::path& path, std::optional<double> fallback_rate) {
  auto in = open_in(path);
  std::optional<double> rate;
  double start = 0.0;
  std::vector<double> samples;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    if (line.front() == '#') {
      if (samples.empty()) parse_header(line, rate, start, path);
      continue;
    }
    if (line.find(',') != std::string::npos) {
      throw FormatError(path.string() + ":" + std::to_string(lineno) +
                        ": expected one real sample per line (complex or multichannel input is not supported)");
    }
    samples.push_back(parse_double(line, path, lineno));
  }
  if (!rate) rate = fallback_rate;
  if (!rate) throw FormatError(path.string() + ": no sample rate in header and none supplied");
  if (samples.empty()) throw FormatError(path.string() + ": no samples");
  return Signal(std::move(samples), *rate, start);
}

template <typename T>
T read_le(const std::uint8_t* p) {
  T value{};
  std::memcpy(&value, p, sizeof(T));
  return value;
}

template <typename T>
void write_le(std::ostream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

Signal read_wav_signal(const fs::path& path) {
  auto in = open_in(path, std::ios::binary);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  auto fail = [&](const std::string& why) { return FormatError(path.string() + ": " + why); };
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 || std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw fail("not a RIFF/WAVE file");
  }
  std::size_t pos = 12;
  bool have_fmt = false;
  std::uint32_t rate = 0;
  const std::uint8_t* data = nullptr;
  std::size_t data_len = 0;
  while (pos + 8 <= bytes.size()) {
    const std::uint32_t len = read_le<std::uint32_t>(bytes.data() + pos + 4);
    const std::uint8_t* body = bytes.data() + pos + 8;
    if (pos + 8 + len > bytes.size()) throw fail("truncated chunk");
    if (std::memcmp(bytes.data() + pos, "fmt ", 4) == 0) {
      if (len < 16) throw fail("short fmt chunk");
      const auto format = read_le<std::uint16_t>(body);
      const auto channels = read_le<std::uint16_t>(body + 2);
      rate = read_le<std::uint32_t>(body + 4);
      const auto bits = read_le<std::uint16_t>(body + 14);
      if (format != 1) throw fail("unsupported WAV encoding (only PCM is supported)");
      if (channels != 1) throw fail("unsupported channel count " + std::to_string(channels) + " (mono only)");
      if (bits != 16) throw fail("unsupported bit depth " + std::to_string(bits) + " (16-bit only)");
      have_fmt = true;
    } else if (std::memcmp(bytes.data() + pos, "data", 4) == 0) {
      data = body;
      data_len = len;
    }
    pos += 8 + len + (len & 1u);
  }
  if (!have_fmt) throw fail("missing fmt chunk");
  if (data == nullptr) throw fail("missing data chunk");
  if (rate == 0) throw fail("zero sample rate");
  std::vector<double> samples(data_len / 2);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    samples[i] = static_cast<double>(read_le<std::int16_t>(data + 2 * i)) / 32768.0;
  }
  if (samples.empty()) throw fail("no samples");
  return Signal(std::move(samples), static_cast<double>(rate));
}

void write_wav_signal(const Signal& signal, const fs::path& path) {
  const double rate = signal.sample_rate();
  if (std::abs(rate - std::round(rate)) > 1e-9 || rate > 4.0e9) {
    throw std::invalid_argument("WAV output needs an integral sample rate");
  }
  std::vector<std::int16_t> pcm(signal.size());
  for (std::size_t i = 0; i < signal.size(); ++i) {
    const double x = signal[i];
    if (x < -1.0 || x > 1.0) {
      throw std::invalid_argument("sample " + std::to_string(i) + " outside WAV full scale [-1, 1]");
    }
    pcm[i] = static_cast<std::int16_t>(std::clamp(std::lround(x * 32768.0), -32768L, 32767L));
  }
  auto out = open_out(path, std::ios::binary);
  const auto data_bytes = static_cast<std::uint32_t>(pcm.size() * 2);
  out.write("RIFF", 4);
  write_le<std::uint32_t>(out, 36 + data_bytes);
  out.write("WAVEfmt ", 8);
  write_le<std::uint32_t>(out, 16);
  write_le<std::uint16_t>(out, 1);
  write_le<std::uint16_t>(out, 1);
  write_le<std::uint32_t>(out, static_cast<std::uint32_t>(std::lround(rate)));
  write_le<std::uint32_t>(out, static_cast<std::uint32_t>(std::lround(rate)) * 2);
  write_le<std::uint16_t>(out, 2);
  write_le<std::uint16_t>(out, 16);
  out.write("data", 4);
  write_le<std::uint32_t>(out, data_bytes);
  out.write(reinterpret_cast<const char*>(pcm.data()), static_cast<std::streamsize>(data_bytes));
  if (!out) throw Error("failed writing " + path.string());
}

nlohmann::json axes_meta(const std::vector<double>& time_axis, const std::vector<double>& second_axis, AxisKind kind,
                         Eigen::Index rows, Eigen::Index cols) {
  nlohmann::json meta;
  meta["axis_kind"] = to_string(kind);
  meta["rows"] = rows;
  meta["cols"] = cols;
  meta["time_axis"] = time_axis;
  meta["second_axis"] = second_axis;
  meta["second_axis_unit"] = kind == AxisKind::frequency ? "rad/s" : "s";
  meta["time_axis_unit"] = "s";
  return meta;
}

void write_json(const nlohmann::json& j, const fs::path& path) {
  auto out = open_out(path);
  out << j.dump(2) << '\n';
  if (!out) throw Error("failed writing " + path.string());
}

}  // namespace

SignalFormat signal_format_from_path(const fs::path& path) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  if (ext == ".wav") return SignalFormat::wav;
  if (ext == ".csv" || ext == ".txt") return SignalFormat::csv;
  throw FormatError("cannot infer signal format from extension '" + ext + "'");
}

Signal read_signal(const fs::path& path, SignalFormat format, std::optional<double> fallback_rate) {
  return format == SignalFormat::wav ? read_wav_signal(path) : read_csv_signal(path, fallback_rate);
}

void write_signal(const Signal& signal, const fs::path& path, SignalFormat format) {
  if (format == SignalFormat::wav) {
    write_wav_signal(signal, path);
    return;
  }
  auto out = open_out(path);
  out << "# sample_rate=" << format_double(signal.sample_rate())
      << ",start_time=" << format_double(signal.start_time()) << '\n';
  for (double x : signal.samples()) out << format_double(x) << '\n';
  if (!out) throw Error("failed writing " + path.string());
}

void write_matrix_csv(const Eigen::MatrixXd& m, const fs::path& path) {
  auto out = open_out(path);
  std::string line;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    line.clear();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c > 0) line.push_back(',');
      line += format_double(m(r, c));
    }
    line.push_back('\n');
    out << line;
  }
  if (!out) throw Error("failed writing " + path.string());
}

Eigen::MatrixXd read_matrix_csv(const fs::path& path) {
  auto in = open_in(path);
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    std::vector<double> row;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      row.push_back(parse_double(std::string_view(line).substr(start, comma - start), path, lineno));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw FormatError(path.string() + ":" + std::to_string(lineno) + ": ragged row");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw FormatError(path.string() + ": empty matrix");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  }
  return m;
}

nlohmann::json read_json(const fs::path& path) {
  auto in = open_in(path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_grid(const ComplexGrid& grid, const std::string& prefix, const nlohmann::json& extra) {
  auto meta = axes_meta(grid.time_axis(), grid.second_axis(), grid.axis_kind(), grid.rows(), grid.cols());
  meta["descriptor"] = grid.descriptor();
  meta["metadata"] = extra;
  const auto stem = fs::path(prefix).filename().string();
  meta["files"] = {{"real", stem + ".re.csv"}, {"imag", stem + ".im.csv"}};
  write_json(meta, prefix + ".meta.json");
  write_matrix_csv(grid.values().real(), prefix + ".re.csv");
  write_matrix_csv(grid.values().imag(), prefix + ".im.csv");
}

ComplexGrid read_grid(const std::string& prefix) {
  const auto meta = read_json(prefix + ".meta.json");
  try {
    const auto kind = axis_kind_from_string(meta.at("axis_kind").get<std::string>());
    auto time_axis = meta.at("time_axis").get<std::vector<double>>();
    auto second_axis = meta.at("second_axis").get<std::vector<double>>();
    const Eigen::MatrixXd re = read_matrix_csv(prefix + ".re.csv");
    const Eigen::MatrixXd im = read_matrix_csv(prefix + ".im.csv");
    if (re.rows() != im.rows() || re.cols() != im.cols()) throw FormatError(prefix + ": real/imag shape mismatch");
    if (re.rows() != static_cast<Eigen::Index>(second_axis.size()) ||
        re.cols() != static_cast<Eigen::Index>(time_axis.size())) {
      throw FormatError(prefix + ": matrix shape does not match axes");
    }
    Eigen::MatrixXcd values(re.rows(), re.cols());
    values.real() = re;
    values.imag() = im;
    return ComplexGrid(std::move(values), std::move(time_axis), std::move(second_axis), kind,
                       meta.value("descriptor", nlohmann::json::object()));
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(prefix + ".meta.json: " + e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(prefix + ": " + e.what());
  }
}

void write_fields(const std::map<std::string, Eigen::MatrixXd>& fields, const std::vector<double>& time_axis,
                  const std::vector<double>& second_axis, AxisKind kind, const std::string& prefix,
                  const nlohmann::json& extra) {
  auto meta = axes_meta(time_axis, second_axis, kind, static_cast<Eigen::Index>(second_axis.size()),
                        static_cast<Eigen::Index>(time_axis.size()));
  meta["metadata"] = extra;
  nlohmann::json files = nlohmann::json::object();
  for (const auto& [name, m] : fields) {
    if (m.rows() != static_cast<Eigen::Index>(second_axis.size()) ||
        m.cols() != static_cast<Eigen::Index>(time_axis.size())) {
      throw std::invalid_argument("field '" + name + "' does not match axes");
    }
    files[name] = fs::path(prefix).filename().string() + "." + name + ".csv";
    write_matrix_csv(m, prefix + "." + name + ".csv");
  }
  meta["files"] = files;
  write_json(meta, prefix + ".meta.json");
}

}  // namespace tfr
