// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tfreassign contributors

#include "cli.hpp"

#include <omp.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "tfr/cwt.hpp"
#include "tfr/io.hpp"
#include "tfr/render.hpp"
#include "tfr/scalogram_reassign.hpp"
#include "tfr/stft.hpp"
#include "tfr/stft_reassign.hpp"
#include "tfr/verify.hpp"

namespace tfr::cli {

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr const char* kVersion = "0.1.0";

/// Bad flags or flag combinations.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string trim(std::string s) {
  auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

double parse_number(const std::string& text) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v)) {
    throw UsageError("not a number: '" + text + "'");
  }
  return v;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!trim(item).empty()) out.push_back(trim(item));
  }
  return out;
}

}  // namespace

double parse_frequency(const std::string& text) {
  std::string t = lower(trim(text));
  double scale = kTwoPi;
  for (const auto& [suffix, factor] : std::vector<std::pair<std::string, double>>{{"rad/s", 1.0}, {"hz", kTwoPi}}) {
    if (t.size() >= suffix.size() && t.compare(t.size() - suffix.size(), suffix.size(), suffix) == 0) {
      t = trim(t.substr(0, t.size() - suffix.size()));
      scale = factor;
      break;
    }
  }
  try {
    const double v = parse_number(t);
    if (v < 0.0) throw std::invalid_argument("frequency must be non-negative: '" + text + "'");
    return v * scale;
  } catch (const UsageError&) {
    throw std::invalid_argument("not a frequency: '" + text + "' (expected e.g. 440hz)");
  }
}

namespace {

enum class Kind { number, integer, frequency, text, numbers, frequencies, boolean };

struct OptionSpec {
  std::string key;
  Kind kind;
  std::string help;
};

const std::vector<OptionSpec>& common_options() {
  static const std::vector<OptionSpec> v = {
      {"out_prefix", Kind::text, "output path prefix"},
      {"config", Kind::text, "JSON file with option values (flags override it)"},
      {"threads", Kind::integer, "worker threads for data-parallel sections"},
  };
  return v;
}

const std::vector<OptionSpec> kGenOptions = {
    {"rate", Kind::number, "sample rate in Hz (default 1000)"},
    {"samples", Kind::integer, "number of samples (default 4096)"},
    {"freq", Kind::frequency, "tone frequency, or chirp start (e.g. 440hz)"},
    {"freq_end", Kind::frequency, "chirp end frequency"},
    {"freqs", Kind::frequencies, "comma-separated tone frequencies"},
    {"amps", Kind::numbers, "comma-separated tone amplitudes (default all 1)"},
    {"amplitude", Kind::number, "cosine amplitude (default 1)"},
    {"at", Kind::number, "click position in seconds (default 0)"},
    {"center", Kind::number, "Gaussian envelope center in seconds"},
    {"width", Kind::number, "Gaussian envelope width in seconds"},
    {"format", Kind::text, "csv or wav (default csv)"},
};

const std::vector<OptionSpec> kInputOptions = {
    {"in", Kind::text, "input signal file (.csv or .wav)"},
    {"rate", Kind::number, "sample rate for CSV input without a header"},
    {"threshold", Kind::number, "relative magnitude below which points are masked (default 1e-6)"},
};

const std::vector<OptionSpec> kStftOptions = {
    {"sigma", Kind::number, "Gaussian window width in seconds (default 32 samples)"},
    {"window_file", Kind::text, "custom window samples (CSV signal file, centered)"},
    {"hop", Kind::integer, "time step in samples (default 4)"},
    {"bins", Kind::integer, "number of frequency bins from 0 to fmax"},
    {"fmax", Kind::frequency, "highest analysed frequency (default Nyquist)"},
};

const std::vector<OptionSpec> kCwtOptions = {
    {"wavelet", Kind::text, "extremal or morlet (default extremal)"},
    {"kappa", Kind::number, "extremal kappa (default 2)"},
    {"nu", Kind::number, "extremal nu (default 1)"},
    {"c", Kind::number, "extremal exponent c (default 1)"},
    {"alpha", Kind::number, "extremal alpha (default 0)"},
    {"beta", Kind::number, "extremal beta in seconds (default 0)"},
    {"epsilon", Kind::number, "extremal epsilon (default 0)"},
    {"omega0", Kind::number, "Morlet center frequency, dimensionless (default 6)"},
    {"a_min", Kind::number, "smallest scale in seconds"},
    {"a_max", Kind::number, "largest scale in seconds"},
    {"fmin", Kind::frequency, "lowest analysed frequency (sets a_max)"},
    {"fmax", Kind::frequency, "highest analysed frequency (sets a_min)"},
    {"voices", Kind::integer, "scales per octave (default 16)"},
};

const std::vector<OptionSpec> kReassignOptions = {
    {"method", Kind::text, "stft, cwt-T, cwt-Tbeta, cwt-amplitude or cwt-holomorphic"},
    {"mode", Kind::text, "grid_sum or full_kernel (default grid_sum)"},
    {"kernel_phase", Kind::text, "coherent or as_written (default coherent)"},
    {"jacobian_threshold", Kind::number, "Jacobian clamp (default 1e-3)"},
    {"unweighted", Kind::boolean, "grid_sum without kernel weights"},
};

const std::vector<OptionSpec> kRenderOptions = {
    {"in", Kind::text, "grid prefix (reads <prefix>.meta.json)"},
    {"channel", Kind::text, "magnitude or phase; phase writes a second image (default magnitude)"},
    {"range_db", Kind::number, "dynamic range below peak in dB (default 60)"},
    {"gamma", Kind::number, "gamma applied after the dB mapping (default 1)"},
};

const std::vector<OptionSpec> kVerifyOptions = {
    {"c", Kind::number, "extremal exponent c"},
    {"kappa", Kind::number, "extremal kappa"},
    {"nu", Kind::number, "extremal nu"},
    {"alpha", Kind::number, "extremal alpha"},
    {"beta", Kind::number, "extremal beta in seconds"},
    {"epsilon", Kind::number, "extremal epsilon"},
    {"rate", Kind::number, "sample rate in Hz of the test signals"},
    {"samples", Kind::integer, "length of the test signals"},
    {"sigma", Kind::number, "Gaussian window width in seconds"},
    {"mode", Kind::text, "reassignment mode for the concentration check"},
    {"seed", Kind::integer, "seed for sampled points"},
};

std::string flag_name(const std::string& key) {
  std::string s = key;
  std::replace(s.begin(), s.end(), '_', '-');
  return "--" + s;
}

std::string key_name(std::string s) {
  std::replace(s.begin(), s.end(), '-', '_');
  return s;
}

/// Options of one subcommand, bound to CLI11 as raw strings.
struct Command {
  CLI::App* app = nullptr;
  std::vector<OptionSpec> specs;
  std::map<std::string, std::string> raw;
  std::map<std::string, bool> flags;
  std::string positional;

  void add(const std::vector<OptionSpec>& list) {
    for (const auto& s : list) {
      if (std::any_of(specs.begin(), specs.end(), [&](const OptionSpec& o) { return o.key == s.key; })) continue;
      specs.push_back(s);
      if (s.kind == Kind::boolean) {
        app->add_flag(flag_name(s.key), flags[s.key], s.help);
      } else {
        app->add_option(flag_name(s.key), raw[s.key], s.help);
      }
    }
  }

  const OptionSpec* find(const std::string& key) const {
    for (const auto& s : specs) {
      if (s.key == key) return &s;
    }
    return nullptr;
  }
};

json convert(const OptionSpec& spec, const json& value, bool numbers_in_rad) {
  auto as_text = [&](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  auto frequency = [&](const json& v) {
    if (v.is_number()) return v.get<double>() * (numbers_in_rad ? 1.0 : kTwoPi);
    return parse_frequency(as_text(v));
  };
  auto list = [&](const json& v) {
    std::vector<json> items;
    if (v.is_array()) {
      items.assign(v.begin(), v.end());
    } else {
      for (const auto& s : split_list(as_text(v))) items.emplace_back(s);
    }
    return items;
  };
  switch (spec.kind) {
    case Kind::number:
      return value.is_number() ? value.get<double>() : parse_number(as_text(value));
    case Kind::integer: {
      const double v = value.is_number() ? value.get<double>() : parse_number(as_text(value));
      if (v != std::floor(v)) throw UsageError(flag_name(spec.key) + " needs an integer");
      return static_cast<long long>(v);
    }
    case Kind::frequency:
      return frequency(value);
    case Kind::text:
      return as_text(value);
    case Kind::boolean:
      if (value.is_boolean()) return value.get<bool>();
      throw UsageError(flag_name(spec.key) + " must be true or false in a config file");
    case Kind::numbers: {
      json out = json::array();
      for (const auto& item : list(value)) out.push_back(item.is_number() ? item.get<double>() : parse_number(as_text(item)));
      return out;
    }
    case Kind::frequencies: {
      json out = json::array();
      for (const auto& item : list(value)) out.push_back(frequency(item));
      return out;
    }
  }
  return value;
}

/// Merges the config file and the flags given on the command line. Frequency
/// values end up in rad/s.
json resolve(const Command& cmd, std::set<std::string>& given) {
  json cfg = json::object();
  if (!cmd.raw.at("config").empty()) {
    const json file = read_json(cmd.raw.at("config"));
    if (!file.is_object()) throw UsageError("config file must hold a JSON object");
    const json units = file.value("units", json::object());
    for (const auto& [k, v] : file.items()) {
      const std::string key = key_name(k);
      if (key == "units" || key == "config" || key == "command") continue;
      const OptionSpec* spec = cmd.find(key);
      if (!spec) throw UsageError("unknown key in config file: " + k);
      const bool rad = units.is_object() && units.value(key, std::string()) == "rad/s";
      cfg[key] = convert(*spec, v, rad);
      given.insert(key);
    }
  }
  for (const auto& spec : cmd.specs) {
    if (spec.key == "config") continue;
    if (spec.kind == Kind::boolean) {
      if (cmd.app->count(flag_name(spec.key)) > 0) {
        cfg[spec.key] = cmd.flags.at(spec.key);
        given.insert(spec.key);
      }
      continue;
    }
    if (cmd.app->count(flag_name(spec.key)) == 0) continue;
    try {
      cfg[spec.key] = convert(spec, json(cmd.raw.at(spec.key)), false);
    } catch (const std::invalid_argument& e) {
      throw UsageError(flag_name(spec.key) + ": " + e.what());
    }
    given.insert(spec.key);
  }
  return cfg;
}

json frequency_units(const Command& cmd) {
  json units = json::object();
  for (const auto& s : cmd.specs) {
    if (s.kind == Kind::frequency || s.kind == Kind::frequencies) units[s.key] = "rad/s";
  }
  return units;
}

std::string require_text(const json& cfg, const std::string& key) {
  if (!cfg.contains(key) || cfg[key].get<std::string>().empty()) throw UsageError(flag_name(key) + " is required");
  return cfg[key].get<std::string>();
}

void reject(const std::set<std::string>& given, const std::set<std::string>& keys, const std::string& context) {
  for (const auto& k : keys) {
    if (given.count(k)) throw UsageError(flag_name(k) + " cannot be used with " + context);
  }
}

json positive(const json& cfg, const std::string& key) {
  if (cfg.contains(key) && !(cfg[key].get<double>() > 0.0)) throw UsageError(flag_name(key) + " must be positive");
  return cfg.value(key, json());
}

json metadata(const std::string& command, const json& cfg, const json& units, const json& warnings) {
  json c = cfg;
  c.erase("config");
  c["units"] = units;
  return {{"command", command}, {"config", c}, {"warnings", warnings}, {"tool", {{"name", "tfr"}, {"version", kVersion}}}};
}

void ensure_parent(const std::string& prefix) {
  const fs::path parent = fs::path(prefix).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
}

void write_text_json(const json& j, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << j.dump(2) << "\n";
  if (!out) throw Error("failed writing " + path.string());
}

Signal load_input(const json& cfg) {
  const fs::path path = require_text(cfg, "in");
  std::optional<double> rate;
  if (cfg.contains("rate")) rate = cfg["rate"].get<double>();
  return read_signal(path, signal_format_from_path(path), rate);
}

// ---------------------------------------------------------------- gen

int cmd_gen(json& cfg, const std::set<std::string>& given, const std::string& kind, const json& units) {
  const std::string prefix = require_text(cfg, "out_prefix");
  const double rate = cfg.value("rate", 1000.0);
  const long long n = cfg.value("samples", 4096LL);
  if (!(rate > 0.0)) throw UsageError("--rate must be positive");
  if (n < 1) throw UsageError("--samples must be positive");
  cfg["rate"] = rate;
  cfg["samples"] = n;
  const std::string format = cfg.value("format", std::string("csv"));
  if (format != "csv" && format != "wav") throw UsageError("--format must be csv or wav");
  cfg["format"] = format;

  const std::set<std::string> all = {"freq", "freq_end", "freqs", "amps", "amplitude", "at", "center", "width"};
  std::map<std::string, std::set<std::string>> allowed = {{"cosine", {"freq", "amplitude"}},
                                                          {"click", {"at"}},
                                                          {"chirp", {"freq", "freq_end"}},
                                                          {"tones", {"freqs", "amps"}},
                                                          {"gaussian-tone", {"freq", "center", "width"}}};
  if (!allowed.count(kind)) throw UsageError("unknown signal kind '" + kind + "' (cosine, click, chirp, tones, gaussian-tone)");
  std::set<std::string> forbidden;
  for (const auto& k : all) {
    if (!allowed[kind].count(k)) forbidden.insert(k);
  }
  reject(given, forbidden, "gen " + kind);
  auto need = [&](const std::string& k) {
    if (!cfg.contains(k)) throw UsageError("gen " + kind + " needs " + flag_name(k));
    return cfg[k];
  };

  const auto samples = static_cast<std::size_t>(n);
  std::optional<Signal> sig;
  if (kind == "cosine") {
    cfg["amplitude"] = cfg.value("amplitude", 1.0);
    sig = gen_cosine(need("freq").get<double>(), cfg["amplitude"].get<double>(), samples, rate);
  } else if (kind == "click") {
    cfg["at"] = cfg.value("at", 0.0);
    sig = gen_click(cfg["at"].get<double>(), samples, rate);
  } else if (kind == "chirp") {
    sig = gen_chirp(need("freq").get<double>(), need("freq_end").get<double>(), samples, rate);
  } else if (kind == "tones") {
    const auto freqs = need("freqs").get<std::vector<double>>();
    auto amps = cfg.value("amps", std::vector<double>(freqs.size(), 1.0));
    if (amps.size() != freqs.size()) throw UsageError("--amps needs one value per frequency");
    cfg["amps"] = amps;
    sig = gen_tones(freqs, amps, samples, rate);
  } else {
    sig = gen_gaussian_tone(need("center").get<double>(), need("width").get<double>(), need("freq").get<double>(),
                            samples, rate);
  }

  ensure_parent(prefix);
  const std::string path = prefix + "." + format;
  write_signal(*sig, path, format == "wav" ? SignalFormat::wav : SignalFormat::csv);
  json meta = metadata("gen", cfg, units, json::array());
  meta["kind"] = kind;
  meta["signal"] = {{"file", fs::path(path).filename().string()},
                    {"sample_rate", sig->sample_rate()},
                    {"start_time", sig->start_time()},
                    {"samples", sig->size()}};
  write_text_json(meta, prefix + ".meta.json");
  return 0;
}

// ---------------------------------------------------------------- transforms

struct StftSetup {
  Window window = Window::gaussian(1.0);
  StftGrid grid;
};

StftSetup stft_setup(json& cfg, const std::set<std::string>& given, const Signal& f) {
  const double rate = f.sample_rate();
  StftSetup s;
  if (cfg.contains("window_file")) {
    reject(given, {"sigma"}, "--window-file");
    const fs::path path = cfg["window_file"].get<std::string>();
    const Signal w = read_signal(path, signal_format_from_path(path), rate);
    std::vector<cplx> samples(w.samples().begin(), w.samples().end());
    s.window = Window::from_samples(std::move(samples), w.sample_rate());
  } else {
    positive(cfg, "sigma");
    cfg["sigma"] = cfg.value("sigma", 32.0 / rate);
    s.window = Window::gaussian(cfg["sigma"].get<double>());
  }
  const long long hop = cfg.value("hop", 4LL);
  if (hop < 1) throw UsageError("--hop must be at least 1");
  cfg["hop"] = hop;
  s.grid.time_step = static_cast<double>(hop) / rate;
  if (cfg.contains("bins") || cfg.contains("fmax")) {
    const double nyquist = std::numbers::pi * rate;
    const double fmax = cfg.value("fmax", nyquist);
    const long long bins = cfg.value("bins", 257LL);
    if (!(fmax > 0.0) || fmax > nyquist * (1.0 + 1e-12)) throw UsageError("--fmax must lie in (0, Nyquist]");
    if (bins < 2) throw UsageError("--bins must be at least 2");
    s.grid.omega_axis.resize(static_cast<std::size_t>(bins));
    for (long long k = 0; k < bins; ++k) {
      s.grid.omega_axis[k] = std::min(fmax, nyquist) * static_cast<double>(k) / static_cast<double>(bins - 1);
    }
  } else {
    s.grid.omega_axis = default_omega_axis(s.window, rate);
  }
  cfg["bins"] = s.grid.omega_axis.size();
  cfg["fmax"] = s.grid.omega_axis.back();
  return s;
}

struct CwtSetup {
  std::optional<AnalyticWavelet> wavelet;
  ExtremalParams params;
  std::vector<double> scales;
};

CwtSetup cwt_setup(json& cfg, const std::set<std::string>& given, const Signal& f) {
  CwtSetup s;
  const std::string family = cfg.value("wavelet", std::string("extremal"));
  cfg["wavelet"] = family;
  if (family == "extremal") {
    reject(given, {"omega0"}, "--wavelet extremal");
    s.params = ExtremalParams::from_json(cfg);
    try {
      s.params.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    const json resolved = s.params.to_json();
    for (const auto& [k, v] : resolved.items()) cfg[k] = v;
    s.wavelet = AnalyticWavelet::extremal(s.params);
  } else if (family == "morlet") {
    reject(given, {"kappa", "nu", "c", "alpha", "beta", "epsilon"}, "--wavelet morlet");
    positive(cfg, "omega0");
    cfg["omega0"] = cfg.value("omega0", 6.0);
    s.wavelet = AnalyticWavelet::morlet(cfg["omega0"].get<double>());
  } else {
    throw UsageError("--wavelet must be extremal or morlet");
  }
  const AnalyticWavelet& w = *s.wavelet;
  if (given.count("a_min") && given.count("fmax")) throw UsageError("--a-min and --fmax cannot be combined");
  if (given.count("a_max") && given.count("fmin")) throw UsageError("--a-max and --fmin cannot be combined");
  for (const char* k : {"a_min", "a_max", "fmin", "fmax"}) positive(cfg, k);
  const double peak = w.peak_frequency();
  double a_min = w.spectral_support(1e-3).second / (std::numbers::pi * f.sample_rate());
  if (cfg.contains("fmax")) a_min = peak / cfg["fmax"].get<double>();
  if (cfg.contains("a_min")) a_min = cfg["a_min"].get<double>();
  double a_max = 64.0 * a_min;
  if (cfg.contains("fmin")) a_max = peak / cfg["fmin"].get<double>();
  if (cfg.contains("a_max")) a_max = cfg["a_max"].get<double>();
  if (!(a_max > a_min)) throw UsageError("scale range is empty: a_max must exceed a_min");
  const long long voices = cfg.value("voices", static_cast<long long>(kDefaultVoices));
  if (voices < 1) throw UsageError("--voices must be at least 1");
  cfg["voices"] = voices;
  s.scales = geometric_scales(a_min, a_max, static_cast<int>(voices));
  cfg["a_min"] = s.scales.front();
  cfg["a_max"] = s.scales.back();
  return s;
}

json descriptor_warnings(const ComplexGrid& g) {
  json w = json::array();
  if (g.descriptor().contains("warnings")) {
    for (const auto& x : g.descriptor()["warnings"]) w.push_back(x);
  }
  return w;
}

double threshold_of(json& cfg) {
  cfg["threshold"] = cfg.value("threshold", kDefaultMagnitudeThreshold);
  const double t = cfg["threshold"].get<double>();
  if (!(t >= 0.0 && t < 1.0)) throw UsageError("--threshold must lie in [0, 1)");
  return t;
}

int cmd_stft(json& cfg, const std::set<std::string>& given, const json& units) {
  const std::string prefix = require_text(cfg, "out_prefix");
  const Signal f = load_input(cfg);
  cfg["rate"] = f.sample_rate();
  const StftSetup s = stft_setup(cfg, given, f);
  const ComplexGrid g = stft(f, s.window, s.grid);
  ensure_parent(prefix);
  write_grid(g, prefix, metadata("stft", cfg, units, descriptor_warnings(g)));
  return 0;
}

int cmd_cwt(json& cfg, const std::set<std::string>& given, const json& units) {
  const std::string prefix = require_text(cfg, "out_prefix");
  const Signal f = load_input(cfg);
  cfg["rate"] = f.sample_rate();
  const CwtSetup s = cwt_setup(cfg, given, f);
  const ComplexGrid g = cwt(f, *s.wavelet, s.scales);
  ensure_parent(prefix);
  write_grid(g, prefix, metadata("cwt", cfg, units, descriptor_warnings(g)));
  return 0;
}

Eigen::MatrixXd mask_matrix(const Mask& m) { return m.cast<double>().matrix(); }

ReassignOptions reassign_options(json& cfg) {
  ReassignOptions o;
  const std::string mode = cfg.value("mode", std::string("grid_sum"));
  if (mode == "full_kernel") {
    o.mode = ReassignMode::full_kernel;
  } else if (mode != "grid_sum") {
    throw UsageError("--mode must be grid_sum or full_kernel");
  }
  const std::string phase = cfg.value("kernel_phase", std::string("coherent"));
  if (phase == "as_written") {
    o.phase = KernelPhase::as_written;
  } else if (phase != "coherent") {
    throw UsageError("--kernel-phase must be coherent or as_written");
  }
  o.jacobian_threshold = cfg.value("jacobian_threshold", kDefaultJacobianThreshold);
  if (!(o.jacobian_threshold > 0.0)) throw UsageError("--jacobian-threshold must be positive");
  o.unweighted = cfg.value("unweighted", false);
  if (o.unweighted && o.mode != ReassignMode::grid_sum) throw UsageError("--unweighted needs --mode grid_sum");
  cfg["mode"] = mode;
  cfg["kernel_phase"] = phase;
  cfg["jacobian_threshold"] = o.jacobian_threshold;
  cfg["unweighted"] = o.unweighted;
  return o;
}

int cmd_reassign(json& cfg, const std::set<std::string>& given, const json& units) {
  const std::string prefix = require_text(cfg, "out_prefix");
  const std::string method = require_text(cfg, "method");
  static const std::map<std::string, MapMethod> cwt_methods = {{"cwt-T", MapMethod::phase_T},
                                                               {"cwt-Tbeta", MapMethod::phase_Tbeta},
                                                               {"cwt-amplitude", MapMethod::amplitude},
                                                               {"cwt-holomorphic", MapMethod::holomorphic}};
  const std::set<std::string> stft_keys = {"sigma", "window_file", "hop", "bins"};
  const std::set<std::string> cwt_keys = {"wavelet", "kappa", "nu",    "c",    "alpha", "beta",  "epsilon",
                                          "omega0",  "a_min", "a_max", "fmin", "voices"};
  if (method != "stft" && !cwt_methods.count(method)) {
    throw UsageError("--method must be one of stft, cwt-T, cwt-Tbeta, cwt-amplitude, cwt-holomorphic");
  }
  if (method == "stft") {
    reject(given, cwt_keys, "--method stft");
  } else {
    reject(given, stft_keys, "--method " + method);
  }
  const ReassignOptions options = reassign_options(cfg);
  const double threshold = threshold_of(cfg);
  const Signal f = load_input(cfg);
  cfg["rate"] = f.sample_rate();
  json warnings = json::array();

  if (method == "stft") {
    const StftSetup s = stft_setup(cfg, given, f);
    const auto pg = stft_phase_gradients(f, s.window, s.grid, threshold);
    const auto field = reassignment_map(pg);
    const ComplexGrid out =
        reassign_spectrogram(pg.transform, field, s.window, field.time_axis, field.omega_axis, options);
    for (const auto& w : descriptor_warnings(pg.transform)) warnings.push_back(w);
    json meta = metadata("reassign", cfg, units, warnings);
    meta["method"] = "stft";
    ensure_parent(prefix);
    write_grid(pg.transform, prefix + ".raw", meta);
    write_fields({{"t_hat", field.t_hat},
                  {"omega_hat", field.omega_hat},
                  {"jacobian", field.jacobian},
                  {"mask", mask_matrix(field.mask)}},
                 field.time_axis, field.omega_axis, AxisKind::frequency, prefix + ".map", meta);
    write_grid(out, prefix, meta);
    return 0;
  }

  const MapMethod which = cwt_methods.at(method);
  const CwtSetup s = cwt_setup(cfg, given, f);
  const AnalyticWavelet& w = *s.wavelet;
  const auto ld = cwt_log_derivatives(f, w, s.scales, threshold);
  for (const auto& x : descriptor_warnings(ld.transform)) warnings.push_back(x);
  if (!w.is_extremal() && (which == MapMethod::amplitude || which == MapMethod::holomorphic)) {
    warnings.push_back("method " + method +
                       " assumes an extremal wavelet; the map was computed with default extremal constants "
                       "for a " + cfg["wavelet"].get<std::string>() + " wavelet and is not meaningful");
  }
  ScaleTimeMap map;
  switch (which) {
    case MapMethod::phase_T:
      map = map_T(ld);
      break;
    case MapMethod::phase_Tbeta:
      map = map_Tbeta(ld, s.params);
      break;
    case MapMethod::amplitude:
      map = map_amplitude(ld, s.params);
      break;
    case MapMethod::holomorphic:
      map = map_holomorphic(extract_holomorphic(ld.transform, s.params, threshold), s.params);
      break;
  }
  const ComplexGrid out = reassign_scalogram(ld.transform, map, w, ld.transform.time_axis(), s.scales, options);
  json meta = metadata("reassign", cfg, units, warnings);
  meta["method"] = to_string(map.method);
  meta["map_notes"] = map.notes;
  ensure_parent(prefix);
  write_grid(ld.transform, prefix + ".raw", meta);
  write_fields({{"a_hat", map.a_hat}, {"t_hat", map.t_hat}, {"jacobian", map.jacobian}, {"mask", mask_matrix(map.mask)}},
               map.times, map.scales, AxisKind::scale, prefix + ".map", meta);
  write_grid(out, prefix, meta);
  return 0;
}

// ---------------------------------------------------------------- render

int cmd_render(json& cfg, const json& units) {
  const std::string prefix = require_text(cfg, "out_prefix");
  const std::string in = require_text(cfg, "in");
  const std::string channel = cfg.value("channel", std::string("magnitude"));
  if (channel != "magnitude" && channel != "phase") throw UsageError("--channel must be magnitude or phase");
  RenderOptions ro;
  ro.dynamic_range_db = cfg.value("range_db", ro.dynamic_range_db);
  ro.gamma = cfg.value("gamma", ro.gamma);
  if (!(ro.dynamic_range_db > 0.0)) throw UsageError("--range-db must be positive");
  if (!(ro.gamma > 0.0)) throw UsageError("--gamma must be positive");
  cfg["channel"] = channel;
  cfg["range_db"] = ro.dynamic_range_db;
  cfg["gamma"] = ro.gamma;
  const ComplexGrid g = read_grid(in);
  ensure_parent(prefix);
  json files = {{"magnitude", fs::path(prefix + ".pgm").filename().string()}};
  write_pgm(render_magnitude(g, ro), prefix + ".pgm");
  if (channel == "phase") {
    write_pgm(render_phase(g), prefix + ".phase.pgm");
    files["phase"] = fs::path(prefix + ".phase.pgm").filename().string();
  }
  json meta = metadata("render", cfg, units, json::array());
  meta["files"] = files;
  meta["image"] = {{"width", g.cols()}, {"height", g.rows()}, {"top_row", g.axis_kind() == AxisKind::frequency
                                                                               ? "largest frequency"
                                                                               : "smallest scale"}};
  write_text_json(meta, prefix + ".render.json");
  return 0;
}

// ---------------------------------------------------------------- verify

int cmd_verify(json& cfg, const std::string& suite, const json& units) {
  json options = json::object();
  for (const auto& spec : kVerifyOptions) {
    if (cfg.contains(spec.key)) options[spec.key] = cfg[spec.key];
  }
  cfg["suite"] = suite;
  const auto results = run_suite(suite, options);
  bool all = true;
  json report = metadata("verify", cfg, units, json::array());
  for (const auto& r : results) {
    all = all && r.passed;
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << "\n" << r.detail.dump(2) << "\n";
    report["checks"].push_back(r.to_json());
  }
  report["passed"] = all;
  if (cfg.contains("out_prefix") && !cfg["out_prefix"].get<std::string>().empty()) {
    const std::string prefix = cfg["out_prefix"].get<std::string>();
    ensure_parent(prefix);
    write_text_json(report, prefix + ".json");
  }
  std::cout << (all ? "PASS" : "FAIL") << " " << suite << " (" << results.size() << " check"
            << (results.size() == 1 ? "" : "s") << ")\n";
  return all ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"Reassigned time-frequency and time-scale representations", "tfr"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::map<std::string, Command> commands;
  auto make = [&](const std::string& name, const std::string& help, std::vector<std::vector<OptionSpec>> groups) {
    Command& c = commands[name];
    c.app = app.add_subcommand(name, help);
    c.add(common_options());
    for (const auto& g : groups) c.add(g);
    return &c;
  };
  Command* gen = make("gen", "generate a test signal", {kGenOptions});
  gen->app->add_option("kind", gen->positional, "cosine, click, chirp, tones or gaussian-tone")->required();
  make("stft", "short-time Fourier transform", {kInputOptions, kStftOptions});
  make("cwt", "continuous wavelet transform", {kInputOptions, kCwtOptions});
  make("reassign", "reassigned spectrogram or scalogram", {kInputOptions, kReassignOptions, kStftOptions, kCwtOptions});
  make("render", "render a grid as a PGM image", {kRenderOptions});
  Command* verify = make("verify", "run a verification suite", {kVerifyOptions});
  verify->positional = "all";
  verify->app->add_option("suite", verify->positional, "all, cosine, click, structure, agreement, concentration, "
                                                       "covariance, holomorphy, roundtrip or tangency");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    for (auto& [name, cmd] : commands) {
      if (!cmd.app->parsed()) continue;
      std::set<std::string> given;
      json cfg = resolve(cmd, given);
      const json units = frequency_units(cmd);
      if (cfg.contains("threads")) {
        const long long t = cfg["threads"].get<long long>();
        if (t < 1) throw UsageError("--threads must be at least 1");
        omp_set_num_threads(static_cast<int>(t));
      }
      if (name == "gen") return cmd_gen(cfg, given, cmd.positional, units);
      if (name == "stft") return cmd_stft(cfg, given, units);
      if (name == "cwt") return cmd_cwt(cfg, given, units);
      if (name == "reassign") return cmd_reassign(cfg, given, units);
      if (name == "render") return cmd_render(cfg, units);
      if (name == "verify") return cmd_verify(cfg, cmd.positional, units);
    }
  } catch (const UsageError& e) {
    std::cerr << "tfr: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "tfr: error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace tfr::cli
