#include "rydlv/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "rydlv/csv.hpp"
#include "rydlv/errors.hpp"

namespace rydlv::io {

namespace {

struct ModeName {
  Mode mode;
  std::string_view name;
};

constexpr ModeName kModes[] = {
    {Mode::simulate, "simulate"},       {Mode::simulate_delayed, "simulate-delayed"},
    {Mode::spectra, "spectra"},         {Mode::fit, "fit"},
    {Mode::discriminate, "discriminate"}, {Mode::sense, "sense"},
};

std::vector<KeySpec> make_keys() {
  std::vector<KeySpec> k = {
      // model
      {"alpha", "0.75", "prey growth rate, 1/ms (fit: initial guess)"},
      {"beta", "0.25", "predation rate, 1/ms (fit: initial guess)"},
      {"gamma", "0.31755", "predator decay rate, 1/ms (fit: initial guess)"},
      {"delta", "0.25", "predator growth rate, 1/ms (fit: initial guess)"},
      {"x0", "8", "initial prey population"},
      {"y0", "6", "initial predator population"},
      {"t_start", "0", "start time, ms"},
      {"t_end", "5", "end time, ms; also the discrimination window"},
      {"sample_dt", "0.001", "output sample interval, ms"},
      // integrator
      {"integrator", "dopri45", "dopri45 or rk4"},
      {"rtol", "1e-10", "relative tolerance (dopri45)"},
      {"atol", "1e-14", "absolute tolerance (dopri45)"},
      {"step", "1e-4", "step size, ms (rk4)"},
      {"max_steps", "50000000", "integration step budget"},
      // delay
      {"tau", "0.024", "transit delay, ms (simulate-delayed, fit_delayed)"},
      {"history_times", "", "prey history times in [-tau, 0], comma separated; empty for constant"},
      {"history_prey", "", "prey history values matching history_times"},
      // readout
      {"fwhm", "12", "EIT linewidth, MHz"},
      {"max_shift", "9", "saturated charge shift, MHz"},
      {"lock_detuning", "-8", "probe lock detuning, MHz"},
      {"amplitude", "1", "transmission amplitude"},
      {"baseline", "0", "transmission baseline"},
      {"y_half", "3", "predator level at half the maximum shift"},
      {"shift_direction", "red", "red or blue"},
      {"noise_sigma", "0", "additive Gaussian noise standard deviation"},
      {"seed", "1", "random seed for noise and fit starts"},
      // detection
      {"prominence_fraction", "0.25", "pulse prominence threshold as a fraction of the range"},
      {"min_separation", "0", "minimum pulse spacing, ms"},
      {"smoothing_window", "0", "moving-average window, samples"},
      // files
      {"input", "", "input CSV (fit, sense)"},
      {"output_dir", ".", "directory for output files"},
      // spectra
      {"detuning_min", "-40", "spectra grid start, MHz"},
      {"detuning_max", "40", "spectra grid end, MHz"},
      {"detuning_step", "0.01", "spectra grid spacing, MHz"},
      {"levels", "0,1e12", "predator levels for the spectra, comma separated"},
      // fit
      {"fit_method", "lm", "lm or nelder-mead"},
      {"starts", "4", "number of fit starts"},
      {"start_spread", "0.05", "log-space jitter of starts after the first"},
      {"max_iterations", "500", "iterations per start"},
      {"rel_tol", "1e-10", "relative loss improvement for convergence"},
      {"beta_equals_delta", "true", "tie delta to beta"},
      {"fit_init", "true", "fit x0 and y0"},
      {"fit_delayed", "false", "fit the delayed model with fixed tau"},
      {"free_amplitude", "false", "fit the transmission amplitude"},
      {"free_baseline", "false", "fit the transmission baseline"},
      {"free_y_half", "false", "fit y_half"},
      {"parallel", "false", "run fit starts on separate threads"},
      // discriminate
      {"gamma_a", "0.31755", "reference predator decay rate, 1/ms"},
      {"gamma_b", "0.3178", "perturbed predator decay rate, 1/ms"},
      // sense
      {"field", "", "field, G: synthesize a pulse train at this field"},
      {"freq_slope", "1.033", "oscillation frequency per field, kHz/G"},
      {"freq_slope_err", "0.006", "uncertainty of freq_slope, kHz/G"},
      {"threshold", "4", "oscillation threshold, G"},
      {"anchor_field", "12.1,21.3", "calibration fields, G"},
      {"anchor_alpha", "0.651,0.868", "alpha at the calibration fields"},
      {"anchor_beta", "0.217,0.434", "beta (= delta) at the calibration fields"},
      {"anchor_gamma", "0.276,0.566", "gamma at the calibration fields"},
      {"pulses", "20", "pulses in the synthesized train"},
      {"pulse_fwhm_fraction", "0.2", "pulse width as a fraction of the period"},
      {"samples_per_period", "200", "samples per period of the synthesized train (even)"},
  };
  std::sort(k.begin(), k.end(), [](const KeySpec& a, const KeySpec& b) { return a.name < b.name; });
  return k;
}

bool known_key(const std::string& key) {
  const auto& keys = config_keys();
  const auto it = std::lower_bound(keys.begin(), keys.end(), key,
                                   [](const KeySpec& a, const std::string& b) { return a.name < b; });
  return it != keys.end() && it->name == key;
}

std::string_view trim(std::string_view s) {
  const auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (!s.empty() && ws(s.front())) s.remove_prefix(1);
  while (!s.empty() && ws(s.back())) s.remove_suffix(1);
  return s;
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value, const char* expected) {
  throw ConfigError("key '" + key + "': expected " + expected + ", got '" + value + "'");
}

double parse_double(const std::string& key, std::string_view s) {
  s = trim(s);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
    bad_value(key, std::string(s), "a finite number");
  }
  return v;
}

template <class F>
auto checked(const char* what, F&& f) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

std::string_view mode_name(Mode m) noexcept {
  for (const auto& e : kModes) {
    if (e.mode == m) return e.name;
  }
  return "?";
}

Mode parse_mode(std::string_view name) {
  for (const auto& e : kModes) {
    if (e.name == name) return e.mode;
  }
  throw ConfigError("unknown mode '" + std::string(name) + "'");
}

const std::vector<Mode>& all_modes() {
  static const std::vector<Mode> modes = [] {
    std::vector<Mode> m;
    for (const auto& e : kModes) m.push_back(e.mode);
    return m;
  }();
  return modes;
}

const std::vector<KeySpec>& config_keys() {
  static const std::vector<KeySpec> keys = make_keys();
  return keys;
}

KeyValues parse_config_text(std::string_view text, const std::string& source) {
  KeyValues out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const std::size_t eq = line.find('=');
    const std::string where = source + ":" + std::to_string(line_no) + ": ";
    if (eq == std::string_view::npos) throw ConfigError(where + "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ConfigError(where + "empty key");
    if (!known_key(key)) throw ConfigError(where + "unknown key '" + key + "'");
    if (!out.emplace(key, value).second) throw ConfigError(where + "duplicate key '" + key + "'");
  }
  return out;
}

RunConfig::RunConfig(Mode mode, const KeyValues& file, const KeyValues& overrides) : mode_(mode) {
  for (const auto& k : config_keys()) values_[k.name] = k.default_value;
  for (const KeyValues* layer : {&file, &overrides}) {
    for (const auto& [key, value] : *layer) {
      if (!known_key(key)) throw ConfigError("unknown key '" + key + "'");
      values_[key] = value;
    }
  }
}

const std::string& RunConfig::text(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("unknown key '" + key + "'");
  return it->second;
}

double RunConfig::number(const std::string& key) const { return parse_double(key, text(key)); }

std::uint64_t RunConfig::integer(const std::string& key) const {
  const std::string& s = text(key);
  std::uint64_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    bad_value(key, s, "a non-negative integer");
  }
  return v;
}

bool RunConfig::flag(const std::string& key) const {
  const std::string& s = text(key);
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  bad_value(key, s, "true or false");
}

std::vector<double> RunConfig::numbers(const std::string& key) const {
  std::vector<double> out;
  std::string_view s = text(key);
  if (trim(s).empty()) return out;
  while (true) {
    const std::size_t comma = s.find(',');
    out.push_back(parse_double(key, s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

std::string RunConfig::canonical_text() const {
  std::string out = "mode=" + std::string(mode_name(mode_)) + "\n";
  for (const auto& [key, value] : values_) {
    if (key == "output_dir") continue;  // where results go does not change them
    out += key + "=" + value + "\n";
  }
  return out;
}

std::string RunConfig::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical_text()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

LvParams RunConfig::params() const {
  const LvParams p{number("alpha"), number("beta"), number("gamma"), number("delta")};
  checked("model rates", [&] { p.validate(); return 0; });
  return p;
}

PopulationState RunConfig::init() const {
  const PopulationState s{number("x0"), number("y0")};
  if (!(s.x >= 0.0) || !(s.y >= 0.0)) throw ConfigError("x0 and y0 must be >= 0");
  return s;
}

TimeSpan RunConfig::span() const {
  const TimeSpan s{number("t_start"), number("t_end")};
  if (!(s.end > s.start)) throw ConfigError("t_end must be greater than t_start");
  return s;
}

IntegratorOptions RunConfig::integrator() const {
  IntegratorOptions o;
  const std::string& m = text("integrator");
  if (m == "dopri45") {
    o.method = IntegratorMethod::dopri45;
  } else if (m == "rk4") {
    o.method = IntegratorMethod::rk4_fixed;
  } else {
    bad_value("integrator", m, "dopri45 or rk4");
  }
  o.rtol = number("rtol");
  o.atol = number("atol");
  o.step = number("step");
  o.max_steps = integer("max_steps");
  o.sample_interval = number("sample_dt");
  checked("integrator", [&] { o.validate(); return 0; });
  return o;
}

LineshapeModel RunConfig::lineshape() const {
  LineshapeModel m;
  m.fwhm = number("fwhm");
  m.max_shift = number("max_shift");
  m.lock_detuning = number("lock_detuning");
  m.amplitude = number("amplitude");
  m.baseline = number("baseline");
  m.y_half = number("y_half");
  const std::string& d = text("shift_direction");
  if (d == "red") {
    m.direction = ShiftDirection::red;
  } else if (d == "blue") {
    m.direction = ShiftDirection::blue;
  } else {
    bad_value("shift_direction", d, "red or blue");
  }
  checked("lineshape", [&] { m.validate(); return 0; });
  return m;
}

NoiseModel RunConfig::noise() const {
  const double sigma = number("noise_sigma");
  if (sigma < 0.0) throw ConfigError("noise_sigma must be >= 0");
  if (sigma == 0.0) return {};
  return NoiseModel::gaussian(sigma, seed());
}

DetectionOptions RunConfig::detection() const {
  DetectionOptions d;
  d.prominence_fraction = number("prominence_fraction");
  d.min_separation = number("min_separation");
  d.smoothing_window = integer("smoothing_window");
  checked("detection", [&] { d.validate(); return 0; });
  return d;
}

DelayParams RunConfig::delay() const {
  DelayParams d;
  d.base = params();
  d.tau = number("tau");
  const auto ht = numbers("history_times");
  const auto hv = numbers("history_prey");
  if (!ht.empty() || !hv.empty()) {
    d.history = checked("prey history", [&] { return PreyHistory::sampled(ht, hv); });
  }
  checked("delay", [&] { d.validate(); return 0; });
  return d;
}

FieldCalibration RunConfig::calibration() const {
  FieldCalibration cal;
  cal.freq_slope = number("freq_slope");
  cal.freq_slope_err = number("freq_slope_err");
  cal.threshold = number("threshold");
  const auto f = numbers("anchor_field");
  const auto a = numbers("anchor_alpha");
  const auto b = numbers("anchor_beta");
  const auto g = numbers("anchor_gamma");
  if (a.size() != f.size() || b.size() != f.size() || g.size() != f.size()) {
    throw ConfigError("anchor_field, anchor_alpha, anchor_beta and anchor_gamma must have equal length");
  }
  cal.anchors.clear();
  for (std::size_t i = 0; i < f.size(); ++i) cal.anchors.push_back({f[i], {a[i], b[i], g[i], b[i]}});
  checked("calibration", [&] { cal.validate(); return 0; });
  return cal;
}

std::string calibration_text(const FieldCalibration& cal) {
  const auto join = [&](auto get) {
    std::string s;
    for (std::size_t i = 0; i < cal.anchors.size(); ++i) {
      if (i) s += ',';
      s += format_double(get(cal.anchors[i]));
    }
    return s;
  };
  std::string out;
  out += "freq_slope = " + format_double(cal.freq_slope) + "\n";
  out += "freq_slope_err = " + format_double(cal.freq_slope_err) + "\n";
  out += "threshold = " + format_double(cal.threshold) + "\n";
  out += "anchor_field = " + join([](const FieldAnchor& a) { return a.field; }) + "\n";
  out += "anchor_alpha = " + join([](const FieldAnchor& a) { return a.params.alpha; }) + "\n";
  out += "anchor_beta = " + join([](const FieldAnchor& a) { return a.params.beta; }) + "\n";
  out += "anchor_gamma = " + join([](const FieldAnchor& a) { return a.params.gamma; }) + "\n";
  return out;
}

}  // namespace rydlv::io
