#pragma once

// Run configuration: a flat `key = value` text file, overridden key by key
// from the command line. Every key has a default; unknown keys are rejected.

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "rydlv/estimation.hpp"
#include "rydlv/field_sensing.hpp"
#include "rydlv/integrator.hpp"
#include "rydlv/lv_core.hpp"
#include "rydlv/lv_delay.hpp"
#include "rydlv/observables.hpp"
#include "rydlv/signal_analysis.hpp"

namespace rydlv::io {

enum class Mode { simulate, simulate_delayed, spectra, fit, discriminate, sense };

std::string_view mode_name(Mode m) noexcept;
/// Throws ConfigError for an unknown name.
Mode parse_mode(std::string_view name);
const std::vector<Mode>& all_modes();

struct KeySpec {
  std::string name;
  std::string default_value;
  std::string help;
};

/// Every recognised key, sorted by name.
const std::vector<KeySpec>& config_keys();

using KeyValues = std::map<std::string, std::string>;

/// Parses `key = value` lines. Blank lines and lines starting with '#' are
/// ignored. Throws ConfigError on syntax errors, duplicates or unknown keys.
KeyValues parse_config_text(std::string_view text, const std::string& source = "<config>");

class RunConfig {
 public:
  /// Defaults, then `file` values, then `overrides`. Throws ConfigError on
  /// unknown keys.
  RunConfig(Mode mode, const KeyValues& file = {}, const KeyValues& overrides = {});

  Mode mode() const noexcept { return mode_; }
  /// Every key with its effective value.
  const KeyValues& values() const noexcept { return values_; }

  const std::string& text(const std::string& key) const;
  double number(const std::string& key) const;
  std::uint64_t integer(const std::string& key) const;
  bool flag(const std::string& key) const;
  /// Comma-separated numbers; empty value gives an empty list.
  std::vector<double> numbers(const std::string& key) const;
  bool has_value(const std::string& key) const { return !text(key).empty(); }

  /// `mode=...` followed by every `key=value`, one per line, sorted.
  std::string canonical_text() const;
  /// FNV-1a 64 of canonical_text(), as 16 hex digits.
  std::string hash() const;

  // Typed views. Each throws ConfigError for malformed or invalid values.
  LvParams params() const;
  PopulationState init() const;
  TimeSpan span() const;
  IntegratorOptions integrator() const;
  LineshapeModel lineshape() const;
  NoiseModel noise() const;
  DetectionOptions detection() const;
  DelayParams delay() const;
  FieldCalibration calibration() const;
  std::uint64_t seed() const { return integer("seed"); }

 private:
  Mode mode_;
  KeyValues values_;
};

/// Calibration as config lines (the keys read by RunConfig::calibration()).
std::string calibration_text(const FieldCalibration& cal);

}  // namespace rydlv::io
