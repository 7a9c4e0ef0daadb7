#pragma once

#include <stdexcept>
#include <string>

namespace rydlv {

/// Invalid user-supplied configuration or malformed input data.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Integration or optimisation failure.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what, double time_ms = 0.0)
      : std::runtime_error(what), time_ms_(time_ms) {}

  /// Simulation time at which the failure was detected (0 when not applicable).
  double time_ms() const noexcept { return time_ms_; }

 private:
  double time_ms_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rydlv
