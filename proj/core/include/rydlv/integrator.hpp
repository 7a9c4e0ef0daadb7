#pragma once

#include <cstddef>
#include <span>

#include "rydlv/lv_core.hpp"

namespace rydlv {

enum class IntegratorMethod {
  rk4_fixed,  ///< classical 4th-order Runge-Kutta, constant step
  dopri45,    ///< Dormand-Prince 5(4) embedded pair with step control
};

struct IntegratorOptions {
  IntegratorMethod method = IntegratorMethod::dopri45;
  double step = 1e-3;             ///< ms, fixed-step method only
  /// Adaptive method only. Requested accuracy; each step is held to a tenth
  /// of rtol and atol.
  double rtol = 1e-9;   ///< in (0, 1e-2]
  double atol = 1e-12;
  std::size_t max_steps = 50'000'000;
  double sample_interval = 1e-2;  ///< ms between reported samples

  void validate() const;
};

/// Integrates the LV equations over `span`, reporting samples at
/// span.start + k·sample_interval and at span.end.
///
/// States that undershoot zero by less than 1e-9 are clamped to zero; a larger
/// undershoot, a non-finite state, or exceeding max_steps throws
/// NumericalError carrying the failure time.
Trajectory integrate(const LvParams& params, const PopulationState& init, TimeSpan span,
                     const IntegratorOptions& opts = {});

/// As integrate(), but samples exactly at `sample_times` (strictly increasing,
/// all ≥ t0). sample_interval is ignored.
Trajectory integrate_at(const LvParams& params, const PopulationState& init, double t0,
                        std::span<const double> sample_times,
                        const IntegratorOptions& opts = {});

struct PeriodOptions {
  double rtol = 1e-12;
  /// Sample density used for crossing interpolation.
  std::size_t samples_per_linear_period = 20'000;
  /// Search horizon in units of the linearised period.
  double max_linear_periods = 200.0;
};

/// Period of the closed orbit through `init`, from successive upward crossings
/// of the section x = γ/δ. Throws std::invalid_argument for a fixed point or a
/// non-positive population, NumericalError if no two crossings are found.
double period(const LvParams& params, const PopulationState& init,
              const PeriodOptions& opts = {});

}  // namespace rydlv
