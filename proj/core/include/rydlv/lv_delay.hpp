#pragma once

// Delayed Lotka-Volterra model. Predator growth is driven by the prey
// population one transit time τ in the past:
//   dx/dt = αx(t) − βx(t)y(t)
//   dy/dt = −γy(t) + δx(t−τ)y(t)

#include <optional>
#include <span>
#include <vector>

#include "rydlv/integrator.hpp"
#include "rydlv/lv_core.hpp"

namespace rydlv {

/// Transit time of excited atoms across a 6 mm beam separation.
inline constexpr double kDefaultTransitDelayMs = 0.024;

/// Prey values on [−τ, 0] before integration starts.
class PreyHistory {
 public:
  static PreyHistory constant(double value);
  /// Piecewise-linear through (times, values); times strictly increasing.
  static PreyHistory sampled(std::vector<double> times, std::vector<double> values);

  double at(double t) const;

  bool is_constant() const noexcept { return times_.empty(); }
  /// Throws std::invalid_argument unless the history covers [−tau, 0] with
  /// non-negative values.
  void validate(double tau) const;

 private:
  double constant_ = 0.0;
  std::vector<double> times_;
  std::vector<double> values_;
};

struct DelayParams {
  LvParams base;
  double tau = kDefaultTransitDelayMs;
  /// Empty means constant history equal to the initial prey.
  std::optional<PreyHistory> history;

  void validate() const;
};

Rates delayed_derivative(double t, const PopulationState& state, double delayed_prey,
                         const DelayParams& params) noexcept;

/// Method-of-steps integration. Steps never exceed τ and land on every multiple
/// of τ, so every delayed argument falls in history or in an already accepted
/// step, where it is read from a cubic Hermite interpolant of the stored prey
/// samples. τ = 0 reduces to integrate().
Trajectory integrate_delayed(const DelayParams& params, const PopulationState& init, TimeSpan span,
                             const IntegratorOptions& opts = {});

/// As integrate_delayed(), sampled exactly at `sample_times` (strictly
/// increasing, all ≥ t0).
Trajectory integrate_delayed_at(const DelayParams& params, const PopulationState& init, double t0,
                                std::span<const double> sample_times,
                                const IntegratorOptions& opts = {});

}  // namespace rydlv
