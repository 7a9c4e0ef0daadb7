#pragma once

// Two-species Lotka-Volterra model: dx/dt = αx − βxy, dy/dt = −γy + δxy.
// Time is in milliseconds, rates in 1/ms, populations are dimensionless.

#include <cstddef>
#include <vector>

namespace rydlv {

struct LvParams {
  double alpha = 0.0;  ///< prey growth rate
  double beta = 0.0;   ///< predation rate per unit predator
  double gamma = 0.0;  ///< predator decay rate
  double delta = 0.0;  ///< predator growth per unit prey

  /// Throws std::invalid_argument unless all four rates are finite and > 0.
  void validate() const;

  /// Rates fitted to a 5 ms transmission record at B = 11.6 G.
  static LvParams reference() { return {0.75, 0.25, 0.31755, 0.25}; }

  friend bool operator==(const LvParams&, const LvParams&) = default;
};

struct PopulationState {
  double x = 0.0;  ///< prey (Rydberg superpositions)
  double y = 0.0;  ///< predator (charges)

  friend bool operator==(const PopulationState&, const PopulationState&) = default;
};

/// Time derivative of a PopulationState.
struct Rates {
  double dx = 0.0;
  double dy = 0.0;
};

struct TimeSpan {
  double start = 0.0;
  double end = 0.0;

  double length() const noexcept { return end - start; }
};

/// Time-stamped samples of a solution. Times strictly increasing.
struct Trajectory {
  std::vector<double> times;
  std::vector<PopulationState> states;

  std::size_t size() const noexcept { return times.size(); }
  bool empty() const noexcept { return times.empty(); }

  std::vector<double> prey() const;
  std::vector<double> predator() const;

  /// Throws std::invalid_argument on length mismatch, non-increasing times or
  /// non-finite values.
  void validate() const;
};

Rates derivative(const PopulationState& s, const LvParams& p) noexcept;

/// Coexistence equilibrium (γ/δ, α/β).
PopulationState coexistence_point(const LvParams& p) noexcept;

/// {(0, 0), (γ/δ, α/β)}.
std::vector<PopulationState> fixed_points(const LvParams& p);

/// First integral V = δx − γ·ln x + βy − α·ln y.
/// Throws std::domain_error for x ≤ 0 or y ≤ 0.
double conserved_quantity(const PopulationState& s, const LvParams& p);

/// Small-amplitude period 2π/√(αγ) about the coexistence point, in ms.
double linearized_period(const LvParams& p);

/// Times at which the prey component crosses `level` from below, located by
/// linear interpolation between adjacent samples.
std::vector<double> upward_crossings(const Trajectory& traj, double level);

}  // namespace rydlv
