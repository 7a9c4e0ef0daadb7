#pragma once

// Least-squares recovery of LV rates, initial populations and readout
// constants from a transmission waveform or a sampled trajectory.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rydlv/integrator.hpp"
#include "rydlv/lv_core.hpp"
#include "rydlv/observables.hpp"
#include "rydlv/signal_analysis.hpp"

namespace rydlv {

/// Readout constants released to the optimiser; everything else stays fixed.
struct ObservableFreedom {
  bool amplitude = false;
  bool baseline = false;
  bool y_half = false;
};

struct ParameterBounds {
  double rate_min = 1e-4;
  double rate_max = 1e3;
  double population_min = 1e-8;
  double population_max = 1e6;
};

/// A point in model space: everything the forward model needs.
struct FitCandidate {
  LvParams params;
  PopulationState init;
  LineshapeModel observables;
};

using FitData = std::variant<TransmissionWaveform, Trajectory>;

struct FitProblem {
  FitData data;
  /// Integration start; defaults to the earliest data time.
  std::optional<double> start_time;
  bool delayed = false;
  double tau = 0.0;  ///< ms, used when delayed
  ObservableFreedom free_observables;
  bool beta_equals_delta = false;
  bool fit_init = true;
  ParameterBounds bounds;
  IntegratorOptions integrator = default_integrator();

  /// Throws std::invalid_argument on infeasible bounds or too few data points
  /// (fewer than ten per free parameter).
  void validate() const;

  std::size_t data_points() const;
  std::size_t free_parameter_count() const;
  std::vector<std::string> free_parameter_names() const;

  static IntegratorOptions default_integrator() {
    IntegratorOptions o;
    o.rtol = 1e-10;
    o.atol = 1e-14;
    return o;
  }
};

struct ResidualEvaluation {
  double loss = 0.0;
  /// Integration failed; `loss` then holds a large finite penalty.
  bool failed = false;
};

/// Σ(model − data)² with the model integrated and read out noise-free at the
/// data time stamps. Data order does not matter.
ResidualEvaluation simulate_residual(const FitCandidate& candidate, const FitProblem& problem);

enum class FitMethod {
  levenberg_marquardt,  ///< finite-difference Jacobian, Marquardt damping
  nelder_mead,
};

struct MultiStart {
  FitCandidate guess;
  std::size_t starts = 4;
  /// Standard deviation of the log-space jitter applied to starts after the first.
  double log_spread = 0.05;
  std::uint64_t seed = 1;
};

struct FitOptions {
  FitMethod method = FitMethod::levenberg_marquardt;
  std::size_t max_iterations = 500;
  /// Converged when an accepted step improves the loss by less than this
  /// fraction.
  double rel_tol = 1e-10;
  /// Run starts on separate threads. Results are identical either way.
  bool parallel = false;
};

struct FitResult {
  FitCandidate best;
  double residual = 0.0;
  bool converged = false;
  std::size_t iterations = 0;
  std::size_t start_index = 0;
  std::vector<std::string> parameter_names;
  /// Diagonal of the Gauss-Newton curvature 2JᵀJ of the loss, per free
  /// parameter in its natural units.
  std::vector<double> sensitivity;
  /// Best loss after each iteration of the winning start.
  std::vector<double> loss_history;
  /// Final loss of every start, in start order.
  std::vector<double> start_losses;
};

/// Best-of-starts local least squares in log-parameter space. With
/// beta_equals_delta set, δ is tied to β. Throws NumericalError when no start
/// converges, std::invalid_argument for an ill-posed problem.
FitResult fit(const FitProblem& problem, const MultiStart& starts, const FitOptions& opts = {});

struct DiscriminationOptions {
  double sample_interval = 1e-4;  ///< ms
  IntegratorOptions integrator = FitProblem::default_integrator();
  DetectionOptions detection;
};

struct DiscriminationReport {
  TransmissionWaveform reference;  ///< gamma_a
  TransmissionWaveform perturbed;  ///< gamma_b
  std::vector<double> reference_peak_times;
  /// RMS of (perturbed − reference) over each reference pulse window.
  std::vector<double> per_pulse_rms;
  /// |t_b − t_a| between each reference pulse and the nearest perturbed pulse.
  std::vector<double> peak_time_drift;
  double first_pulse_rms = 0.0;
  double last_pulse_rms = 0.0;

  std::size_t pulse_count() const noexcept { return reference_peak_times.size(); }
};

/// Simulates the same initial state with two predator decay rates and
/// compares the waveforms pulse by pulse. Pulse windows are split at the
/// midpoints between successive reference peaks. Throws std::invalid_argument
/// when the reference shows fewer than two pulses in the window.
DiscriminationReport gamma_discrimination(const LvParams& params, double gamma_a, double gamma_b,
                                          double window_ms, const PopulationState& init,
                                          const LineshapeModel& model,
                                          const DiscriminationOptions& opts = {});

}  // namespace rydlv
