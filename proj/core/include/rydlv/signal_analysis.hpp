#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "rydlv/observables.hpp"

namespace rydlv {

struct DetectionOptions {
  /// Minimum peak prominence as a fraction of the waveform's value range.
  double prominence_fraction = 0.25;
  /// Minimum spacing between accepted peaks, ms. Lower peaks give way.
  double min_separation = 0.0;
  /// Centred moving-average window in samples; 0 or 1 disables.
  std::size_t smoothing_window = 0;

  void validate() const;
};

struct PulseMetrics {
  std::size_t pulse_count = 0;
  /// Mean full width at half prominence, ms. NaN without pulses.
  double delta_t1 = 0.0;
  /// Mean peak-to-peak interval, ms. Needs ≥ 2 pulses.
  std::optional<double> delta_t2;
  /// 1/delta_t2 in kHz.
  std::optional<double> frequency;

  std::vector<double> peak_times;    ///< ms, refined by a three-point parabola
  std::vector<std::size_t> peak_indices;
  std::vector<double> prominences;
  std::vector<double> widths;        ///< ms

  /// False when no pulse passes the prominence threshold.
  bool oscillating() const noexcept { return pulse_count > 0; }
};

/// Local maxima whose prominence exceeds the relative threshold, with widths
/// measured at half prominence by linear interpolation. Requires ≥ 3 samples.
PulseMetrics detect_pulses(const TransmissionWaveform& w, const DetectionOptions& opts = {});

enum class ChargeState : unsigned char { low, high };

/// Which transmission level corresponds to the high-charge state.
enum class ChargePolarity {
  high_transmission_is_high_charge,
  low_transmission_is_high_charge,
};

/// Polarity implied by a lineshape: compares the lock-point transmission with
/// no charge against the saturated shift.
ChargePolarity polarity_of(const LineshapeModel& model);

struct TwoStateResult {
  std::vector<ChargeState> labels;
  double threshold = 0.0;
  double low_centre = 0.0;   ///< mean of the lower-valued cluster
  double high_centre = 0.0;  ///< mean of the higher-valued cluster
  double low_charge_fraction = 0.0;
  double high_charge_fraction = 0.0;
  /// Share of variance explained by the two-cluster split.
  double explained_variance = 0.0;
  /// Set when the data shows no two-level structure; labels are then empty.
  bool degenerate = false;
};

/// Exact one-dimensional 2-means split; threshold is the midpoint of the two
/// cluster means. Dwell fractions are time-weighted.
TwoStateResult classify_two_state(
    const TransmissionWaveform& w,
    ChargePolarity polarity = ChargePolarity::high_transmission_is_high_charge);

/// Ideal Gaussian pulse train sampled so every peak falls exactly on a sample.
TransmissionWaveform pulse_train(double period_ms, double fwhm_ms, std::size_t pulses,
                                 std::size_t samples_per_period);

}  // namespace rydlv
