#pragma once

// Magnetic-field sensing: oscillation frequency is linear in B above a
// plasma threshold, and LV rates are interpolated between calibrated fields.

#include <optional>
#include <vector>

#include "rydlv/lv_core.hpp"
#include "rydlv/observables.hpp"
#include "rydlv/signal_analysis.hpp"

namespace rydlv {

struct FieldAnchor {
  double field = 0.0;  ///< G
  LvParams params;
};

struct FieldCalibration {
  double freq_slope = 1.033;      ///< kHz/G, line through the origin
  double freq_slope_err = 0.006;  ///< kHz/G, one standard deviation
  double threshold = 4.0;         ///< G, no oscillation below
  /// Sorted by field; every entry satisfies β = δ.
  std::vector<FieldAnchor> anchors = {
      {12.1, {0.651, 0.217, 0.276, 0.217}},
      {21.3, {0.868, 0.434, 0.566, 0.434}},
  };

  void validate() const;

  /// [lowest, highest] field accepted by params_at_field: the anchor span
  /// widened by half its length on each side.
  double min_supported_field() const;
  double max_supported_field() const;
};

/// Per-rate piecewise-linear interpolation through the anchors, extrapolated
/// along the end segments. δ is set equal to β. Throws std::out_of_range
/// outside the supported span.
LvParams params_at_field(double field, const FieldCalibration& cal);

/// freq_slope·B in kHz, or nullopt below threshold.
std::optional<double> frequency_at_field(double field, const FieldCalibration& cal);

struct FieldEstimate {
  bool oscillating = false;
  double field = 0.0;        ///< G; when not oscillating, an upper bound (the threshold)
  double uncertainty = 0.0;  ///< G, quadrature sum of the two contributions
  double slope_contribution = 0.0;     ///< G, from freq_slope_err
  double interval_contribution = 0.0;  ///< G, from the peak-interval standard error
  double frequency = 0.0;    ///< kHz
  std::size_t pulse_count = 0;
};

/// Field from the pulse frequency of a measured waveform. A waveform without
/// pulses yields oscillating = false (field below threshold). One or two
/// pulses are not enough for an interval error and throw std::invalid_argument.
FieldEstimate field_from_waveform(const TransmissionWaveform& w, const FieldCalibration& cal,
                                  const DetectionOptions& opts = {});

}  // namespace rydlv
