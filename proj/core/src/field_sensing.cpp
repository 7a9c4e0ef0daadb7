#include "rydlv/field_sensing.hpp"

#include <cmath>
#include <stdexcept>

namespace rydlv {

void FieldCalibration::validate() const {
  if (!std::isfinite(freq_slope) || !(freq_slope > 0.0)) {
    throw std::invalid_argument("frequency slope must be > 0");
  }
  if (!std::isfinite(freq_slope_err) || freq_slope_err < 0.0) {
    throw std::invalid_argument("slope error must be ≥ 0");
  }
  if (!std::isfinite(threshold) || threshold < 0.0) {
    throw std::invalid_argument("field threshold must be ≥ 0");
  }
  if (anchors.size() < 2) throw std::invalid_argument("calibration needs at least two anchors");
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    anchors[i].params.validate();
    if (anchors[i].params.beta != anchors[i].params.delta) {
      throw std::invalid_argument("calibration anchors must satisfy beta == delta");
    }
    if (i > 0 && !(anchors[i].field > anchors[i - 1].field)) {
      throw std::invalid_argument("calibration anchors must be sorted by field");
    }
  }
}

double FieldCalibration::min_supported_field() const {
  return anchors.front().field - 0.5 * (anchors.back().field - anchors.front().field);
}

double FieldCalibration::max_supported_field() const {
  return anchors.back().field + 0.5 * (anchors.back().field - anchors.front().field);
}

LvParams params_at_field(double field, const FieldCalibration& cal) {
  cal.validate();
  if (!std::isfinite(field) || field < cal.min_supported_field() ||
      field > cal.max_supported_field()) {
    throw std::out_of_range("field outside the calibrated span");
  }
  const auto& a = cal.anchors;
  for (const auto& anchor : a) {
    if (anchor.field == field) return anchor.params;
  }
  std::size_t seg = 0;
  while (seg + 2 < a.size() && field > a[seg + 1].field) ++seg;
  const FieldAnchor& lo = a[seg];
  const FieldAnchor& hi = a[seg + 1];
  const double w = (field - lo.field) / (hi.field - lo.field);
  const auto lerp = [w](double u, double v) { return u + w * (v - u); };
  LvParams p;
  p.alpha = lerp(lo.params.alpha, hi.params.alpha);
  p.beta = lerp(lo.params.beta, hi.params.beta);
  p.gamma = lerp(lo.params.gamma, hi.params.gamma);
  p.delta = p.beta;
  p.validate();
  return p;
}

std::optional<double> frequency_at_field(double field, const FieldCalibration& cal) {
  cal.validate();
  if (!std::isfinite(field) || field < 0.0) throw std::invalid_argument("field must be ≥ 0");
  if (field < cal.threshold) return std::nullopt;
  return cal.freq_slope * field;
}

FieldEstimate field_from_waveform(const TransmissionWaveform& w, const FieldCalibration& cal,
                                  const DetectionOptions& opts) {
  cal.validate();
  const PulseMetrics m = detect_pulses(w, opts);
  FieldEstimate est;
  est.pulse_count = m.pulse_count;
  if (!m.oscillating()) {
    est.field = cal.threshold;
    return est;
  }
  if (m.pulse_count < 3) {
    throw std::invalid_argument("field estimate needs at least three pulses");
  }

  const double f = *m.frequency;
  const double period = *m.delta_t2;
  const std::size_t n_int = m.pulse_count - 1;
  double var = 0.0;
  for (std::size_t k = 1; k < m.pulse_count; ++k) {
    const double d = (m.peak_times[k] - m.peak_times[k - 1]) - period;
    var += d * d;
  }
  var /= static_cast<double>(n_int - 1);
  const double period_se = std::sqrt(var / static_cast<double>(n_int));
  const double freq_se = f * f * period_se;

  est.oscillating = true;
  est.frequency = f;
  est.field = f / cal.freq_slope;
  est.slope_contribution = f * cal.freq_slope_err / (cal.freq_slope * cal.freq_slope);
  est.interval_contribution = freq_se / cal.freq_slope;
  est.uncertainty = std::hypot(est.slope_contribution, est.interval_contribution);
  return est;
}

}  // namespace rydlv
