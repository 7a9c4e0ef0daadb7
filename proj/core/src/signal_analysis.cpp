#include "rydlv/signal_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace rydlv {

void DetectionOptions::validate() const {
  if (!(prominence_fraction > 0.0 && prominence_fraction < 1.0)) {
    throw std::invalid_argument("prominence fraction must lie in (0, 1)");
  }
  if (!(min_separation >= 0.0) || !std::isfinite(min_separation)) {
    throw std::invalid_argument("minimum peak separation must be ≥ 0");
  }
}

namespace {

std::vector<double> moving_average(const std::vector<double>& v, std::size_t window) {
  if (window <= 1) return v;
  const std::size_t half = window / 2;
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::size_t lo = i >= half ? i - half : 0;
    const std::size_t hi = std::min(v.size() - 1, i + (window - 1 - half));
    double acc = 0.0;
    for (std::size_t j = lo; j <= hi; ++j) acc += v[j];
    out[i] = acc / static_cast<double>(hi - lo + 1);
  }
  return out;
}

struct Candidate {
  std::size_t index;
  double prominence;
  std::size_t left_base;
  std::size_t right_base;
};

/// Local maxima; a flat top counts once, at its middle sample.
std::vector<std::size_t> local_maxima(const std::vector<double>& v) {
  std::vector<std::size_t> out;
  std::size_t i = 1;
  const std::size_t last = v.size() - 1;
  while (i < last) {
    if (v[i - 1] < v[i]) {
      std::size_t ahead = i + 1;
      while (ahead < last && v[ahead] == v[i]) ++ahead;
      if (v[ahead] < v[i]) {
        out.push_back((i + ahead - 1) / 2);
        i = ahead;
        continue;
      }
    }
    ++i;
  }
  return out;
}

Candidate prominence_of(const std::vector<double>& v, std::size_t p) {
  const double h = v[p];
  std::size_t left_base = p;
  double left_min = h;
  for (std::size_t k = p; k-- > 0;) {
    if (v[k] > h) break;
    if (v[k] < left_min) {
      left_min = v[k];
      left_base = k;
    }
  }
  std::size_t right_base = p;
  double right_min = h;
  for (std::size_t k = p + 1; k < v.size(); ++k) {
    if (v[k] > h) break;
    if (v[k] < right_min) {
      right_min = v[k];
      right_base = k;
    }
  }
  return {p, h - std::max(left_min, right_min), left_base, right_base};
}

double time_at(const std::vector<double>& t, double fractional_index) {
  const auto i = static_cast<std::size_t>(std::floor(fractional_index));
  if (i + 1 >= t.size()) return t.back();
  return t[i] + (fractional_index - static_cast<double>(i)) * (t[i + 1] - t[i]);
}

/// Vertex of the parabola through the peak sample and its neighbours.
double refined_peak_time(const std::vector<double>& t, const std::vector<double>& v,
                         std::size_t p) {
  if (p == 0 || p + 1 >= v.size()) return t[p];
  const double u0 = t[p - 1] - t[p];
  const double u2 = t[p + 1] - t[p];
  const double d0 = v[p - 1] - v[p];
  const double d2 = v[p + 1] - v[p];
  const double a = (d0 * u2 - d2 * u0) / (u0 * u2 * (u0 - u2));
  if (!(a < 0.0)) return t[p];
  const double b = (d0 - a * u0 * u0) / u0;
  const double offset = std::clamp(-b / (2.0 * a), u0, u2);
  return t[p] + offset;
}

}  // namespace

PulseMetrics detect_pulses(const TransmissionWaveform& w, const DetectionOptions& opts) {
  w.validate();
  opts.validate();
  if (w.size() < 3) throw std::invalid_argument("pulse detection needs at least 3 samples");

  const std::vector<double> v = moving_average(w.values, opts.smoothing_window);
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  const double range = *hi - *lo;

  PulseMetrics m;
  m.delta_t1 = std::numeric_limits<double>::quiet_NaN();
  if (!(range > 0.0)) return m;

  std::vector<Candidate> kept;
  for (std::size_t p : local_maxima(v)) {
    const Candidate c = prominence_of(v, p);
    if (c.prominence >= opts.prominence_fraction * range) kept.push_back(c);
  }

  if (opts.min_separation > 0.0 && kept.size() > 1) {
    std::vector<std::size_t> order(kept.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return v[kept[a].index] > v[kept[b].index];
    });
    std::vector<bool> keep(kept.size(), false);
    for (std::size_t oi : order) {
      bool clear = true;
      for (std::size_t j = 0; j < kept.size(); ++j) {
        if (keep[j] &&
            std::abs(w.times[kept[j].index] - w.times[kept[oi].index]) < opts.min_separation) {
          clear = false;
          break;
        }
      }
      keep[oi] = clear;
    }
    std::vector<Candidate> filtered;
    for (std::size_t j = 0; j < kept.size(); ++j) {
      if (keep[j]) filtered.push_back(kept[j]);
    }
    kept = std::move(filtered);
  }

  for (const Candidate& c : kept) {
    const double ref = v[c.index] - 0.5 * c.prominence;
    std::size_t i = c.index;
    while (i > c.left_base && v[i] > ref) --i;
    double left = static_cast<double>(i);
    if (v[i] < ref) left += (ref - v[i]) / (v[i + 1] - v[i]);
    std::size_t j = c.index;
    while (j < c.right_base && v[j] > ref) ++j;
    double right = static_cast<double>(j);
    if (v[j] < ref) right -= (ref - v[j]) / (v[j - 1] - v[j]);

    m.peak_indices.push_back(c.index);
    m.prominences.push_back(c.prominence);
    m.widths.push_back(time_at(w.times, right) - time_at(w.times, left));
    m.peak_times.push_back(refined_peak_time(w.times, v, c.index));
  }

  m.pulse_count = kept.size();
  if (m.pulse_count > 0) {
    m.delta_t1 = std::accumulate(m.widths.begin(), m.widths.end(), 0.0) /
                 static_cast<double>(m.widths.size());
  }
  if (m.pulse_count >= 2) {
    const double dt2 =
        (m.peak_times.back() - m.peak_times.front()) / static_cast<double>(m.pulse_count - 1);
    m.delta_t2 = dt2;
    m.frequency = 1.0 / dt2;
  }
  return m;
}

ChargePolarity polarity_of(const LineshapeModel& model) {
  const double none = lineshape(model.lock_detuning, 0.0, model);
  const double saturated =
      lineshape(model.lock_detuning, std::numeric_limits<double>::infinity(), model);
  return saturated > none ? ChargePolarity::high_transmission_is_high_charge
                          : ChargePolarity::low_transmission_is_high_charge;
}

namespace {
/// Below this share of explained variance the data is treated as one cluster;
/// a single Gaussian gives 2/π ≈ 0.64, a sinusoid 0.81, a square wave 1.
constexpr double kMinExplainedVariance = 0.7;
constexpr double kMinRelativeSeparation = 1e-9;
}  // namespace

TwoStateResult classify_two_state(const TransmissionWaveform& w, ChargePolarity polarity) {
  w.validate();
  if (w.size() < 2) throw std::invalid_argument("two-state classification needs ≥ 2 samples");

  const std::size_t n = w.size();
  std::vector<double> sorted = w.values;
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + sorted[i];
  const double mean = prefix[n] / static_cast<double>(n);
  double total_ss = 0.0;
  for (double v : sorted) total_ss += (v - mean) * (v - mean);

  TwoStateResult r;
  double best = -1.0;
  for (std::size_t k = 1; k < n; ++k) {
    if (!(sorted[k - 1] < sorted[k])) continue;
    const double m1 = prefix[k] / static_cast<double>(k);
    const double m2 = (prefix[n] - prefix[k]) / static_cast<double>(n - k);
    const double between =
        static_cast<double>(k) * static_cast<double>(n - k) / static_cast<double>(n) * (m2 - m1) * (m2 - m1);
    if (between > best) {
      best = between;
      r.low_centre = m1;
      r.high_centre = m2;
    }
  }
  if (best < 0.0) {
    r.degenerate = true;
    return r;
  }
  r.explained_variance = total_ss > 0.0 ? best / total_ss : 0.0;
  r.threshold = 0.5 * (r.low_centre + r.high_centre);
  const double scale = std::max({std::abs(r.low_centre), std::abs(r.high_centre),
                                 std::numeric_limits<double>::min()});
  if (r.high_centre - r.low_centre <= kMinRelativeSeparation * scale ||
      r.explained_variance < kMinExplainedVariance) {
    r.degenerate = true;
    return r;
  }

  const bool upper_is_high = polarity == ChargePolarity::high_transmission_is_high_charge;
  r.labels.reserve(n);
  double high_time = 0.0;
  double total_time = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const bool upper = w.values[i] > r.threshold;
    const ChargeState s = (upper == upper_is_high) ? ChargeState::high : ChargeState::low;
    r.labels.push_back(s);
    double weight = 1.0;
    if (n > 1) {
      const double left = i > 0 ? w.times[i] - w.times[i - 1] : 0.0;
      const double right = i + 1 < n ? w.times[i + 1] - w.times[i] : 0.0;
      weight = 0.5 * (left + right);
    }
    total_time += weight;
    if (s == ChargeState::high) high_time += weight;
  }
  r.high_charge_fraction = high_time / total_time;
  r.low_charge_fraction = 1.0 - r.high_charge_fraction;
  return r;
}

TransmissionWaveform pulse_train(double period_ms, double fwhm_ms, std::size_t pulses,
                                 std::size_t samples_per_period) {
  if (!(period_ms > 0.0) || !(fwhm_ms > 0.0) || pulses == 0) {
    throw std::invalid_argument("pulse train needs positive period, width and count");
  }
  if (samples_per_period < 4 || samples_per_period % 2 != 0) {
    throw std::invalid_argument("samples per period must be even and ≥ 4");
  }
  const double dt = period_ms / static_cast<double>(samples_per_period);
  const std::size_t n = pulses * samples_per_period + 1;
  const auto spp = static_cast<long long>(samples_per_period);
  const double k = 4.0 * std::numbers::ln2 / (fwhm_ms * fwhm_ms);
  TransmissionWaveform w;
  w.times.resize(n);
  w.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto idx = static_cast<long long>(i);
    // Offset from the nearest pulse centre, in whole samples, so each pulse is
    // exactly symmetric about its centre sample.
    long long j = idx / spp;
    if (j >= static_cast<long long>(pulses)) j = static_cast<long long>(pulses) - 1;
    const long long offset = idx - (j * spp + spp / 2);
    const double d = static_cast<double>(offset) * dt;
    w.times[i] = static_cast<double>(i) * dt;
    w.values[i] = std::exp(-k * d * d);
  }
  return w;
}

}  // namespace rydlv
