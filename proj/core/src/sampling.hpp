#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "ode_engine.hpp"
#include "rydlv/lv_core.hpp"

namespace rydlv::detail {

/// start + k·dt for every k with the point below `end`, followed by `end`.
inline std::vector<double> sample_grid(TimeSpan span, double dt) {
  if (!(span.end > span.start)) throw std::invalid_argument("time span must be increasing");
  if (!(dt > 0.0)) throw std::invalid_argument("sample interval must be positive");
  std::vector<double> grid;
  const double n = span.length() / dt;
  grid.reserve(static_cast<std::size_t>(n) + 2);
  for (std::size_t k = 0;; ++k) {
    const double t = span.start + static_cast<double>(k) * dt;
    if (t >= span.end - 1e-9 * dt) break;
    grid.push_back(t);
  }
  grid.push_back(span.end);
  return grid;
}

inline void check_sample_times(double t0, std::span<const double> times) {
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= t0)) throw std::invalid_argument("sample time precedes integration start");
    if (i > 0 && !(times[i] > times[i - 1])) {
      throw std::invalid_argument("sample times must be strictly increasing");
    }
  }
}

/// Collects dense-output samples at requested times as steps are accepted.
class SampleCollector {
 public:
  explicit SampleCollector(std::span<const double> times) : times_(times) {
    out_.times.reserve(times.size());
    out_.states.reserve(times.size());
  }

  void start(double t0, const Vec2& y0) {
    while (next_ < times_.size() && times_[next_] <= t0) push(times_[next_], y0);
  }

  void on_step(const StepRecord& rec) {
    while (next_ < times_.size() && times_[next_] <= rec.t1) {
      const double t = times_[next_];
      push(t, t == rec.t1 ? rec.y1 : rec.eval(t));
    }
  }

  Trajectory take() { return std::move(out_); }

 private:
  void push(double t, Vec2 y) {
    for (double& v : y) {
      if (v < 0.0 && v >= -kNegativeTolerance) v = 0.0;
    }
    out_.times.push_back(t);
    out_.states.push_back({y[0], y[1]});
    ++next_;
  }

  std::span<const double> times_;
  std::size_t next_ = 0;
  Trajectory out_;
};

}  // namespace rydlv::detail
