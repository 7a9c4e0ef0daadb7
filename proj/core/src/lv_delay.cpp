#include "rydlv/lv_delay.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ode_engine.hpp"
#include "sampling.hpp"

namespace rydlv {

PreyHistory PreyHistory::constant(double value) {
  PreyHistory h;
  h.constant_ = value;
  return h;
}

PreyHistory PreyHistory::sampled(std::vector<double> times, std::vector<double> values) {
  if (times.size() != values.size() || times.size() < 2) {
    throw std::invalid_argument("sampled history needs ≥ 2 matching time/value pairs");
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) {
      throw std::invalid_argument("history times must be strictly increasing");
    }
  }
  PreyHistory h;
  h.times_ = std::move(times);
  h.values_ = std::move(values);
  return h;
}

double PreyHistory::at(double t) const {
  if (times_.empty()) return constant_;
  // Tolerate round-off at the ends of the covered interval.
  const double slack = 1e-12 * std::max(1.0, std::abs(times_.front()));
  if (t < times_.front() - slack || t > times_.back() + slack) {
    throw NumericalError("history interpolation gap", t);
  }
  if (t <= times_.front()) return values_.front();
  if (t >= times_.back()) return values_.back();
  const auto it = std::upper_bound(times_.begin(), times_.end(), t);
  const auto i = static_cast<std::size_t>(it - times_.begin());
  const double w = (t - times_[i - 1]) / (times_[i] - times_[i - 1]);
  return values_[i - 1] + w * (values_[i] - values_[i - 1]);
}

void PreyHistory::validate(double tau) const {
  if (times_.empty()) {
    if (!std::isfinite(constant_) || constant_ < 0.0) {
      throw std::invalid_argument("history prey must be finite and ≥ 0");
    }
    return;
  }
  if (times_.front() > -tau || times_.back() < 0.0) {
    throw std::invalid_argument("sampled history must cover [-tau, 0]");
  }
  for (double v : values_) {
    if (!std::isfinite(v) || v < 0.0) throw std::invalid_argument("history prey must be ≥ 0");
  }
}

void DelayParams::validate() const {
  base.validate();
  if (!std::isfinite(tau) || tau < 0.0) throw std::invalid_argument("tau must be ≥ 0");
  if (history) history->validate(tau);
}

Rates delayed_derivative(double /*t*/, const PopulationState& s, double delayed_prey,
                         const DelayParams& params) noexcept {
  const LvParams& p = params.base;
  return {p.alpha * s.x - p.beta * s.x * s.y, -p.gamma * s.y + p.delta * delayed_prey * s.y};
}

namespace {

/// Prey samples at accepted step boundaries, with slopes, for Hermite lookup.
class PreyStore {
 public:
  PreyStore(double t0, const PreyHistory& history) : t0_(t0), history_(history) {}

  void append(double t, double x, double dxdt) {
    if (times_.empty() || t > times_.back()) {
      times_.push_back(t);
      xs_.push_back(x);
      slopes_.push_back(dxdt);
    }
  }

  double at(double t) const {
    if (t <= t0_) return history_.at(t - t0_);
    if (times_.empty() || t > times_.back() + 1e-12 * std::max(1.0, std::abs(times_.back()))) {
      throw NumericalError("history interpolation gap", t);
    }
    if (t >= times_.back()) return xs_.back();
    const auto it = std::upper_bound(times_.begin(), times_.end(), t);
    const auto i = static_cast<std::size_t>(it - times_.begin());
    const double h = times_[i] - times_[i - 1];
    const double s = (t - times_[i - 1]) / h;
    const double s2 = s * s;
    const double s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * xs_[i - 1] + (s3 - 2 * s2 + s) * h * slopes_[i - 1] +
           (-2 * s3 + 3 * s2) * xs_[i] + (s3 - s2) * h * slopes_[i];
  }

 private:
  double t0_;
  const PreyHistory& history_;
  std::vector<double> times_;
  std::vector<double> xs_;
  std::vector<double> slopes_;
};

}  // namespace

Trajectory integrate_delayed_at(const DelayParams& params, const PopulationState& init, double t0,
                                std::span<const double> sample_times,
                                const IntegratorOptions& opts) {
  params.validate();
  opts.validate();
  if (!std::isfinite(init.x) || !std::isfinite(init.y) || init.x < 0.0 || init.y < 0.0) {
    throw std::invalid_argument("initial populations must be finite and non-negative");
  }
  if (params.tau == 0.0) return integrate_at(params.base, init, t0, sample_times, opts);
  detail::check_sample_times(t0, sample_times);

  const PreyHistory history = params.history.value_or(PreyHistory::constant(init.x));
  PreyStore store(t0, history);
  const LvParams& p = params.base;
  store.append(t0, init.x, p.alpha * init.x - p.beta * init.x * init.y);

  const double tau = params.tau;
  auto rhs = [&](double t, const detail::Vec2& y) -> detail::Vec2 {
    const double lagged = store.at(t - tau);
    const Rates r = delayed_derivative(t, {y[0], y[1]}, lagged, params);
    return {r.dx, r.dy};
  };

  detail::SampleCollector collector(sample_times);
  const detail::Vec2 y0{init.x, init.y};
  collector.start(t0, y0);
  if (!sample_times.empty() && sample_times.back() > t0) {
    detail::StepLimits limits;
    limits.max_step = tau;
    limits.breakpoint_spacing = tau;
    detail::drive(rhs, t0, y0, sample_times.back(), opts, limits,
                  [&](const detail::StepRecord& rec) {
                    store.append(rec.t1, rec.y1[0], rec.f1[0]);
                    collector.on_step(rec);
                  });
  }
  return collector.take();
}

Trajectory integrate_delayed(const DelayParams& params, const PopulationState& init, TimeSpan span,
                             const IntegratorOptions& opts) {
  opts.validate();
  const std::vector<double> grid = detail::sample_grid(span, opts.sample_interval);
  return integrate_delayed_at(params, init, span.start, grid, opts);
}

}  // namespace rydlv
