#include "rydlv/integrator.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ode_engine.hpp"
#include "sampling.hpp"

namespace rydlv {

void IntegratorOptions::validate() const {
  if (method == IntegratorMethod::rk4_fixed) {
    if (!(step > 0.0) || !std::isfinite(step)) {
      throw std::invalid_argument("integrator step must be > 0");
    }
  } else {
    if (!(rtol > 0.0) || rtol > 1e-2) {
      throw std::invalid_argument("relative tolerance must lie in (0, 1e-2]");
    }
    if (!(atol > 0.0) || !std::isfinite(atol)) {
      throw std::invalid_argument("absolute tolerance must be > 0");
    }
  }
  if (max_steps == 0) throw std::invalid_argument("max_steps must be positive");
  if (!(sample_interval > 0.0) || !std::isfinite(sample_interval)) {
    throw std::invalid_argument("sample interval must be > 0");
  }
}

namespace {

void check_init(const PopulationState& init) {
  if (!std::isfinite(init.x) || !std::isfinite(init.y) || init.x < 0.0 || init.y < 0.0) {
    throw std::invalid_argument("initial populations must be finite and non-negative");
  }
}

struct LvRhs {
  const LvParams& p;
  detail::Vec2 operator()(double, const detail::Vec2& y) const {
    const Rates r = derivative({y[0], y[1]}, p);
    return {r.dx, r.dy};
  }
};

}  // namespace

Trajectory integrate_at(const LvParams& params, const PopulationState& init, double t0,
                        std::span<const double> sample_times, const IntegratorOptions& opts) {
  params.validate();
  opts.validate();
  check_init(init);
  detail::check_sample_times(t0, sample_times);

  detail::SampleCollector collector(sample_times);
  const detail::Vec2 y0{init.x, init.y};
  collector.start(t0, y0);
  if (!sample_times.empty() && sample_times.back() > t0) {
    LvRhs rhs{params};
    detail::drive(rhs, t0, y0, sample_times.back(), opts, {},
                  [&](const detail::StepRecord& rec) { collector.on_step(rec); });
  }
  return collector.take();
}

Trajectory integrate(const LvParams& params, const PopulationState& init, TimeSpan span,
                     const IntegratorOptions& opts) {
  opts.validate();
  const std::vector<double> grid = detail::sample_grid(span, opts.sample_interval);
  return integrate_at(params, init, span.start, grid, opts);
}

double period(const LvParams& params, const PopulationState& init, const PeriodOptions& opts) {
  params.validate();
  if (!(init.x > 0.0) || !(init.y > 0.0)) {
    throw std::invalid_argument("period requires strictly positive populations");
  }
  const PopulationState eq = coexistence_point(params);
  if (init == eq) throw std::invalid_argument("period undefined at the coexistence fixed point");
  if (opts.samples_per_linear_period < 16) {
    throw std::invalid_argument("too few samples per period");
  }

  const double t_lin = linearized_period(params);
  IntegratorOptions io;
  io.rtol = opts.rtol;
  io.atol = 1e-15;
  io.sample_interval = t_lin / static_cast<double>(opts.samples_per_linear_period);

  const double chunk = 2.0 * t_lin;
  const double horizon = opts.max_linear_periods * t_lin;
  std::vector<double> crossings;
  PopulationState state = init;
  for (double t = 0.0; t < horizon; t += chunk) {
    const Trajectory traj = integrate(params, state, {t, t + chunk}, io);
    for (double c : upward_crossings(traj, eq.x)) {
      crossings.push_back(c);
      if (crossings.size() == 2) return crossings[1] - crossings[0];
    }
    state = traj.states.back();
  }
  throw NumericalError("no closed-orbit crossing found within the search horizon", horizon);
}

}  // namespace rydlv
