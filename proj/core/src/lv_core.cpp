#include "rydlv/lv_core.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rydlv {

void LvParams::validate() const {
  const auto check = [](double v, const char* name) {
    if (!std::isfinite(v) || !(v > 0.0)) {
      throw std::invalid_argument(std::string("LV rate '") + name + "' must be finite and > 0");
    }
  };
  check(alpha, "alpha");
  check(beta, "beta");
  check(gamma, "gamma");
  check(delta, "delta");
}

std::vector<double> Trajectory::prey() const {
  std::vector<double> out;
  out.reserve(states.size());
  for (const auto& s : states) out.push_back(s.x);
  return out;
}

std::vector<double> Trajectory::predator() const {
  std::vector<double> out;
  out.reserve(states.size());
  for (const auto& s : states) out.push_back(s.y);
  return out;
}

void Trajectory::validate() const {
  if (times.size() != states.size()) {
    throw std::invalid_argument("trajectory times and states differ in length");
  }
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]) || !std::isfinite(states[i].x) || !std::isfinite(states[i].y)) {
      throw std::invalid_argument("trajectory contains non-finite values at index " +
                                  std::to_string(i));
    }
    if (i > 0 && !(times[i] > times[i - 1])) {
      throw std::invalid_argument("trajectory times not strictly increasing at index " +
                                  std::to_string(i));
    }
  }
}

Rates derivative(const PopulationState& s, const LvParams& p) noexcept {
  const double xy = s.x * s.y;
  return {p.alpha * s.x - p.beta * xy, -p.gamma * s.y + p.delta * xy};
}

PopulationState coexistence_point(const LvParams& p) noexcept {
  return {p.gamma / p.delta, p.alpha / p.beta};
}

std::vector<PopulationState> fixed_points(const LvParams& p) {
  p.validate();
  return {{0.0, 0.0}, coexistence_point(p)};
}

double conserved_quantity(const PopulationState& s, const LvParams& p) {
  if (!(s.x > 0.0) || !(s.y > 0.0)) {
    throw std::domain_error("conserved quantity requires x > 0 and y > 0");
  }
  return p.delta * s.x - p.gamma * std::log(s.x) + p.beta * s.y - p.alpha * std::log(s.y);
}

double linearized_period(const LvParams& p) {
  p.validate();
  return 2.0 * std::numbers::pi / std::sqrt(p.alpha * p.gamma);
}

std::vector<double> upward_crossings(const Trajectory& traj, double level) {
  std::vector<double> out;
  for (std::size_t i = 1; i < traj.size(); ++i) {
    const double a = traj.states[i - 1].x - level;
    const double b = traj.states[i].x - level;
    if (a < 0.0 && b >= 0.0) {
      const double t0 = traj.times[i - 1];
      const double t1 = traj.times[i];
      out.push_back(t0 + (t1 - t0) * (-a) / (b - a));
    }
  }
  return out;
}

}  // namespace rydlv
