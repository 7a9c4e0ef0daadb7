#include "rydlv/observables.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace rydlv {

namespace {
constexpr double kFourLn2 = 4.0 * std::numbers::ln2;
}

void LineshapeModel::validate() const {
  const auto finite = [](double v) { return std::isfinite(v); };
  if (!finite(fwhm) || !(fwhm > 0.0)) throw std::invalid_argument("fwhm must be > 0");
  if (!finite(max_shift) || max_shift < 0.0) throw std::invalid_argument("max_shift must be ≥ 0");
  if (!finite(lock_detuning)) throw std::invalid_argument("lock detuning must be finite");
  if (!finite(amplitude) || !(amplitude > 0.0)) throw std::invalid_argument("amplitude must be > 0");
  if (!finite(baseline)) throw std::invalid_argument("baseline must be finite");
  if (!finite(y_half) || !(y_half > 0.0)) throw std::invalid_argument("y_half must be > 0");
  if (direction != ShiftDirection::red && direction != ShiftDirection::blue) {
    throw std::invalid_argument("unknown shift direction");
  }
}

LineshapeModel LineshapeModel::for_params(const LvParams& p) {
  p.validate();
  LineshapeModel m;
  m.y_half = p.alpha / p.beta;
  return m;
}

void TransmissionWaveform::validate() const {
  if (times.size() != values.size()) {
    throw std::invalid_argument("waveform times and values differ in length");
  }
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i]) || !std::isfinite(values[i])) {
      throw std::invalid_argument("waveform contains non-finite values at index " +
                                  std::to_string(i));
    }
    if (i > 0 && !(times[i] > times[i - 1])) {
      throw std::invalid_argument("waveform times not strictly increasing at index " +
                                  std::to_string(i));
    }
  }
}

void NoiseModel::validate() const {
  if (!std::isfinite(sigma) || sigma < 0.0) throw std::invalid_argument("noise sigma must be ≥ 0");
}

double charge_shift(double y, const LineshapeModel& model) {
  if (!(y >= 0.0)) throw std::invalid_argument("predator population must be >= 0");
  if (std::isinf(y) && y > 0.0) return model.max_shift;
  return model.max_shift * y / (y + model.y_half);
}

double line_centre(double y, const LineshapeModel& model) {
  return static_cast<int>(model.direction) * charge_shift(y, model) + 0.0;
}

double lineshape(double detuning, double y, const LineshapeModel& model) {
  const double d = detuning - line_centre(y, model);
  return model.baseline + model.amplitude * std::exp(-kFourLn2 * d * d / (model.fwhm * model.fwhm));
}

std::vector<double> noise_realization(std::size_t n, const NoiseModel& noise) {
  noise.validate();
  std::vector<double> out(n, 0.0);
  if (noise.kind == NoiseModel::Kind::none || noise.sigma == 0.0) return out;
  std::mt19937_64 rng(noise.seed);
  std::normal_distribution<double> dist(0.0, noise.sigma);
  for (double& v : out) v = dist(rng);
  return out;
}

TransmissionWaveform synthesize_waveform(const Trajectory& traj, const LineshapeModel& model,
                                         const NoiseModel& noise) {
  traj.validate();
  model.validate();
  TransmissionWaveform w;
  w.times = traj.times;
  w.values.reserve(traj.size());
  for (const auto& s : traj.states) w.values.push_back(lineshape(model.lock_detuning, s.y, model));
  if (noise.kind != NoiseModel::Kind::none) {
    const std::vector<double> n = noise_realization(w.values.size(), noise);
    for (std::size_t i = 0; i < n.size(); ++i) w.values[i] += n[i];
  }
  return w;
}

double measured_fwhm(double y, const LineshapeModel& model) {
  model.validate();
  const double centre = line_centre(y, model);
  const double half = model.baseline + 0.5 * model.amplitude;
  // Bracket each half-maximum crossing, then bisect.
  const auto crossing = [&](double sign) {
    double inner = centre;
    double outer = centre + sign * model.fwhm;
    while (lineshape(outer, y, model) > half) outer += sign * model.fwhm;
    for (int i = 0; i < 200 && std::abs(outer - inner) > 1e-15 * std::max(1.0, std::abs(centre));
         ++i) {
      const double mid = 0.5 * (inner + outer);
      if (lineshape(mid, y, model) > half) {
        inner = mid;
      } else {
        outer = mid;
      }
    }
    return 0.5 * (inner + outer);
  };
  return crossing(1.0) - crossing(-1.0);
}

}  // namespace rydlv
