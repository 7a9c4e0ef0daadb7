#include "rydlv/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rydlv::io {

namespace {

double refine_peak(std::span<const double> det, const std::vector<double>& t, double baseline) {
  const auto it = std::max_element(t.begin(), t.end());
  const std::size_t i = static_cast<std::size_t>(it - t.begin());
  if (i == 0 || i + 1 == t.size()) return det[i];
  double a = t[i - 1] - baseline;
  double b = t[i] - baseline;
  double c = t[i + 1] - baseline;
  if (a > 0.0 && b > 0.0 && c > 0.0) {
    a = std::log(a);
    b = std::log(b);
    c = std::log(c);
  }
  const double denom = a - 2.0 * b + c;
  if (!(denom < 0.0)) return det[i];
  // Non-uniform spacing is allowed; use the general three-point vertex.
  const double x0 = det[i - 1], x1 = det[i], x2 = det[i + 1];
  const double d0 = (b - a) / (x1 - x0);
  const double d1 = (c - b) / (x2 - x1);
  const double curv = (d1 - d0) / (x2 - x0);
  if (!(curv < 0.0)) return det[i];
  return 0.5 * (x0 + x1) - d0 / (2.0 * curv);
}

}  // namespace

std::vector<double> detuning_grid(double min, double max, double step) {
  if (!std::isfinite(min) || !std::isfinite(max) || !(max > min)) {
    throw std::invalid_argument("detuning grid needs max > min");
  }
  if (!std::isfinite(step) || !(step > 0.0)) throw std::invalid_argument("detuning step must be > 0");
  const double n = std::round((max - min) / step);
  if (n > 1e8) throw std::invalid_argument("detuning grid too large");
  std::vector<double> g;
  g.reserve(static_cast<std::size_t>(n) + 1);
  for (std::size_t k = 0; k <= static_cast<std::size_t>(n); ++k) {
    g.push_back(min + static_cast<double>(k) * step);
  }
  return g;
}

SpectraTable spectra_scan(const LineshapeModel& model, std::span<const double> detunings,
                          std::span<const double> levels) {
  model.validate();
  if (detunings.empty()) throw std::invalid_argument("detuning grid is empty");
  if (levels.empty()) throw std::invalid_argument("no charge levels given");
  for (std::size_t j = 1; j < detunings.size(); ++j) {
    if (!(detunings[j] > detunings[j - 1])) {
      throw std::invalid_argument("detuning grid must be strictly increasing");
    }
  }
  SpectraTable out;
  out.detunings.assign(detunings.begin(), detunings.end());
  out.levels.assign(levels.begin(), levels.end());
  for (double y : levels) {
    if (!(y >= 0.0)) throw std::invalid_argument("charge levels must be >= 0");
    std::vector<double> t;
    t.reserve(detunings.size());
    for (double d : detunings) t.push_back(lineshape(d, y, model));
    out.peak_detunings.push_back(refine_peak(detunings, t, model.baseline));
    out.transmission.push_back(std::move(t));
  }
  return out;
}

}  // namespace rydlv::io
