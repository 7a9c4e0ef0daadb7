#pragma once

#include <span>
#include <vector>

#include "rydlv/observables.hpp"

namespace rydlv::io {

struct SpectraTable {
  std::vector<double> detunings;  ///< MHz
  std::vector<double> levels;     ///< predator populations
  /// transmission[i][j]: level i at detuning j.
  std::vector<std::vector<double>> transmission;
  /// Peak position per level, refined by a parabola through the logarithm of
  /// the three samples around the maximum (exact for a Gaussian).
  std::vector<double> peak_detunings;
};

/// Lineshape over the detuning grid for each charge level. Throws
/// std::invalid_argument for an empty grid, empty levels or a negative level.
SpectraTable spectra_scan(const LineshapeModel& model, std::span<const double> detunings,
                          std::span<const double> levels);

/// min + k·step for k = 0 … round((max − min)/step).
std::vector<double> detuning_grid(double min, double max, double step);

}  // namespace rydlv::io
