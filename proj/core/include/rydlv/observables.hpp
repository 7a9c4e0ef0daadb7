#pragma once

// Probe transmission readout. Charges (the predator population) Stark-shift
// the Gaussian EIT resonance; the transmission is read at a fixed lock
// detuning while the line moves.

#include <cstdint>
#include <vector>

#include "rydlv/lv_core.hpp"

namespace rydlv {

/// Direction in which charges move the resonance, in detuning units.
enum class ShiftDirection : int {
  red = -1,  ///< toward negative detuning, sweeping through a negative lock point
  blue = 1,
};

struct LineshapeModel {
  double fwhm = 12.0;            ///< MHz, unperturbed EIT linewidth
  double max_shift = 9.0;        ///< MHz, saturated charge-induced shift
  double lock_detuning = -8.0;   ///< MHz
  double amplitude = 1.0;
  double baseline = 0.0;
  double y_half = 3.0;           ///< predator level at half the maximum shift
  ShiftDirection direction = ShiftDirection::red;

  void validate() const;

  /// Defaults with y_half set to the coexistence predator level α/β.
  static LineshapeModel for_params(const LvParams& p);

  friend bool operator==(const LineshapeModel&, const LineshapeModel&) = default;
};

struct TransmissionWaveform {
  std::vector<double> times;   ///< ms, strictly increasing
  std::vector<double> values;  ///< transmission, arbitrary units

  std::size_t size() const noexcept { return times.size(); }
  void validate() const;
};

struct NoiseModel {
  enum class Kind { none, additive_gaussian };

  Kind kind = Kind::none;
  double sigma = 0.0;
  std::uint64_t seed = 0;

  void validate() const;

  static NoiseModel gaussian(double sigma, std::uint64_t seed) {
    return {Kind::additive_gaussian, sigma, seed};
  }
};

/// Magnitude of the resonance shift, max_shift·y/(y + y_half), in MHz.
double charge_shift(double y, const LineshapeModel& model);

/// Signed centre of the resonance for predator level y.
double line_centre(double y, const LineshapeModel& model);

/// baseline + amplitude·exp(−4 ln2 (detuning − centre)² / fwhm²).
double lineshape(double detuning, double y, const LineshapeModel& model);

/// Transmission at the lock detuning for each trajectory sample, plus noise.
TransmissionWaveform synthesize_waveform(const Trajectory& traj, const LineshapeModel& model,
                                         const NoiseModel& noise = {});

/// The exact noise sequence synthesize_waveform adds for `n` samples.
std::vector<double> noise_realization(std::size_t n, const NoiseModel& noise);

/// Full width at half maximum of the line at predator level y, located by
/// bisection on the lineshape to ~1e-14 MHz.
double measured_fwhm(double y, const LineshapeModel& model);

}  // namespace rydlv
