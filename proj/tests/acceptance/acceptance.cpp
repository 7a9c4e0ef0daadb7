// Acceptance suite: one PASS/FAIL line per criterion.
//
//   rydlv_acceptance [path/to/rydlv]
//
// The CLI path is needed for the determinism criterion. Exit status is 0 only
// when every criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "rydlv/config.hpp"
#include "rydlv/csv.hpp"
#include "rydlv/estimation.hpp"
#include "rydlv/field_sensing.hpp"
#include "rydlv/integrator.hpp"
#include "rydlv/lv_delay.hpp"
#include "rydlv/observables.hpp"
#include "rydlv/signal_analysis.hpp"
#include "rydlv/spectra.hpp"

using namespace rydlv;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

const LvParams kRef = LvParams::reference();
const PopulationState kInit{8.0, 6.0};

Outcome conservation() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> rate(0.1, 2.0);
  std::uniform_real_distribution<double> pop(0.2, 3.0);
  IntegratorOptions o;
  o.rtol = 1e-9;
  o.atol = 1e-20;  // some draws dip to ~1e-12, where the default atol would dominate
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const LvParams p{rate(rng), rate(rng), rate(rng), rate(rng)};
    const PopulationState init{pop(rng), pop(rng)};
    const Trajectory t = integrate(p, init, {0.0, 20.0}, o);
    const double v0 = conserved_quantity(init, p);
    for (const auto& s : t.states) {
      worst = std::max(worst, std::abs(conserved_quantity(s, p) - v0) / std::abs(v0));
    }
  }
  const double secs = seconds_since(t0);
  const double limit = 100.0 * o.rtol;
  return {worst <= limit && secs < 10.0,
          "max relative drift " + fmt("%.3g", worst) + " (limit " + fmt("%.0e", limit) + "), " +
              fmt("%.2f", secs) + " s (limit 10 s)"};
}

Outcome linear_period() {
  const PopulationState c = coexistence_point(kRef);
  const double measured = period(kRef, {c.x * (1.0 + 1e-3), c.y * (1.0 + 1e-3)});
  const double lin = 2.0 * std::numbers::pi / std::sqrt(kRef.alpha * kRef.gamma);
  const double rel = std::abs(measured - lin) / lin;
  return {rel <= 1e-3, "period " + fmt("%.6f", measured) + " ms vs 2pi/sqrt(alpha*gamma) " +
                           fmt("%.6f", lin) + " ms, relative error " + fmt("%.2e", rel) +
                           " (limit 1e-3)"};
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> rate(0.1, 2.0);
  std::uniform_real_distribution<double> pop(0.2, 3.0);
  IntegratorOptions adaptive;
  adaptive.rtol = 1e-11;
  adaptive.atol = 1e-15;
  IntegratorOptions fixed;
  fixed.method = IntegratorMethod::rk4_fixed;
  fixed.step = 1e-5;
  const std::vector<double> at{5.0};
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const LvParams p{rate(rng), rate(rng), rate(rng), rate(rng)};
    const PopulationState init{pop(rng), pop(rng)};
    const PopulationState a = integrate_at(p, init, 0.0, at, adaptive).states.back();
    const PopulationState b = integrate_at(p, init, 0.0, at, fixed).states.back();
    worst = std::max({worst, std::abs(a.x - b.x) / std::abs(b.x), std::abs(a.y - b.y) / std::abs(b.y)});
  }
  return {worst <= 1e-8, "max relative difference at 5 ms " + fmt("%.3g", worst) + " (limit 1e-8)"};
}

bool non_decreasing(const std::vector<double>& v) {
  return std::is_sorted(v.begin(), v.end());
}

Outcome gamma_sensitivity() {
  try {
    const DiscriminationReport r =
        gamma_discrimination(kRef, 0.31755, 0.31780, 5.0, kInit, LineshapeModel{});
    const double ratio = r.last_pulse_rms / r.first_pulse_rms;
    const bool drift_ok = non_decreasing(r.peak_time_drift);
    return {ratio >= 3.0 && drift_ok, "pulses " + std::to_string(r.pulse_count()) + ", last/first RMS " +
                                          fmt("%.3f", ratio) + " (limit >= 3), drift " +
                                          (drift_ok ? "non-decreasing" : "DECREASES")};
  } catch (const std::invalid_argument& e) {
    return {false, std::string("5 ms window: ") + e.what()};
  }
}

void gamma_sensitivity_long_window() {
  const DiscriminationReport r =
      gamma_discrimination(kRef, 0.31755, 0.31780, 60.0, kInit, LineshapeModel{});
  std::printf("info  criterion 4 over a 60 ms window: pulses %zu, last/first RMS %.3f, drift %s\n",
              r.pulse_count(), r.last_pulse_rms / r.first_pulse_rms,
              non_decreasing(r.peak_time_drift) ? "non-decreasing" : "decreasing");
}

Outcome fit_round_trip() {
  const auto t0 = Clock::now();
  std::vector<double> times;
  for (int k = 0; k <= 5000; ++k) times.push_back(k * 1e-3);
  const Trajectory tr = integrate_at(kRef, kInit, 0.0, times, FitProblem::default_integrator());
  const TransmissionWaveform clean = synthesize_waveform(tr, LineshapeModel{});
  const auto [lo, hi] = std::minmax_element(clean.values.begin(), clean.values.end());
  const double sigma = 0.02 * (*hi - *lo);

  MultiStart ms;
  ms.guess.params = {kRef.alpha * 1.05, kRef.beta / 1.05, kRef.gamma * 1.05, kRef.delta / 1.05};
  ms.guess.init = {kInit.x / 1.05, kInit.y * 1.05};
  const auto fit_gamma = [&](const TransmissionWaveform& w) {
    FitProblem prob;
    prob.data = w;
    prob.beta_equals_delta = true;
    return fit(prob, ms).best.params.gamma;
  };

  const double clean_err = std::abs(fit_gamma(clean) - kRef.gamma);
  std::vector<double> errs;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const TransmissionWaveform w = synthesize_waveform(tr, LineshapeModel{}, NoiseModel::gaussian(sigma, seed));
    errs.push_back(std::abs(fit_gamma(w) - kRef.gamma));
  }
  std::sort(errs.begin(), errs.end());
  const double median = 0.5 * (errs[9] + errs[10]);
  const double secs = seconds_since(t0);
  return {clean_err <= 3e-4 && median <= 1e-3 && secs < 120.0,
          "noise-free |dgamma| " + fmt("%.2e", clean_err) + " (limit 3e-4), 2% noise median |dgamma| " +
              fmt("%.2e", median) + " over 20 seeds (limit 1e-3), " + fmt("%.1f", secs) +
              " s (limit 120 s)"};
}

Outcome delay_reduction() {
  IntegratorOptions o;
  o.rtol = 1e-10;
  o.atol = 1e-14;
  const PopulationState init{2.0, 1.0};
  const Trajectory ode = integrate(kRef, init, {0.0, 5.0}, o);
  DelayParams d;
  d.base = kRef;
  d.tau = 0.0;
  const Trajectory dde0 = integrate_delayed(d, init, {0.0, 5.0}, o);
  double worst = 0.0;
  for (std::size_t i = 0; i < ode.size(); ++i) {
    worst = std::max({worst, std::abs(dde0.states[i].x - ode.states[i].x) / ode.states[i].x,
                      std::abs(dde0.states[i].y - ode.states[i].y) / ode.states[i].y});
  }
  std::vector<double> errs;
  for (double tau : {0.024, 0.012, 0.006, 0.003}) {
    d.tau = tau;
    const PopulationState s = integrate_delayed(d, init, {0.0, 5.0}, o).states.back();
    errs.push_back(std::hypot(s.x - ode.states.back().x, s.y - ode.states.back().y));
  }
  bool ratios_ok = true;
  std::string ratios;
  for (std::size_t i = 1; i < errs.size(); ++i) {
    const double r = errs[i - 1] / errs[i];
    ratios_ok = ratios_ok && r >= 1.5 && r <= 2.5;
    ratios += (i > 1 ? ", " : "") + fmt("%.4f", r);
  }
  return {worst <= 10 * o.rtol && ratios_ok,
          "tau=0 max relative difference " + fmt("%.2e", worst) + " (limit 1e-9), halving ratios " +
              ratios + " (limits [1.5, 2.5])"};
}

Outcome lineshape_anchors() {
  const LineshapeModel m;
  const double width = measured_fwhm(0.0, m);
  const auto grid = io::detuning_grid(-40.0, 40.0, 0.01);
  const std::vector<double> levels{0.0, 1e12};
  const io::SpectraTable t = io::spectra_scan(m, grid, levels);
  const double sep = std::abs(t.peak_detunings[1] - t.peak_detunings[0]);
  const double we = std::abs(width - 12.0);
  const double se = std::abs(sep - 9.0);
  return {we <= 1e-12 && se <= 1e-9, "FWHM error " + fmt("%.2e", we) + " MHz (limit 1e-12), separation " +
                                         fmt("%.12f", sep) + " MHz, error " + fmt("%.2e", se) +
                                         " (limit 1e-9)"};
}

Outcome sensing_roundtrip() {
  const FieldCalibration cal;
  double worst = 0.0;
  for (double b = 4.25; b <= 60.0; b += 0.75) {
    const double f = *frequency_at_field(b, cal);
    const FieldEstimate e = field_from_waveform(pulse_train(1.0 / f, 0.2 / f, 20, 200), cal);
    worst = std::max(worst, e.oscillating ? std::abs(e.field - b) / b : 1.0);
  }
  const bool low_ok = !frequency_at_field(2.0, cal).has_value();
  const bool anchors_ok = params_at_field(12.1, cal) == LvParams{0.651, 0.217, 0.276, 0.217} &&
                          params_at_field(21.3, cal) == LvParams{0.868, 0.434, 0.566, 0.434};
  return {worst <= 1e-6 && low_ok && anchors_ok,
          "max relative field error " + fmt("%.2e", worst) + " (limit 1e-6), B=2 G " +
              (low_ok ? "no oscillation" : "OSCILLATES") + ", anchors " +
              (anchors_ok ? "exact" : "NOT exact")};
}

Outcome determinism(const std::string& cli) {
  if (cli.empty()) return {false, "no CLI path given"};
  const fs::path root = fs::temp_directory_path() / "rydlv_acceptance_determinism";
  fs::remove_all(root);
  fs::create_directories(root);
  const auto sh = [&](const std::string& args, const fs::path& dir) {
    fs::create_directories(dir);
    const std::string cmd = "\"" + cli + "\" " + args + " --output_dir \"" + dir.string() + "\" > \"" +
                            (dir / "stdout.txt").string() + "\" 2>&1";
    return std::system(cmd.c_str());
  };
  if (sh("simulate --noise_sigma 0.02 --seed 7", root / "input") != 0) return {false, "setup run failed"};
  const std::string input = (root / "input" / "waveform.csv").string();

  const std::vector<std::pair<std::string, std::string>> runs = {
      {"simulate", "simulate --noise_sigma 0.02 --seed 11"},
      {"simulate-delayed", "simulate-delayed --noise_sigma 0.01 --seed 3"},
      {"spectra", "spectra"},
      {"fit", "fit --input \"" + input + "\" --gamma 0.33 --starts 3 --seed 5"},
      {"discriminate", "discriminate --t_end 60 --sample_dt 0.001"},
      {"sense", "sense --field 11.6"},
  };
  std::string detail;
  bool ok = true;
  for (const auto& [mode, args] : runs) {
    const fs::path a = root / (mode + "_a");
    const fs::path b = root / (mode + "_b");
    const int ca = sh(args, a);
    const int cb = sh(args, b);
    bool same = ca == 0 && cb == 0;
    std::size_t files = 0;
    for (const auto& entry : fs::directory_iterator(a)) {
      const fs::path other = b / entry.path().filename();
      same = same && fs::exists(other) &&
             io::read_file(entry.path().string()) == io::read_file(other.string());
      ++files;
    }
    same = same && files == static_cast<std::size_t>(std::distance(fs::directory_iterator(b), {}));
    ok = ok && same;
    detail += (detail.empty() ? "" : ", ") + mode + (same ? " identical" : " DIFFERS") + " (" +
              std::to_string(files) + " files)";
  }
  return {ok, detail};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> check;
  };
  const std::vector<Criterion> criteria = {
      {1, "conservation", conservation},
      {2, "linearized period", linear_period},
      {3, "adaptive vs fixed-step oracle", oracle_equivalence},
      {4, "gamma sensitivity over 5 ms", gamma_sensitivity},
      {5, "fit round trip", fit_round_trip},
      {6, "delay reduction", delay_reduction},
      {7, "lineshape anchors", lineshape_anchors},
      {8, "sensing round trip", sensing_roundtrip},
      {9, "CLI determinism", [&] { return determinism(cli); }},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s  criterion %d %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
    std::fflush(stdout);
    if (c.id == 4) {
      try {
        gamma_sensitivity_long_window();
      } catch (const std::exception& e) {
        std::printf("info  criterion 4 over a 60 ms window: %s\n", e.what());
      }
    }
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
