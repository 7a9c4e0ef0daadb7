#include <cmath>
#include <filesystem>
#include <limits>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "rydlv/config.hpp"
#include "rydlv/csv.hpp"
#include "rydlv/errors.hpp"
#include "rydlv/estimation.hpp"
#include "rydlv/integrator.hpp"
#include "rydlv/run.hpp"
#include "rydlv/signal_analysis.hpp"
#include "rydlv/spectra.hpp"

using namespace rydlv;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("rydlv_cli_io_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

struct RunOutput {
  int code;
  std::string out;
  std::string err;
};

RunOutput run_mode(io::Mode mode, io::KeyValues kv) {
  std::ostringstream out;
  std::ostringstream err;
  const io::RunConfig cfg(mode, {}, kv);
  const int code = io::run(cfg, out, err);
  return {code, out.str(), err.str()};
}

std::map<std::string, std::string> parse_summary(const std::string& text) {
  std::map<std::string, std::string> m;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    m[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return m;
}

}  // namespace

TEST(Csv, TrajectoryRoundTripIsExact) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  Trajectory t;
  double time = 0.0;
  for (int i = 0; i < 500; ++i) {
    time += std::abs(u(rng)) * 1e-7 + std::numeric_limits<double>::denorm_min();
    t.times.push_back(time);
    t.states.push_back({u(rng) * 1e-300, std::exp(u(rng) / 10.0)});
  }
  std::stringstream ss;
  io::write_trajectory(ss, t, {"provenance"});
  const Trajectory back = io::read_trajectory(ss);
  EXPECT_EQ(back.times, t.times);
  EXPECT_EQ(back.states, t.states);
}

TEST(Csv, WaveformRoundTripIsExact) {
  const Trajectory t = integrate(LvParams::reference(), {8.0, 6.0}, {0.0, 5.0});
  const TransmissionWaveform w = synthesize_waveform(t, LineshapeModel{}, NoiseModel::gaussian(0.02, 3));
  std::stringstream ss;
  io::write_waveform(ss, w);
  const TransmissionWaveform back = io::read_waveform(ss);
  EXPECT_EQ(back.times, w.times);
  EXPECT_EQ(back.values, w.values);
}

TEST(Csv, FormatIsShortestRoundTrip) {
  EXPECT_EQ(io::format_double(0.1), "0.1");
  EXPECT_EQ(io::format_double(-8.0), "-8");
  EXPECT_EQ(io::format_double(1e-20), "1e-20");
}

TEST(Csv, NonMonotoneTimeReportsLineAndColumn) {
  std::istringstream in("# c\nt_ms,x,y\n0,1,1\n0.5,1,1\n0.4,1,1\n");
  try {
    io::read_trajectory(in, "data.csv");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("data.csv:5:1:"), std::string::npos) << e.what();
  }
}

TEST(Csv, MalformedInputsAreDiagnosed) {
  const auto diag = [](const std::string& text) {
    std::istringstream in(text);
    try {
      io::read_waveform(in, "w");
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_EQ(diag("t_ms,transmission\n0,1\n1,abc\n"), "w:3:3: invalid number 'abc'");
  EXPECT_EQ(diag("t_ms,transmission\n0,1\n1\n"), "w:3:2: expected 2 columns, found 1");
  EXPECT_EQ(diag("t_ms,transmission\n0,1,2\n"), "w:2:4: too many columns");
  EXPECT_EQ(diag("time,value\n0,1\n"), "w:1:1: expected header 't_ms,transmission', got 'time,value'");
  EXPECT_EQ(diag(""), "w:1:1: missing header line");
  EXPECT_EQ(diag("t_ms,transmission\r\n"), "w:1:18: carriage return found; lines must end with LF only");
  EXPECT_EQ(diag("t_ms,transmission\n0,1e999\n"), "w:2:3: invalid number '1e999'");
}

TEST(Config, ParsesCommentsAndWhitespace) {
  const auto kv = io::parse_config_text("# run\n\nalpha = 0.5\n  gamma=0.3  \n");
  EXPECT_EQ(kv.at("alpha"), "0.5");
  EXPECT_EQ(kv.at("gamma"), "0.3");
  EXPECT_EQ(kv.size(), 2u);
}

TEST(Config, RejectsUnknownDuplicateAndMalformed) {
  EXPECT_THROW(io::parse_config_text("alpah = 1\n"), ConfigError);
  EXPECT_THROW(io::parse_config_text("alpha = 1\nalpha = 2\n"), ConfigError);
  EXPECT_THROW(io::parse_config_text("alpha 1\n"), ConfigError);
  EXPECT_THROW(io::RunConfig(io::Mode::simulate, {}, {{"nope", "1"}}), ConfigError);
  const io::RunConfig bad(io::Mode::simulate, {}, {{"alpha", "fast"}});
  EXPECT_THROW(bad.params(), ConfigError);
  const io::RunConfig neg(io::Mode::simulate, {}, {{"alpha", "-1"}});
  EXPECT_THROW(neg.params(), ConfigError);
}

TEST(Config, FlagsOverrideFile) {
  const io::RunConfig cfg(io::Mode::simulate, {{"alpha", "0.5"}, {"beta", "0.6"}}, {{"alpha", "0.9"}});
  EXPECT_EQ(cfg.number("alpha"), 0.9);
  EXPECT_EQ(cfg.number("beta"), 0.6);
  EXPECT_EQ(cfg.number("gamma"), 0.31755);
}

TEST(Config, HashTracksContentNotOutputLocation) {
  const io::RunConfig a(io::Mode::simulate, {}, {{"output_dir", "/tmp/a"}});
  const io::RunConfig b(io::Mode::simulate, {}, {{"output_dir", "/tmp/b"}});
  const io::RunConfig c(io::Mode::simulate, {}, {{"seed", "2"}});
  const io::RunConfig d(io::Mode::spectra);
  EXPECT_EQ(a.hash(), b.hash());
  EXPECT_NE(a.hash(), c.hash());
  EXPECT_NE(a.hash(), d.hash());
  EXPECT_EQ(a.hash().size(), 16u);
}

TEST(Config, ModeNames) {
  for (io::Mode m : io::all_modes()) EXPECT_EQ(io::parse_mode(io::mode_name(m)), m);
  EXPECT_THROW(io::parse_mode("simulat"), ConfigError);
  EXPECT_EQ(io::all_modes().size(), 6u);
}

TEST(Spectra, SingleLevelPeaksAtZero) {
  const auto grid = io::detuning_grid(-30.0, 30.0, 0.1);
  const std::vector<double> levels{0.0};
  const io::SpectraTable t = io::spectra_scan(LineshapeModel{}, grid, levels);
  ASSERT_EQ(t.transmission.size(), 1u);
  EXPECT_NEAR(t.peak_detunings[0], 0.0, 1e-12);
  const auto& v = t.transmission[0];
  for (std::size_t j = 0; j < v.size(); ++j) EXPECT_NEAR(v[j], v[v.size() - 1 - j], 1e-15);
}

TEST(Spectra, SaturatedSeparationIsNine) {
  const auto grid = io::detuning_grid(-40.0, 40.0, 0.01);
  const std::vector<double> levels{0.0, 1e12};
  const io::SpectraTable t = io::spectra_scan(LineshapeModel{}, grid, levels);
  EXPECT_NEAR(std::abs(t.peak_detunings[1] - t.peak_detunings[0]), 9.0, 1e-9);
  // Off-grid centre: refinement is exact for a Gaussian.
  const std::vector<double> mid{3.0};
  EXPECT_NEAR(io::spectra_scan(LineshapeModel{}, io::detuning_grid(-20.0, 20.0, 0.7), mid).peak_detunings[0],
              -4.5, 1e-9);
}

TEST(Spectra, RejectsEmptyInput) {
  const std::vector<double> none;
  const std::vector<double> one{0.0};
  EXPECT_THROW(io::spectra_scan(LineshapeModel{}, none, one), std::invalid_argument);
  EXPECT_THROW(io::spectra_scan(LineshapeModel{}, one, none), std::invalid_argument);
}

TEST(Run, SimulateMatchesLibrary) {
  const fs::path dir = scratch("simulate");
  const RunOutput r = run_mode(io::Mode::simulate, {{"output_dir", dir.string()}});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream wf(io::read_file((dir / "waveform.csv").string()));
  const TransmissionWaveform w = io::read_waveform(wf);

  IntegratorOptions o;
  o.rtol = 1e-10;
  o.atol = 1e-14;
  o.step = 1e-4;
  o.sample_interval = 1e-3;
  const Trajectory t = integrate(LvParams::reference(), {8.0, 6.0}, {0.0, 5.0}, o);
  const TransmissionWaveform lib = synthesize_waveform(t, LineshapeModel{});
  EXPECT_EQ(w.times, lib.times);
  EXPECT_EQ(w.values, lib.values);

  const PulseMetrics m = detect_pulses(lib);
  const auto s = parse_summary(r.out);
  EXPECT_EQ(s.at("pulse_count"), std::to_string(m.pulse_count));
  EXPECT_EQ(s.at("delta_t1_ms"), io::format_double(m.delta_t1));
  EXPECT_EQ(s.at("config_hash"), io::RunConfig(io::Mode::simulate).hash());
  EXPECT_EQ(io::read_file((dir / "summary.txt").string()), r.out);
  EXPECT_EQ(io::read_file((dir / "waveform.csv").string()).rfind("# rydlv ", 0), 0u);
}

TEST(Run, FitRecoversGammaFromSimulatedFile) {
  const fs::path dir = scratch("fit");
  ASSERT_EQ(run_mode(io::Mode::simulate, {{"output_dir", dir.string()}}).code, 0);
  const RunOutput r = run_mode(io::Mode::fit, {{"output_dir", dir.string()},
                                               {"input", (dir / "waveform.csv").string()},
                                               {"alpha", "0.78"},
                                               {"beta", "0.24"},
                                               {"delta", "0.24"},
                                               {"gamma", "0.33"},
                                               {"x0", "7.7"},
                                               {"y0", "6.2"}});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto s = parse_summary(r.out);
  EXPECT_NEAR(std::stod(s.at("fit_gamma")), 0.31755, 3e-4);
  EXPECT_EQ(s.at("fit_beta"), s.at("fit_delta"));
  EXPECT_EQ(s.at("converged"), "true");
}

TEST(Run, ExitCodes) {
  const fs::path dir = scratch("codes");
  const std::string bad = (dir / "bad.csv").string();
  io::write_file(bad, "t_ms,transmission\n0,1\n0.2,1\n0.1,1\n");
  RunOutput r = run_mode(io::Mode::fit, {{"output_dir", dir.string()}, {"input", bad}});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("bad.csv:4:1:"), std::string::npos) << r.err;

  r = run_mode(io::Mode::fit, {{"output_dir", dir.string()}, {"input", (dir / "missing.csv").string()}});
  EXPECT_EQ(r.code, 4);

  r = run_mode(io::Mode::simulate, {{"output_dir", dir.string()}, {"max_steps", "10"}});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("t = "), std::string::npos);

  r = run_mode(io::Mode::simulate, {{"output_dir", dir.string()}, {"integrator", "euler"}});
  EXPECT_EQ(r.code, 2);

  io::write_file((dir / "file").string(), "x");
  r = run_mode(io::Mode::simulate, {{"output_dir", (dir / "file" / "sub").string()}});
  EXPECT_EQ(r.code, 4);

  r = run_mode(io::Mode::sense, {{"output_dir", dir.string()}});
  EXPECT_EQ(r.code, 2);
}

TEST(Run, SenseMatchesLibrary) {
  const fs::path dir = scratch("sense");
  const RunOutput r = run_mode(io::Mode::sense, {{"output_dir", dir.string()}, {"field", "11.6"}});
  ASSERT_EQ(r.code, 0) << r.err;
  const FieldCalibration cal;
  const double period = 1.0 / *frequency_at_field(11.6, cal);
  const FieldEstimate e = field_from_waveform(pulse_train(period, 0.2 * period, 20, 200), cal);
  const auto s = parse_summary(r.out);
  EXPECT_EQ(s.at("estimated_field_g"), io::format_double(e.field));
  EXPECT_EQ(s.at("field_uncertainty_g"), io::format_double(e.uncertainty));

  const RunOutput low = run_mode(io::Mode::sense, {{"output_dir", dir.string()}, {"field", "2"}});
  ASSERT_EQ(low.code, 0);
  EXPECT_EQ(parse_summary(low.out).at("oscillating"), "false");
}

TEST(Run, SpectraMatchesLibrary) {
  const fs::path dir = scratch("spectra");
  const RunOutput r = run_mode(io::Mode::spectra, {{"output_dir", dir.string()}});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto grid = io::detuning_grid(-40.0, 40.0, 0.01);
  const std::vector<double> levels{0.0, 1e12};
  const io::SpectraTable t = io::spectra_scan(LineshapeModel{}, grid, levels);
  const auto s = parse_summary(r.out);
  EXPECT_EQ(s.at("peak_separation_mhz"),
            io::format_double(std::abs(t.peak_detunings[1] - t.peak_detunings[0])));
}

TEST(Run, RepeatedRunsAreByteIdentical) {
  const fs::path a = scratch("det_a");
  const fs::path b = scratch("det_b");
  const io::KeyValues common{{"noise_sigma", "0.02"}, {"seed", "5"}};
  io::KeyValues ka = common;
  io::KeyValues kb = common;
  ka["output_dir"] = a.string();
  kb["output_dir"] = b.string();
  const RunOutput ra = run_mode(io::Mode::simulate, ka);
  const RunOutput rb = run_mode(io::Mode::simulate, kb);
  ASSERT_EQ(ra.code, 0);
  EXPECT_EQ(ra.out, rb.out);
  for (const char* f : {"trajectory.csv", "waveform.csv", "summary.txt"}) {
    EXPECT_EQ(io::read_file((a / f).string()), io::read_file((b / f).string())) << f;
  }
}
