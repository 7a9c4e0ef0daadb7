#include "rydlv/run.hpp"

#include <cmath>
#include <filesystem>
#include <ostream>
#include <sstream>
#include <utility>
#include <vector>

#include "rydlv/csv.hpp"
#include "rydlv/errors.hpp"
#include "rydlv/estimation.hpp"
#include "rydlv/field_sensing.hpp"
#include "rydlv/integrator.hpp"
#include "rydlv/lv_delay.hpp"
#include "rydlv/signal_analysis.hpp"
#include "rydlv/spectra.hpp"

#ifndef RYDLV_VERSION
#define RYDLV_VERSION "0.0.0"
#endif

namespace rydlv::io {

std::string version() { return RYDLV_VERSION; }

namespace {

class Summary {
 public:
  void add(const std::string& key, const std::string& value) { lines_.emplace_back(key, value); }
  void add(const std::string& key, const char* value) { add(key, std::string(value)); }
  void add(const std::string& key, double value) { add(key, format_double(value)); }
  void add(const std::string& key, std::size_t value) { add(key, std::to_string(value)); }
  void add(const std::string& key, bool value) { add(key, value ? "true" : "false"); }
  void add(const std::string& key, const std::vector<double>& values) {
    std::string s;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) s += ',';
      s += format_double(values[i]);
    }
    add(key, s);
  }

  std::string str() const {
    std::string out;
    for (const auto& [k, v] : lines_) out += k + "=" + v + "\n";
    return out;
  }

 private:
  std::vector<std::pair<std::string, std::string>> lines_;
};

class Outputs {
 public:
  explicit Outputs(const RunConfig& cfg) : dir_(cfg.text("output_dir")) {
    comments_ = {"rydlv " + version(), "mode=" + std::string(mode_name(cfg.mode())),
                 "config_hash=" + cfg.hash(), "seed=" + std::to_string(cfg.seed())};
  }

  const std::vector<std::string>& comments() const { return comments_; }

  void prepare() const {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw IoError("cannot create output directory '" + dir_.string() + "': " + ec.message());
  }

  void write(const std::string& name, const std::string& content) {
    write_file((dir_ / name).string(), content);
    names_.push_back(name);
  }

  const std::vector<std::string>& names() const { return names_; }

 private:
  std::filesystem::path dir_;
  std::vector<std::string> comments_;
  std::vector<std::string> names_;
};

void add_params(Summary& s, const std::string& prefix, const LvParams& p) {
  s.add(prefix + "alpha", p.alpha);
  s.add(prefix + "beta", p.beta);
  s.add(prefix + "gamma", p.gamma);
  s.add(prefix + "delta", p.delta);
}

void add_metrics(Summary& s, const PulseMetrics& m) {
  s.add("pulse_count", m.pulse_count);
  s.add("delta_t1_ms", m.delta_t1);
  s.add("delta_t2_ms", m.delta_t2 ? format_double(*m.delta_t2) : std::string("none"));
  s.add("frequency_khz", m.frequency ? format_double(*m.frequency) : std::string("none"));
  s.add("peak_times_ms", m.peak_times);
}

std::string trajectory_csv(const Trajectory& t, const Outputs& o) {
  std::ostringstream ss;
  write_trajectory(ss, t, o.comments());
  return ss.str();
}

std::string waveform_csv(const TransmissionWaveform& w, const Outputs& o) {
  std::ostringstream ss;
  write_waveform(ss, w, o.comments());
  return ss.str();
}

void run_simulate(const RunConfig& cfg, Outputs& out, Summary& s) {
  const bool delayed = cfg.mode() == Mode::simulate_delayed;
  const LvParams p = cfg.params();
  const PopulationState init = cfg.init();
  const TimeSpan span = cfg.span();
  const IntegratorOptions opts = cfg.integrator();
  const LineshapeModel model = cfg.lineshape();
  const NoiseModel noise = cfg.noise();
  const DetectionOptions det = cfg.detection();

  Trajectory traj;
  if (delayed) {
    traj = integrate_delayed(cfg.delay(), init, span, opts);
  } else {
    traj = integrate(p, init, span, opts);
  }
  const TransmissionWaveform w = synthesize_waveform(traj, model, noise);
  const PulseMetrics m = detect_pulses(w, det);

  out.write("trajectory.csv", trajectory_csv(traj, out));
  out.write("waveform.csv", waveform_csv(w, out));

  add_params(s, "", p);
  if (delayed) s.add("tau_ms", cfg.number("tau"));
  s.add("x0", init.x);
  s.add("y0", init.y);
  s.add("t_start_ms", span.start);
  s.add("t_end_ms", span.end);
  s.add("samples", traj.size());
  const PopulationState eq = coexistence_point(p);
  s.add("coexistence_x", eq.x);
  s.add("coexistence_y", eq.y);
  s.add("linearized_period_ms", linearized_period(p));
  if (!delayed && init.x > 0.0 && init.y > 0.0) {
    const double v0 = conserved_quantity(init, p);
    double drift = 0.0;
    for (const auto& st : traj.states) {
      if (st.x > 0.0 && st.y > 0.0) {
        drift = std::max(drift, std::abs(conserved_quantity(st, p) - v0) / std::abs(v0));
      }
    }
    s.add("conserved_quantity", v0);
    s.add("conserved_drift_rel", drift);
  }
  s.add("final_x", traj.states.back().x);
  s.add("final_y", traj.states.back().y);
  s.add("noise_sigma", noise.sigma);
  add_metrics(s, m);
}

void run_spectra(const RunConfig& cfg, Outputs& out, Summary& s) {
  const LineshapeModel model = cfg.lineshape();
  const auto grid =
      detuning_grid(cfg.number("detuning_min"), cfg.number("detuning_max"), cfg.number("detuning_step"));
  const auto levels = cfg.numbers("levels");
  const SpectraTable table = spectra_scan(model, grid, levels);

  std::vector<std::vector<double>> rows;
  rows.reserve(grid.size() * levels.size());
  for (std::size_t i = 0; i < levels.size(); ++i) {
    for (std::size_t j = 0; j < grid.size(); ++j) {
      rows.push_back({grid[j], levels[i], table.transmission[i][j]});
    }
  }
  std::ostringstream ss;
  write_table(ss, "detuning_mhz,level,transmission", out.comments(), rows);
  out.write("spectra.csv", ss.str());

  s.add("grid_points", grid.size());
  s.add("levels", levels);
  s.add("peak_detunings_mhz", table.peak_detunings);
  s.add("peak_separation_mhz", std::abs(table.peak_detunings.back() - table.peak_detunings.front()));
  std::vector<double> shifts;
  std::vector<double> widths;
  for (double y : levels) {
    shifts.push_back(line_centre(y, model));
    widths.push_back(measured_fwhm(y, model));
  }
  s.add("line_centres_mhz", shifts);
  s.add("fwhm_mhz", widths);
}

void run_fit(const RunConfig& cfg, Outputs& out, Summary& s) {
  if (!cfg.has_value("input")) throw ConfigError("fit needs an input file");
  const std::string path = cfg.text("input");
  const std::string content = read_file(path);
  std::istringstream probe(content);
  const std::string header = peek_header(probe);
  std::istringstream in(content);

  FitProblem prob;
  bool waveform_data = false;
  if (header == kWaveformHeader) {
    prob.data = read_waveform(in, path);
    waveform_data = true;
  } else if (header == kTrajectoryHeader) {
    prob.data = read_trajectory(in, path);
  } else {
    throw ConfigError(path + ": unrecognised header '" + header + "'");
  }
  prob.delayed = cfg.flag("fit_delayed");
  prob.tau = cfg.number("tau");
  prob.free_observables = {cfg.flag("free_amplitude"), cfg.flag("free_baseline"), cfg.flag("free_y_half")};
  prob.beta_equals_delta = cfg.flag("beta_equals_delta");
  prob.fit_init = cfg.flag("fit_init");
  prob.integrator = cfg.integrator();

  MultiStart ms;
  ms.guess = {cfg.params(), cfg.init(), cfg.lineshape()};
  ms.starts = cfg.integer("starts");
  ms.log_spread = cfg.number("start_spread");
  ms.seed = cfg.seed();

  FitOptions fo;
  const std::string& method = cfg.text("fit_method");
  if (method == "lm") {
    fo.method = FitMethod::levenberg_marquardt;
  } else if (method == "nelder-mead") {
    fo.method = FitMethod::nelder_mead;
  } else {
    throw ConfigError("key 'fit_method': expected lm or nelder-mead, got '" + method + "'");
  }
  fo.max_iterations = cfg.integer("max_iterations");
  fo.rel_tol = cfg.number("rel_tol");
  fo.parallel = cfg.flag("parallel");

  const FitResult r = fit(prob, ms, fo);
  const FitCandidate& b = r.best;

  const std::vector<double>& times = waveform_data ? std::get<TransmissionWaveform>(prob.data).times
                                                   : std::get<Trajectory>(prob.data).times;
  Trajectory model_traj;
  if (prob.delayed) {
    DelayParams dp;
    dp.base = b.params;
    dp.tau = prob.tau;
    model_traj = integrate_delayed_at(dp, b.init, times.front(), times, prob.integrator);
  } else {
    model_traj = integrate_at(b.params, b.init, times.front(), times, prob.integrator);
  }
  if (waveform_data) {
    out.write("fit_model.csv", waveform_csv(synthesize_waveform(model_traj, b.observables), out));
  } else {
    out.write("fit_model.csv", trajectory_csv(model_traj, out));
  }

  s.add("input", path);
  s.add("data_kind", waveform_data ? "waveform" : "trajectory");
  s.add("data_points", prob.data_points());
  add_params(s, "fit_", b.params);
  s.add("fit_x0", b.init.x);
  s.add("fit_y0", b.init.y);
  if (waveform_data) {
    s.add("fit_amplitude", b.observables.amplitude);
    s.add("fit_baseline", b.observables.baseline);
    s.add("fit_y_half", b.observables.y_half);
  }
  s.add("residual", r.residual);
  s.add("converged", r.converged);
  s.add("iterations", r.iterations);
  s.add("start_index", r.start_index);
  s.add("start_losses", r.start_losses);
  std::string names;
  for (std::size_t i = 0; i < r.parameter_names.size(); ++i) {
    if (i) names += ',';
    names += r.parameter_names[i];
  }
  s.add("free_parameters", names);
  for (std::size_t i = 0; i < r.parameter_names.size(); ++i) {
    s.add("sensitivity_" + r.parameter_names[i], r.sensitivity[i]);
  }
}

void run_discriminate(const RunConfig& cfg, Outputs& out, Summary& s) {
  const LvParams p = cfg.params();
  const TimeSpan span = cfg.span();
  DiscriminationOptions opts;
  opts.sample_interval = cfg.number("sample_dt");
  opts.integrator = cfg.integrator();
  opts.detection = cfg.detection();
  const double ga = cfg.number("gamma_a");
  const double gb = cfg.number("gamma_b");
  const double window = span.length();
  const DiscriminationReport rep =
      gamma_discrimination(p, ga, gb, window, cfg.init(), cfg.lineshape(), opts);

  std::vector<std::vector<double>> rows;
  rows.reserve(rep.reference.size());
  for (std::size_t i = 0; i < rep.reference.size(); ++i) {
    rows.push_back({rep.reference.times[i], rep.reference.values[i], rep.perturbed.values[i]});
  }
  std::ostringstream ss;
  write_table(ss, "t_ms,reference,perturbed", out.comments(), rows);
  out.write("discriminate.csv", ss.str());

  add_params(s, "", p);
  s.add("gamma_a", ga);
  s.add("gamma_b", gb);
  s.add("window_ms", window);
  s.add("pulse_count", rep.pulse_count());
  s.add("reference_peak_times_ms", rep.reference_peak_times);
  s.add("per_pulse_rms", rep.per_pulse_rms);
  s.add("peak_time_drift_ms", rep.peak_time_drift);
  s.add("first_pulse_rms", rep.first_pulse_rms);
  s.add("last_pulse_rms", rep.last_pulse_rms);
  s.add("rms_ratio", rep.first_pulse_rms > 0.0 ? rep.last_pulse_rms / rep.first_pulse_rms
                                                : std::nan(""));
}

void add_field_params(Summary& s, double field, const FieldCalibration& cal) {
  const bool in_span = field >= cal.min_supported_field() && field <= cal.max_supported_field();
  s.add("params_in_span", in_span);
  if (in_span) add_params(s, "field_", params_at_field(field, cal));
}

void run_sense(const RunConfig& cfg, Outputs& out, Summary& s) {
  const FieldCalibration cal = cfg.calibration();
  const DetectionOptions det = cfg.detection();
  const bool have_field = cfg.has_value("field");
  const bool have_input = cfg.has_value("input");
  if (have_field == have_input) throw ConfigError("sense needs exactly one of field or input");

  TransmissionWaveform w;
  if (have_field) {
    const double b = cfg.number("field");
    s.add("field_g", b);
    const auto f = frequency_at_field(b, cal);
    s.add("frequency_khz", f ? format_double(*f) : std::string("none"));
    add_field_params(s, b, cal);
    if (!f) {
      s.add("oscillating", false);
      return;
    }
    const double period = 1.0 / *f;
    w = pulse_train(period, cfg.number("pulse_fwhm_fraction") * period, cfg.integer("pulses"),
                    cfg.integer("samples_per_period"));
    out.write("pulse_train.csv", waveform_csv(w, out));
  } else {
    const std::string path = cfg.text("input");
    std::istringstream in(read_file(path));
    w = read_waveform(in, path);
    s.add("input", path);
  }

  const FieldEstimate est = field_from_waveform(w, cal, det);
  s.add("oscillating", est.oscillating);
  s.add("pulse_count", est.pulse_count);
  s.add("estimated_field_g", est.field);
  if (est.oscillating) {
    s.add("estimated_frequency_khz", est.frequency);
    s.add("field_uncertainty_g", est.uncertainty);
    s.add("slope_contribution_g", est.slope_contribution);
    s.add("interval_contribution_g", est.interval_contribution);
    if (!have_field) add_field_params(s, est.field, cal);
  }
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    Outputs files(config);
    Summary s;
    s.add("mode", std::string(mode_name(config.mode())));
    s.add("version", version());
    s.add("config_hash", config.hash());
    s.add("seed", std::to_string(config.seed()));

    if (config.has_value("input") && !std::filesystem::exists(config.text("input"))) {
      throw IoError("input file '" + config.text("input") + "' does not exist");
    }
    files.prepare();

    switch (config.mode()) {
      case Mode::simulate:
      case Mode::simulate_delayed:
        run_simulate(config, files, s);
        break;
      case Mode::spectra:
        run_spectra(config, files, s);
        break;
      case Mode::fit:
        run_fit(config, files, s);
        break;
      case Mode::discriminate:
        run_discriminate(config, files, s);
        break;
      case Mode::sense:
        run_sense(config, files, s);
        break;
    }
    std::string names;
    for (const auto& n : files.names()) names += (names.empty() ? "" : ",") + n;
    s.add("files", names);
    const std::string text = s.str();
    files.write("summary.txt", text);
    out << text;
    out.flush();
    return exit_ok;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return exit_config;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return exit_io;
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << " (t = " << format_double(e.time_ms()) << " ms)\n";
    return exit_numerical;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return exit_config;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return exit_config;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return exit_config;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_numerical;
  }
}

}  // namespace rydlv::io
