#include "rydlv/estimation.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include "rydlv/errors.hpp"
#include "rydlv/lv_delay.hpp"

namespace rydlv {

namespace {

enum class Slot { alpha, beta, delta, gamma, x0, y0, amplitude, baseline, y_half };

const char* slot_name(Slot s) {
  switch (s) {
    case Slot::alpha: return "alpha";
    case Slot::beta: return "beta";
    case Slot::delta: return "delta";
    case Slot::gamma: return "gamma";
    case Slot::x0: return "x0";
    case Slot::y0: return "y0";
    case Slot::amplitude: return "amplitude";
    case Slot::baseline: return "baseline";
    case Slot::y_half: return "y_half";
  }
  return "?";
}

bool is_log_slot(Slot s) { return s != Slot::baseline; }

bool observes_waveform(const FitProblem& p) {
  return std::holds_alternative<TransmissionWaveform>(p.data);
}

std::vector<Slot> layout_of(const FitProblem& p) {
  std::vector<Slot> slots{Slot::alpha, Slot::beta};
  if (!p.beta_equals_delta) slots.push_back(Slot::delta);
  slots.push_back(Slot::gamma);
  if (p.fit_init) {
    slots.push_back(Slot::x0);
    slots.push_back(Slot::y0);
  }
  if (observes_waveform(p)) {
    if (p.free_observables.amplitude) slots.push_back(Slot::amplitude);
    if (p.free_observables.baseline) slots.push_back(Slot::baseline);
    if (p.free_observables.y_half) slots.push_back(Slot::y_half);
  }
  return slots;
}

double natural_value(const FitCandidate& c, Slot s) {
  switch (s) {
    case Slot::alpha: return c.params.alpha;
    case Slot::beta: return c.params.beta;
    case Slot::delta: return c.params.delta;
    case Slot::gamma: return c.params.gamma;
    case Slot::x0: return c.init.x;
    case Slot::y0: return c.init.y;
    case Slot::amplitude: return c.observables.amplitude;
    case Slot::baseline: return c.observables.baseline;
    case Slot::y_half: return c.observables.y_half;
  }
  return 0.0;
}

void set_natural(FitCandidate& c, Slot s, double v) {
  switch (s) {
    case Slot::alpha: c.params.alpha = v; break;
    case Slot::beta: c.params.beta = v; break;
    case Slot::delta: c.params.delta = v; break;
    case Slot::gamma: c.params.gamma = v; break;
    case Slot::x0: c.init.x = v; break;
    case Slot::y0: c.init.y = v; break;
    case Slot::amplitude: c.observables.amplitude = v; break;
    case Slot::baseline: c.observables.baseline = v; break;
    case Slot::y_half: c.observables.y_half = v; break;
  }
}

struct Box {
  std::vector<double> lower;
  std::vector<double> upper;
};

Box box_of(const std::vector<Slot>& slots, const ParameterBounds& b) {
  constexpr double kWide = 1e12;
  Box box;
  for (Slot s : slots) {
    double lo = 0.0;
    double hi = 0.0;
    switch (s) {
      case Slot::alpha:
      case Slot::beta:
      case Slot::delta:
      case Slot::gamma:
        lo = std::log(b.rate_min);
        hi = std::log(b.rate_max);
        break;
      case Slot::x0:
      case Slot::y0:
        lo = std::log(b.population_min);
        hi = std::log(b.population_max);
        break;
      case Slot::amplitude:
      case Slot::y_half:
        lo = std::log(1.0 / kWide);
        hi = std::log(kWide);
        break;
      case Slot::baseline:
        lo = -kWide;
        hi = kWide;
        break;
    }
    box.lower.push_back(lo);
    box.upper.push_back(hi);
  }
  return box;
}

std::vector<double> encode(const FitCandidate& c, const std::vector<Slot>& slots) {
  std::vector<double> x;
  x.reserve(slots.size());
  for (Slot s : slots) {
    const double v = natural_value(c, s);
    x.push_back(is_log_slot(s) ? std::log(v) : v);
  }
  return x;
}

FitCandidate decode(const std::vector<double>& x, const FitCandidate& base,
                    const std::vector<Slot>& slots, bool tie_delta) {
  FitCandidate c = base;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    set_natural(c, slots[i], is_log_slot(slots[i]) ? std::exp(x[i]) : x[i]);
  }
  if (tie_delta) c.params.delta = c.params.beta;
  return c;
}

void clamp_to(std::vector<double>& x, const Box& box) {
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], box.lower[i], box.upper[i]);
}

/// Data rearranged for the forward model: unique sorted sample times and the
/// observed values in original order.
struct PreparedData {
  std::vector<double> sorted_times;
  std::vector<std::size_t> rank;  // original index -> position in sorted_times
  std::vector<double> observed;   // waveform values, or x then y per sample
  bool waveform = true;
  double t0 = 0.0;
  double data_energy = 0.0;
};

PreparedData prepare(const FitProblem& p) {
  PreparedData d;
  const std::vector<double>* times = nullptr;
  if (const auto* w = std::get_if<TransmissionWaveform>(&p.data)) {
    times = &w->times;
    d.observed = w->values;
    d.waveform = true;
  } else {
    const auto& tr = std::get<Trajectory>(p.data);
    times = &tr.times;
    d.waveform = false;
    d.observed.reserve(2 * tr.size());
    for (const auto& s : tr.states) {
      d.observed.push_back(s.x);
      d.observed.push_back(s.y);
    }
  }
  const std::size_t n = times->size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return (*times)[a] < (*times)[b]; });
  d.rank.resize(n);
  d.sorted_times.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = (*times)[order[k]];
    if (!std::isfinite(t)) throw std::invalid_argument("data time stamps must be finite");
    if (!d.sorted_times.empty() && !(t > d.sorted_times.back())) {
      throw std::invalid_argument("data time stamps must be distinct");
    }
    d.sorted_times.push_back(t);
    d.rank[order[k]] = k;
  }
  d.t0 = p.start_time.value_or(n > 0 ? d.sorted_times.front() : 0.0);
  for (double v : d.observed) d.data_energy += v * v;
  return d;
}

/// Model minus data, in data order. Returns false when integration fails.
bool residuals(const FitCandidate& c, const FitProblem& p, const PreparedData& d,
               std::vector<double>& out) {
  Trajectory traj;
  try {
    if (p.delayed) {
      DelayParams dp;
      dp.base = c.params;
      dp.tau = p.tau;
      traj = integrate_delayed_at(dp, c.init, d.t0, d.sorted_times, p.integrator);
    } else {
      traj = integrate_at(c.params, c.init, d.t0, d.sorted_times, p.integrator);
    }
  } catch (const NumericalError&) {
    return false;
  }
  out.resize(d.observed.size());
  const std::size_t n = d.rank.size();
  if (d.waveform) {
    for (std::size_t i = 0; i < n; ++i) {
      const double model = lineshape(c.observables.lock_detuning, traj.states[d.rank[i]].y,
                                     c.observables);
      out[i] = model - d.observed[i];
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      const PopulationState& s = traj.states[d.rank[i]];
      out[2 * i] = s.x - d.observed[2 * i];
      out[2 * i + 1] = s.y - d.observed[2 * i + 1];
    }
  }
  for (double r : out) {
    if (!std::isfinite(r)) return false;
  }
  return true;
}

double sum_squares(const std::vector<double>& r) {
  double acc = 0.0;
  for (double v : r) acc += v * v;
  return acc;
}

double penalty_for(const PreparedData& d) { return 1e6 * (d.data_energy + 1.0); }

/// Objective in encoded coordinates.
class Objective {
 public:
  Objective(const FitProblem& p, const PreparedData& d, std::vector<Slot> slots,
            FitCandidate base)
      : p_(p), d_(d), slots_(std::move(slots)), base_(std::move(base)) {}

  FitCandidate candidate(const std::vector<double>& x) const {
    return decode(x, base_, slots_, p_.beta_equals_delta);
  }

  bool residuals_at(const std::vector<double>& x, std::vector<double>& r) const {
    return residuals(candidate(x), p_, d_, r);
  }

  double loss_at(const std::vector<double>& x) const {
    std::vector<double> r;
    if (!residuals_at(x, r)) return penalty_for(d_);
    return sum_squares(r);
  }

  const std::vector<Slot>& slots() const { return slots_; }
  const PreparedData& data() const { return d_; }

 private:
  const FitProblem& p_;
  const PreparedData& d_;
  std::vector<Slot> slots_;
  FitCandidate base_;
};

struct StartOutcome {
  std::vector<double> x;
  double loss = std::numeric_limits<double>::infinity();
  bool converged = false;
  std::size_t iterations = 0;
  std::vector<double> history;
};

/// Central-difference Jacobian of the residual vector; falls back to one-sided
/// differences where a probe fails. Returns false when no usable column exists.
bool jacobian(const Objective& obj, const std::vector<double>& x, const Box& box,
              Eigen::MatrixXd& J) {
  const std::size_t n = x.size();
  std::vector<double> rp;
  std::vector<double> rm;
  std::vector<double> r0;
  bool have_r0 = false;
  for (std::size_t j = 0; j < n; ++j) {
    const double h = 1e-6 * std::max(1.0, std::abs(x[j]));
    std::vector<double> xp = x;
    std::vector<double> xm = x;
    xp[j] = std::min(x[j] + h, box.upper[j]);
    xm[j] = std::max(x[j] - h, box.lower[j]);
    const bool ok_p = xp[j] != x[j] && obj.residuals_at(xp, rp);
    const bool ok_m = xm[j] != x[j] && obj.residuals_at(xm, rm);
    if (ok_p && ok_m) {
      if (J.rows() == 0) J.resize(static_cast<Eigen::Index>(rp.size()), static_cast<Eigen::Index>(n));
      for (std::size_t i = 0; i < rp.size(); ++i) {
        J(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = (rp[i] - rm[i]) / (xp[j] - xm[j]);
      }
      continue;
    }
    if (!have_r0) {
      if (!obj.residuals_at(x, r0)) return false;
      have_r0 = true;
    }
    if (J.rows() == 0) J.resize(static_cast<Eigen::Index>(r0.size()), static_cast<Eigen::Index>(n));
    const std::vector<double>* other = ok_p ? &rp : (ok_m ? &rm : nullptr);
    const double step = ok_p ? xp[j] - x[j] : xm[j] - x[j];
    for (std::size_t i = 0; i < r0.size(); ++i) {
      J(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          other ? ((*other)[i] - r0[i]) / step : 0.0;
    }
  }
  return true;
}

StartOutcome levenberg_marquardt(const Objective& obj, std::vector<double> x, const Box& box,
                                 const FitOptions& opts) {
  StartOutcome out;
  clamp_to(x, box);
  std::vector<double> r;
  if (!obj.residuals_at(x, r)) {
    out.x = x;
    out.loss = penalty_for(obj.data());
    return out;
  }
  double loss = sum_squares(r);
  const double exact_fit = 1e-30 * std::max(obj.data().data_energy, 1e-300);
  double lambda = 1e-3;
  const auto n = static_cast<Eigen::Index>(x.size());
  std::vector<double> r_new;

  for (std::size_t iter = 0; iter < opts.max_iterations; ++iter) {
    out.iterations = iter + 1;
    if (loss <= exact_fit) {
      out.converged = true;
      out.history.push_back(loss);
      break;
    }
    Eigen::MatrixXd J;
    if (!jacobian(obj, x, box, J)) break;
    const Eigen::Map<const Eigen::VectorXd> rv(r.data(), static_cast<Eigen::Index>(r.size()));
    const Eigen::MatrixXd A = J.transpose() * J;
    const Eigen::VectorXd g = J.transpose() * rv;

    bool accepted = false;
    double improvement = 0.0;
    for (int attempt = 0; attempt < 30; ++attempt) {
      Eigen::MatrixXd damped = A;
      for (Eigen::Index k = 0; k < n; ++k) {
        damped(k, k) += lambda * std::max(A(k, k), 1e-12);
      }
      const Eigen::VectorXd step = damped.ldlt().solve(-g);
      std::vector<double> x_new = x;
      for (Eigen::Index k = 0; k < n; ++k) x_new[static_cast<std::size_t>(k)] += step(k);
      clamp_to(x_new, box);
      if (x_new == x) break;
      if (obj.residuals_at(x_new, r_new)) {
        const double loss_new = sum_squares(r_new);
        if (loss_new < loss) {
          improvement = (loss - loss_new) / loss;
          x = std::move(x_new);
          r.swap(r_new);
          loss = loss_new;
          lambda = std::max(lambda / 3.0, 1e-12);
          accepted = true;
          break;
        }
      }
      lambda *= 4.0;
      if (lambda > 1e16) break;
    }
    out.history.push_back(loss);
    if (!accepted) {
      // No damped step lowers the loss any more: stationary to working precision.
      out.converged = true;
      break;
    }
    if (improvement < opts.rel_tol) {
      out.converged = true;
      break;
    }
  }
  out.x = std::move(x);
  out.loss = loss;
  return out;
}

StartOutcome nelder_mead(const Objective& obj, std::vector<double> x0, const Box& box,
                         const FitOptions& opts) {
  const std::size_t n = x0.size();
  clamp_to(x0, box);
  std::vector<std::vector<double>> simplex(n + 1, x0);
  for (std::size_t i = 0; i < n; ++i) {
    simplex[i + 1][i] += 0.05 * std::max(1.0, std::abs(x0[i]));
    clamp_to(simplex[i + 1], box);
    if (simplex[i + 1][i] == x0[i]) simplex[i + 1][i] -= 0.05 * std::max(1.0, std::abs(x0[i]));
  }
  std::vector<double> f(n + 1);
  for (std::size_t i = 0; i <= n; ++i) f[i] = obj.loss_at(simplex[i]);

  StartOutcome out;
  std::vector<std::size_t> idx(n + 1);
  auto point = [&](const std::vector<double>& centroid, const std::vector<double>& worst,
                   double coeff) {
    std::vector<double> p(n);
    for (std::size_t k = 0; k < n; ++k) p[k] = centroid[k] + coeff * (worst[k] - centroid[k]);
    clamp_to(p, box);
    return p;
  };

  for (std::size_t iter = 0; iter < opts.max_iterations; ++iter) {
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return f[a] < f[b]; });
    const std::size_t best = idx.front();
    const std::size_t worst = idx.back();
    const std::size_t second = idx[n - 1];
    out.iterations = iter + 1;
    out.history.push_back(f[best]);

    const double spread = f[worst] - f[best];
    if (spread <= opts.rel_tol * std::abs(f[best]) + 1e-300) {
      out.converged = true;
      break;
    }

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex[i][k] / static_cast<double>(n);
    }
    const std::vector<double> xr = point(centroid, simplex[worst], -1.0);
    const double fr = obj.loss_at(xr);
    if (fr < f[best]) {
      const std::vector<double> xe = point(centroid, simplex[worst], -2.0);
      const double fe = obj.loss_at(xe);
      if (fe < fr) {
        simplex[worst] = xe;
        f[worst] = fe;
      } else {
        simplex[worst] = xr;
        f[worst] = fr;
      }
      continue;
    }
    if (fr < f[second]) {
      simplex[worst] = xr;
      f[worst] = fr;
      continue;
    }
    const bool outside = fr < f[worst];
    const std::vector<double> xc = point(centroid, simplex[worst], outside ? -0.5 : 0.5);
    const double fc = obj.loss_at(xc);
    if (fc < (outside ? fr : f[worst])) {
      simplex[worst] = xc;
      f[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (std::size_t k = 0; k < n; ++k) {
        simplex[i][k] = simplex[best][k] + 0.5 * (simplex[i][k] - simplex[best][k]);
      }
      f[i] = obj.loss_at(simplex[i]);
    }
  }
  const auto best = static_cast<std::size_t>(std::min_element(f.begin(), f.end()) - f.begin());
  out.x = simplex[best];
  out.loss = f[best];
  return out;
}

}  // namespace

void FitProblem::validate() const {
  const ParameterBounds& b = bounds;
  if (!(b.rate_min > 0.0) || !(b.rate_max > b.rate_min) || !std::isfinite(b.rate_max)) {
    throw std::invalid_argument("rate bounds must satisfy 0 < rate_min < rate_max");
  }
  if (!(b.population_min > 0.0) || !(b.population_max > b.population_min) ||
      !std::isfinite(b.population_max)) {
    throw std::invalid_argument("population bounds must satisfy 0 < min < max");
  }
  if (delayed && (!std::isfinite(tau) || tau < 0.0)) throw std::invalid_argument("tau must be ≥ 0");
  integrator.validate();
  std::visit([](const auto& d) { d.validate(); }, data);
  if (data_points() < 10 * free_parameter_count()) {
    throw std::invalid_argument("need at least ten data points per free parameter");
  }
}

std::size_t FitProblem::data_points() const {
  return std::visit([](const auto& d) { return d.size(); }, data);
}

std::size_t FitProblem::free_parameter_count() const { return layout_of(*this).size(); }

std::vector<std::string> FitProblem::free_parameter_names() const {
  std::vector<std::string> names;
  for (Slot s : layout_of(*this)) names.emplace_back(slot_name(s));
  return names;
}

ResidualEvaluation simulate_residual(const FitCandidate& candidate, const FitProblem& problem) {
  candidate.params.validate();
  candidate.observables.validate();
  const ParameterBounds& b = problem.bounds;
  for (double r : {candidate.params.alpha, candidate.params.beta, candidate.params.gamma,
                   candidate.params.delta}) {
    if (r < b.rate_min || r > b.rate_max) throw std::invalid_argument("candidate rate outside bounds");
  }
  const PreparedData d = prepare(problem);
  std::vector<double> r;
  if (!residuals(candidate, problem, d, r)) return {penalty_for(d), true};
  return {sum_squares(r), false};
}

FitResult fit(const FitProblem& problem, const MultiStart& starts, const FitOptions& opts) {
  problem.validate();
  if (starts.starts == 0) throw std::invalid_argument("need at least one start");
  if (!(starts.log_spread >= 0.0)) throw std::invalid_argument("start spread must be ≥ 0");
  starts.guess.params.validate();
  starts.guess.observables.validate();

  const PreparedData data = prepare(problem);
  const std::vector<Slot> slots = layout_of(problem);
  const Box box = box_of(slots, problem.bounds);
  FitCandidate base = starts.guess;
  if (problem.beta_equals_delta) base.params.delta = base.params.beta;
  const Objective obj(problem, data, slots, base);

  // Start points are drawn up front so threading cannot change them.
  std::vector<std::vector<double>> points;
  {
    std::mt19937_64 rng(starts.seed);
    std::normal_distribution<double> jitter(0.0, 1.0);
    const std::vector<double> x0 = encode(base, slots);
    points.push_back(x0);
    for (std::size_t s = 1; s < starts.starts; ++s) {
      std::vector<double> x = x0;
      for (std::size_t k = 0; k < x.size(); ++k) {
        const double scale = is_log_slot(slots[k]) ? 1.0 : std::max(1.0, base.observables.amplitude);
        x[k] += starts.log_spread * scale * jitter(rng);
      }
      clamp_to(x, box);
      points.push_back(std::move(x));
    }
  }

  auto run_one = [&](const std::vector<double>& x) {
    return opts.method == FitMethod::levenberg_marquardt ? levenberg_marquardt(obj, x, box, opts)
                                                         : nelder_mead(obj, x, box, opts);
  };

  std::vector<StartOutcome> outcomes;
  outcomes.reserve(points.size());
  if (opts.parallel && points.size() > 1) {
    std::vector<std::future<StartOutcome>> futures;
    for (const auto& x : points) futures.push_back(std::async(std::launch::async, run_one, std::cref(x)));
    for (auto& f : futures) outcomes.push_back(f.get());
  } else {
    for (const auto& x : points) outcomes.push_back(run_one(x));
  }

  std::size_t winner = outcomes.size();
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (!outcomes[i].converged) continue;
    if (winner == outcomes.size() || outcomes[i].loss < outcomes[winner].loss) winner = i;
  }
  if (winner == outcomes.size()) throw NumericalError("no start converged");

  const StartOutcome& w = outcomes[winner];
  FitResult result;
  result.best = obj.candidate(w.x);
  result.residual = w.loss;
  result.converged = true;
  result.iterations = w.iterations;
  result.start_index = winner;
  result.loss_history = w.history;
  for (const auto& o : outcomes) result.start_losses.push_back(o.loss);
  for (Slot s : slots) result.parameter_names.emplace_back(slot_name(s));

  Eigen::MatrixXd J;
  if (jacobian(obj, w.x, box, J)) {
    for (std::size_t k = 0; k < slots.size(); ++k) {
      const double col = J.col(static_cast<Eigen::Index>(k)).squaredNorm();
      double curvature = 2.0 * col;
      if (is_log_slot(slots[k])) {
        const double v = natural_value(result.best, slots[k]);
        curvature /= v * v;
      }
      result.sensitivity.push_back(curvature);
    }
  } else {
    result.sensitivity.assign(slots.size(), std::numeric_limits<double>::quiet_NaN());
  }
  return result;
}

DiscriminationReport gamma_discrimination(const LvParams& params, double gamma_a, double gamma_b,
                                          double window_ms, const PopulationState& init,
                                          const LineshapeModel& model,
                                          const DiscriminationOptions& opts) {
  if (!(window_ms > 0.0)) throw std::invalid_argument("window must be positive");
  LvParams pa = params;
  pa.gamma = gamma_a;
  LvParams pb = params;
  pb.gamma = gamma_b;
  pa.validate();
  pb.validate();

  IntegratorOptions io = opts.integrator;
  io.sample_interval = opts.sample_interval;
  DiscriminationReport rep;
  rep.reference = synthesize_waveform(integrate(pa, init, {0.0, window_ms}, io), model);
  rep.perturbed = synthesize_waveform(integrate(pb, init, {0.0, window_ms}, io), model);

  const PulseMetrics ref = detect_pulses(rep.reference, opts.detection);
  if (ref.pulse_count < 2) {
    throw std::invalid_argument("window too short: reference waveform shows " +
                                std::to_string(ref.pulse_count) + " pulse(s), need ≥ 2");
  }
  const PulseMetrics pert = detect_pulses(rep.perturbed, opts.detection);
  rep.reference_peak_times = ref.peak_times;

  const std::vector<double>& t = rep.reference.times;
  const std::size_t n_pulses = ref.pulse_count;
  for (std::size_t k = 0; k < n_pulses; ++k) {
    const double lo = k == 0 ? t.front() : 0.5 * (ref.peak_times[k - 1] + ref.peak_times[k]);
    const double hi =
        k + 1 == n_pulses ? t.back() : 0.5 * (ref.peak_times[k] + ref.peak_times[k + 1]);
    double acc = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const bool inside = t[i] >= lo && (t[i] < hi || (k + 1 == n_pulses && t[i] <= hi));
      if (!inside) continue;
      const double d = rep.perturbed.values[i] - rep.reference.values[i];
      acc += d * d;
      ++count;
    }
    rep.per_pulse_rms.push_back(count ? std::sqrt(acc / static_cast<double>(count)) : 0.0);

    double drift = std::numeric_limits<double>::quiet_NaN();
    for (double tb : pert.peak_times) {
      const double d = std::abs(tb - ref.peak_times[k]);
      if (std::isnan(drift) || d < drift) drift = d;
    }
    rep.peak_time_drift.push_back(drift);
  }
  rep.first_pulse_rms = rep.per_pulse_rms.front();
  rep.last_pulse_rms = rep.per_pulse_rms.back();
  return rep;
}

}  // namespace rydlv
