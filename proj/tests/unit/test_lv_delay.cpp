#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rydlv/errors.hpp"
#include "rydlv/lv_delay.hpp"
#include "rydlv/observables.hpp"
#include "rydlv/signal_analysis.hpp"

using namespace rydlv;

namespace {

const LvParams kRef = LvParams::reference();

IntegratorOptions tight() {
  IntegratorOptions o;
  o.rtol = 1e-10;
  o.atol = 1e-14;
  return o;
}

DelayParams delayed(double tau) {
  DelayParams d;
  d.base = kRef;
  d.tau = tau;
  return d;
}

}  // namespace

TEST(DelayedDerivative, ZeroDelayReducesToOde) {
  for (const PopulationState s : {PopulationState{1.0, 2.0}, PopulationState{0.3, 7.0}}) {
    const Rates a = delayed_derivative(0.0, s, s.x, delayed(0.0));
    const Rates b = derivative(s, kRef);
    EXPECT_EQ(a.dx, b.dx);
    EXPECT_EQ(a.dy, b.dy);
  }
}

TEST(DelayedDerivative, NoDelayedPreyMeansPureDecay) {
  const Rates r = delayed_derivative(1.0, {2.0, 1.0}, 0.0, delayed(0.024));
  EXPECT_DOUBLE_EQ(r.dy, -0.31755);
}

TEST(DelayedDerivative, CoexistenceIsDelayIndependent) {
  const PopulationState c = coexistence_point(kRef);
  const Rates r = delayed_derivative(0.0, c, c.x, delayed(0.5));
  EXPECT_NEAR(r.dx, 0.0, 1e-15);
  EXPECT_NEAR(r.dy, 0.0, 1e-15);
}

TEST(IntegrateDelayed, ZeroDelayMatchesOde) {
  const IntegratorOptions o = tight();
  const Trajectory a = integrate_delayed(delayed(0.0), {2.0, 1.0}, {0.0, 5.0}, o);
  const Trajectory b = integrate(kRef, {2.0, 1.0}, {0.0, 5.0}, o);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_NEAR(a.states[i].x, b.states[i].x, 10 * o.rtol * b.states[i].x);
    EXPECT_NEAR(a.states[i].y, b.states[i].y, 10 * o.rtol * b.states[i].y);
  }
}

TEST(IntegrateDelayed, CoexistenceWithConstantHistoryStays) {
  const PopulationState c = coexistence_point(kRef);
  const Trajectory t = integrate_delayed(delayed(0.024), c, {0.0, 5.0}, tight());
  for (const auto& s : t.states) {
    EXPECT_NEAR(s.x, c.x, 1e-10);
    EXPECT_NEAR(s.y, c.y, 1e-10);
  }
}

TEST(IntegrateDelayed, AgreesWithGridAlignedHeun) {
  for (double tau : {0.024, 0.3}) {
    const Trajectory t = integrate_delayed(delayed(tau), {2.0, 1.0}, {0.0, 5.0}, tight());
    const oracle::State ref = oracle::heun_delayed({0.75, 0.25, 0.31755, 0.25}, {2.0, 1.0}, tau, 5.0,
                                                   static_cast<std::size_t>(std::llround(tau / 2e-5)));
    EXPECT_NEAR(t.states.back().x, ref.x, 1e-7 * ref.x) << "tau=" << tau;
    EXPECT_NEAR(t.states.back().y, ref.y, 1e-7 * ref.y) << "tau=" << tau;
  }
}

TEST(IntegrateDelayed, FixedStepMethodAgrees) {
  IntegratorOptions rk;
  rk.method = IntegratorMethod::rk4_fixed;
  rk.step = 1e-4;
  const Trajectory a = integrate_delayed(delayed(0.024), {2.0, 1.0}, {0.0, 5.0}, tight());
  const Trajectory b = integrate_delayed(delayed(0.024), {2.0, 1.0}, {0.0, 5.0}, rk);
  EXPECT_NEAR(a.states.back().x, b.states.back().x, 1e-8 * a.states.back().x);
  EXPECT_NEAR(a.states.back().y, b.states.back().y, 1e-8 * a.states.back().y);
}

TEST(IntegrateDelayed, TransitDelayBarelyChangesPeriod) {
  const PopulationState c = coexistence_point(kRef);
  const PopulationState init{c.x * 1.01, c.y * 1.01};
  IntegratorOptions o = tight();
  o.sample_interval = 1e-3;
  const auto period_of = [&](double tau) {
    const Trajectory t = integrate_delayed(delayed(tau), init, {0.0, 60.0}, o);
    const auto up = upward_crossings(t, c.x);
    EXPECT_GE(up.size(), 3u);
    return (up.back() - up.front()) / static_cast<double>(up.size() - 1);
  };
  const double t0 = period_of(0.0);
  const double t1 = period_of(kDefaultTransitDelayMs);
  EXPECT_LT(std::abs(t1 - t0) / t0, 0.01);
  EXPECT_NE(t1, t0);
}

TEST(IntegrateDelayed, DelayErrorHalvesWithDelay) {
  const IntegratorOptions o = tight();
  const Trajectory ode = integrate(kRef, {2.0, 1.0}, {0.0, 5.0}, o);
  std::vector<double> err;
  for (double tau : {0.024, 0.012, 0.006, 0.003}) {
    const Trajectory d = integrate_delayed(delayed(tau), {2.0, 1.0}, {0.0, 5.0}, o);
    err.push_back(std::hypot(d.states.back().x - ode.states.back().x,
                             d.states.back().y - ode.states.back().y));
  }
  for (std::size_t i = 1; i < err.size(); ++i) {
    const double ratio = err[i - 1] / err[i];
    EXPECT_GE(ratio, 1.5);
    EXPECT_LE(ratio, 2.5);
  }
}

TEST(IntegrateDelayed, PulseWidthSweepOverDelay) {
  // Reported, not asserted monotone: the sweep decides the trend.
  const double t0 = linearized_period(kRef);
  const PopulationState c = coexistence_point(kRef);
  IntegratorOptions o = tight();
  o.sample_interval = 0.005;
  const LineshapeModel model = LineshapeModel::for_params(kRef);
  for (double f : {0.0, 0.05, 0.1, 0.2}) {
    const Trajectory t = integrate_delayed(delayed(f * t0), {c.x * 1.02, c.y * 1.02}, {0.0, 25.0}, o);
    const PulseMetrics m = detect_pulses(synthesize_waveform(t, model));
    ASSERT_GE(m.pulse_count, 1u) << "delay fraction " << f;
    EXPECT_TRUE(std::isfinite(m.delta_t1));
    std::printf("tau/T0=%.2f delta_t1=%.6f ms\n", f, m.delta_t1);
  }
}

TEST(PreyHistory, SampledInterpolatesAndValidates) {
  const PreyHistory h = PreyHistory::sampled({-1.0, 0.0}, {2.0, 4.0});
  EXPECT_DOUBLE_EQ(h.at(-0.5), 3.0);
  EXPECT_NO_THROW(h.validate(1.0));
  EXPECT_THROW(h.validate(2.0), std::invalid_argument);
  EXPECT_THROW(h.at(-1.5), NumericalError);
  EXPECT_THROW(PreyHistory::sampled({0.0, -1.0}, {1.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(PreyHistory::sampled({-1.0, 0.0}, {-1.0, 1.0}).validate(1.0), std::invalid_argument);
}

TEST(IntegrateDelayed, SampledHistoryIsUsed) {
  DelayParams with = delayed(0.5);
  with.history = PreyHistory::sampled({-0.5, 0.0}, {0.0, 2.0});
  const Trajectory a = integrate_delayed(with, {2.0, 1.0}, {0.0, 1.0}, tight());
  const Trajectory b = integrate_delayed(delayed(0.5), {2.0, 1.0}, {0.0, 1.0}, tight());
  EXPECT_LT(a.states.back().y, b.states.back().y);
}

TEST(IntegrateDelayed, RejectsBadDelay) {
  EXPECT_THROW(integrate_delayed(delayed(-0.1), {1.0, 1.0}, {0.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(integrate_delayed(delayed(NAN), {1.0, 1.0}, {0.0, 1.0}), std::invalid_argument);
}
