#include <benchmark/benchmark.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "rydlv/estimation.hpp"
#include "rydlv/integrator.hpp"
#include "rydlv/lv_delay.hpp"
#include "rydlv/observables.hpp"
#include "rydlv/signal_analysis.hpp"

using namespace rydlv;

namespace {

const PopulationState kInit{8.0, 6.0};

std::vector<double> grid(double dt, int n) {
  std::vector<double> t(n + 1);
  for (int k = 0; k <= n; ++k) t[k] = k * dt;
  return t;
}

void BM_IntegrateAdaptive(benchmark::State& state) {
  IntegratorOptions o;
  o.rtol = std::pow(10.0, -static_cast<double>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate(LvParams::reference(), kInit, {0.0, 20.0}, o));
  }
}
BENCHMARK(BM_IntegrateAdaptive)->Arg(6)->Arg(9)->Arg(12)->Unit(benchmark::kMicrosecond);

void BM_IntegrateRk4(benchmark::State& state) {
  IntegratorOptions o;
  o.method = IntegratorMethod::rk4_fixed;
  o.step = 1e-5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate(LvParams::reference(), kInit, {0.0, 5.0}, o));
  }
}
BENCHMARK(BM_IntegrateRk4)->Unit(benchmark::kMillisecond);

void BM_IntegrateDelayed(benchmark::State& state) {
  DelayParams d;
  d.base = LvParams::reference();
  d.tau = 0.024;
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate_delayed(d, kInit, {0.0, 5.0}));
  }
}
BENCHMARK(BM_IntegrateDelayed)->Unit(benchmark::kMillisecond);

TransmissionWaveform reference_waveform(int samples) {
  const auto t = grid(5.0 / samples, samples);
  const Trajectory tr = integrate_at(LvParams::reference(), kInit, 0.0, t);
  return synthesize_waveform(tr, LineshapeModel{}, NoiseModel::gaussian(0.01, 3));
}

void BM_Residual(benchmark::State& state) {
  FitProblem prob;
  prob.data = reference_waveform(static_cast<int>(state.range(0)));
  prob.beta_equals_delta = true;
  const FitCandidate c{LvParams::reference(), kInit, LineshapeModel{}};
  for (auto _ : state) benchmark::DoNotOptimize(simulate_residual(c, prob));
}
BENCHMARK(BM_Residual)->Arg(1000)->Arg(5000)->Unit(benchmark::kMicrosecond);

void BM_Fit(benchmark::State& state) {
  FitProblem prob;
  prob.data = reference_waveform(5000);
  prob.beta_equals_delta = true;
  MultiStart ms;
  ms.guess = {{0.78, 0.24, 0.33, 0.24}, {7.8, 6.2}, LineshapeModel{}};
  FitOptions opts;
  opts.parallel = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(fit(prob, ms, opts));
}
BENCHMARK(BM_Fit)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_DetectPulses(benchmark::State& state) {
  const TransmissionWaveform w = pulse_train(1.0 / 12.0, 0.02, 200, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(detect_pulses(w));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(w.size()));
}
BENCHMARK(BM_DetectPulses)->Arg(50)->Arg(500)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
