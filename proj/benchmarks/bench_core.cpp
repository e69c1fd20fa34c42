#include <benchmark/benchmark.h>

#include <cmath>

#include "geac/eac_classical.hpp"
#include "geac/equilibria.hpp"
#include "geac/oracle.hpp"
#include "geac/oscillator.hpp"
#include "geac/swing.hpp"

namespace {

using namespace geac;

const PolynomialOscillator& model_a() {
  static const PolynomialOscillator m(4.42e-4, {0.2649, -0.0503, -0.04414});
  return m;
}

void bm_find_equilibria(benchmark::State& state) {
  const PolynomialOscillator& m = model_a();
  for (auto _ : state) {
    EquilibriumSet eq = find_equilibria(m);
    benchmark::DoNotOptimize(eq);
  }
}
BENCHMARK(bm_find_equilibria);

void bm_integrate_500_swings(benchmark::State& state) {
  const PolynomialOscillator m(0.0, {0.2649, -0.0503, -0.04414});
  const OscillatorDynamics sys(m);
  IntegrateOptions opt;
  opt.max_time = 500.0;
  opt.watch_turning = false;
  opt.watch_accel = false;
  for (auto _ : state) {
    Trajectory tr = integrate_with_events(sys, State{0.0, 0.0, -0.5}, opt);
    benchmark::DoNotOptimize(tr);
    state.counters["steps"] = static_cast<double>(tr.n_steps);
  }
}
BENCHMARK(bm_integrate_500_swings)->Unit(benchmark::kMillisecond);

void bm_assess_stable_kick(benchmark::State& state) {
  for (auto _ : state) {
    AssessmentReport rep =
        assess_post_fault(model_a(), State{0.0, 0.0, -0.5});
    benchmark::DoNotOptimize(rep);
  }
}
BENCHMARK(bm_assess_stable_kick)->Unit(benchmark::kMillisecond);

void bm_assess_escape(benchmark::State& state) {
  for (auto _ : state) {
    AssessmentReport rep = assess_post_fault(model_a(), State{0.0, 0.0, 0.9});
    benchmark::DoNotOptimize(rep);
  }
}
BENCHMARK(bm_assess_escape)->Unit(benchmark::kMillisecond);

void bm_oracle_sealed(benchmark::State& state) {
  // energy below every barrier: the verdict needs no integration at all
  for (auto _ : state) {
    OracleVerdict v = oracle_classify(model_a(), State{0.0, 0.13, 0.0});
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(bm_oracle_sealed);

void bm_critical_clearing_angle(benchmark::State& state) {
  SmibScenario s;
  s.h = 4.5;
  s.d = 0.0;
  s.omega_s = 377.0;
  s.pm = 1.0;
  s.pmax_pre = 2.0;
  s.pmax_on = 0.8;
  s.pmax_post = 1.5;
  for (auto _ : state) {
    double dc = critical_clearing_angle(s);
    benchmark::DoNotOptimize(dc);
  }
}
BENCHMARK(bm_critical_clearing_angle);

void bm_online_stream(benchmark::State& state) {
  // one sample through the streaming assessor, steady oscillation
  const PolynomialOscillator& m = model_a();
  for (auto _ : state) {
    state.PauseTiming();
    OnlineAssessor online(m);
    state.ResumeTiming();
    double t = 0.0;
    for (int i = 0; i < 1000; ++i) {
      t += 0.01;
      online.push_sample(t, 0.3 * std::sin(0.5 * t), 0.15 * std::cos(0.5 * t));
    }
    benchmark::DoNotOptimize(online);
  }
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(bm_online_stream)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
