#include <benchmark/benchmark.h>

#include "helm/control.hpp"
#include "helm/sim.hpp"

namespace {

helm::VesselParams bench_vessel() {
  helm::VesselParams p;
  p.m11 = 120000.0;
  p.m22 = 180000.0;
  p.m23 = 90000.0;
  p.m33 = 3.0e6;
  p.d11 = 20000.0;
  p.d22 = 80000.0;
  p.d23 = 15000.0;
  p.d32 = 15000.0;
  p.d33 = 2.4e6;
  return p;
}

helm::RdArgsD bench_args() {
  helm::RdArgsD a;
  a.theta = 812.0;
  a.v_r = 0.2;
  a.u_r = 4.9;
  a.u_rd = 5.0;
  a.VT_hat = 0.8;
  a.VN_hat = -1.1;
  a.y_bp = 42.0;
  a.x_bp = 0.4;
  a.psi_tilde = 0.03;
  a.x_tilde = 0.2;
  a.y_tilde = -0.1;
  return a;
}

void BM_Dynamics(benchmark::State& state) {
  const helm::VesselParams p = bench_vessel();
  const helm::Environment env{-1.0, 1.2, 1.6};
  helm::VesselState s{100.0, 40.0, 0.9, 4.8, 0.1, 0.01};
  for (auto _ : state) {
    benchmark::DoNotOptimize(helm::dynamics(p, env, s, 0.8, -0.02));
  }
}
BENCHMARK(BM_Dynamics);

void BM_DesiredYawRate(benchmark::State& state) {
  const helm::PathGeometry circle = helm::PathGeometry::circle(0.0, 0.0, 400.0);
  helm::RdContext ctx;
  ctx.path = &circle;
  ctx.hydro = helm::hydro_coeffs(bench_vessel());
  const helm::RdArgsD args = bench_args();
  for (auto _ : state) {
    benchmark::DoNotOptimize(helm::eval_rd(args, ctx).r_d);
  }
}
BENCHMARK(BM_DesiredYawRate);

void BM_RdPartials(benchmark::State& state) {
  const helm::PathGeometry circle = helm::PathGeometry::circle(0.0, 0.0, 400.0);
  helm::RdContext ctx;
  ctx.path = &circle;
  ctx.hydro = helm::hydro_coeffs(bench_vessel());
  const helm::RdArgsD args = bench_args();
  for (auto _ : state) {
    benchmark::DoNotOptimize(helm::rd_partials(args, ctx));
  }
}
BENCHMARK(BM_RdPartials);

void BM_SinePathLookup(benchmark::State& state) {
  const helm::PathGeometry sine = helm::PathGeometry::sine(10.0, 0.01, 3000.0);
  double theta = 100.0;
  for (auto _ : state) {
    theta += 1.0;
    if (theta > 2900.0) theta = 100.0;
    benchmark::DoNotOptimize(sine.position(theta));
  }
}
BENCHMARK(BM_SinePathLookup);

void BM_CaseStudySecond(benchmark::State& state) {
  // One simulated second of the circular scenario at dt = 0.01.
  helm::ScenarioConfig cfg;
  cfg.vessel = bench_vessel();
  cfg.environment = helm::Environment{-1.0, 1.2, 1.5620499351813308};
  cfg.path.kind = helm::PathGeometry::Kind::circle;
  cfg.path.radius = 400.0;
  cfg.initial = helm::InitialState{0.0, 0.0, 0.0, 700.0, 10.0, 1.5707963267948966};
  cfg.t_end = 1.0;
  cfg.log_every = 1000;
  for (auto _ : state) {
    benchmark::DoNotOptimize(helm::run_scenario(cfg));
  }
}
BENCHMARK(BM_CaseStudySecond)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
