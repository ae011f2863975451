#include <benchmark/benchmark.h>

#include <random>

#include "fireline/burnedcost.hpp"
#include "fireline/eikonal_grid.hpp"
#include "fireline/firefront.hpp"
#include "fireline/strategy.hpp"
#include "fireline/sweep.hpp"

using namespace fireline;

namespace {

Params exact() {
  Params p;
  p.source_n = 0;
  p.phi_min_per_segment = 2;
  return p;
}

Scene spiral_scene(int points) {
  SpiralSpec sp;
  sp.points_per_branch = points;
  return make_scene({{{0, 0}, sp.r0}}, spiral_segments(sp), 2.5, 0.0);
}

Scene dust_scene(int count) {
  return make_scene({{{0, 0}, 1.0}}, dust_segments({{1.5, -3}, {4.5, 3}}, count, 0.01 * count, 7), 2.0, 0.0);
}

}  // namespace

static void BM_Orient(benchmark::State& st) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<Point> pts(3000);
  for (auto& p : pts) p = {u(rng), u(rng)};
  std::size_t k = 0;
  for (auto _ : st) {
    benchmark::DoNotOptimize(orient(pts[k % 3000], pts[(k + 1) % 3000], pts[(k + 2) % 3000]));
    ++k;
  }
}
BENCHMARK(BM_Orient);

static void BM_VisibleDust(benchmark::State& st) {
  Scene sc = dust_scene(static_cast<int>(st.range(0)));
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-5, 5);
  for (auto _ : st) benchmark::DoNotOptimize(visible({u(rng), u(rng)}, {u(rng), u(rng)}, sc.barrier));
}
BENCHMARK(BM_VisibleDust)->Arg(100)->Arg(1000);

static void BM_SolverBuildSpiral(benchmark::State& st) {
  Scene sc = spiral_scene(static_cast<int>(st.range(0)));
  for (auto _ : st) {
    TimeSolver s(sc, exact());
    benchmark::DoNotOptimize(s.nodes().size());
  }
}
BENCHMARK(BM_SolverBuildSpiral)->Arg(250)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_MinTimeSpiral(benchmark::State& st) {
  Scene sc = spiral_scene(1000);
  TimeSolver s(sc, exact());
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5, 5);
  for (auto _ : st) benchmark::DoNotOptimize(s.min_time({u(rng), u(rng)}));
}
BENCHMARK(BM_MinTimeSpiral)->Unit(benchmark::kMicrosecond);

static void BM_PhiProfileDust(benchmark::State& st) {
  Scene sc = dust_scene(200);
  TimeSolver s(sc, exact());
  for (auto _ : st) benchmark::DoNotOptimize(phi_profile(s).phi.size());
}
BENCHMARK(BM_PhiProfileDust)->Unit(benchmark::kMillisecond);

static void BM_GridCorner(benchmark::State& st) {
  Scene sc = make_scene({{{0, 0}, 1.0}}, {{{2, -1}, {2, 1}}}, 2.0, 0.0);
  GridOptions o;
  o.domain = Box{{-2, -3}, {5, 3}};
  const double h = 1.0 / static_cast<double>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(solve_grid(sc, h, 2, exact(), o).times.size());
}
BENCHMARK(BM_GridCorner)->Arg(25)->Arg(50)->Unit(benchmark::kMillisecond);

static void BM_Sweep(benchmark::State& st) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<Segment> segs;
  for (int k = 0; k < st.range(0); ++k) {
    double t = 0.1 + 0.9 * u(rng), x = (2 * u(rng) - 1) * 0.2 * t;
    segs.push_back({{t, x}, {t + 0.002, x + 0.004}});
  }
  for (auto _ : st) benchmark::DoNotOptimize(attainable_sweep(segs, 0.2, 1.0, SweepMode::symmetric).states.size());
}
BENCHMARK(BM_Sweep)->Arg(10)->Arg(100)->Unit(benchmark::kMicrosecond);

static void BM_BurnedSpiral(benchmark::State& st) {
  Scene sc = spiral_scene(1000);
  for (auto _ : st) benchmark::DoNotOptimize(burned_region(sc, 0.02).area);
}
BENCHMARK(BM_BurnedSpiral)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
