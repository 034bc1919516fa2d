#include <benchmark/benchmark.h>

#include <random>

#include "harmext/analysis.hpp"
#include "harmext/checks.hpp"
#include "harmext/extension.hpp"

using namespace harmext;

namespace {

const MapSpec& harmonic() {
  static const MapSpec s = builtin::harmonic_power(0.95, 0.1);
  return s;
}

std::vector<Complex> disk_points(std::size_t n) {
  std::mt19937_64 rng(1);
  std::vector<Complex> out(n);
  for (auto& z : out) z = sample_disk(rng, 0.95);
  return out;
}

std::vector<Point3> space_points(std::size_t n) {
  std::mt19937_64 rng(2);
  return sample_space_points(rng, n);
}

void BM_SigmaJet(benchmark::State& state) {
  const auto pts = disk_points(1024);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sigma_jet(harmonic(), pts[i++ & 1023]));
}
BENCHMARK(BM_SigmaJet);

void BM_LiftPointQuadrature(benchmark::State& state) {
  const auto pts = disk_points(1024);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(lift_point(harmonic(), pts[i++ & 1023]));
}
BENCHMARK(BM_LiftPointQuadrature);

void BM_LiftPointSeries(benchmark::State& state) {
  const MapSpec s(make_series({1.0, 0.2, -0.1}), make_series({0.0, 0.3}));
  const auto pts = disk_points(1024);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(lift_point(s, pts[i++ & 1023]));
}
BENCHMARK(BM_LiftPointSeries);

void BM_Extend(benchmark::State& state) {
  const auto pts = space_points(1024);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(extend(harmonic(), pts[i++ & 1023]));
}
BENCHMARK(BM_Extend);

void BM_ExtensionDilatation(benchmark::State& state) {
  const auto pts = space_points(1024);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(extension_dilatation(harmonic(), pts[i++ & 1023]));
}
BENCHMARK(BM_ExtensionDilatation);

void BM_CriticalPointFind(benchmark::State& state) {
  const UField f{harmonic(), Inversion{{0.2, -0.1, 0.8}}};
  for (auto _ : state) benchmark::DoNotOptimize(critical_point_find(f));
}
BENCHMARK(BM_CriticalPointFind)->Unit(benchmark::kMillisecond);

void BM_EstimateRho(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(estimate_rho(harmonic()));
}
BENCHMARK(BM_EstimateRho)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
