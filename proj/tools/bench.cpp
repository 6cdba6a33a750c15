// Serial vs OpenMP kernel timings.  Run with --benchmark_filter=... to pick
// a kernel; thread count follows GRAPHON_LDP_THREADS.

#include <cstdint>
#include <vector>

#include <benchmark/benchmark.h>

#include "gldp/kernels.hpp"
#include "gldp/reference.hpp"
#include "gldp/rng.hpp"

namespace {

std::vector<double> cut_mass(int n) {
  std::vector<double> m(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m[static_cast<std::size_t>(i) * n + j] =
          gldp::rng::uniform01(7, i, j) - 0.5;
  return m;
}

void BM_CutScanSerial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const std::vector<double> m = cut_mass(n);
  for (auto _ : state)
    benchmark::DoNotOptimize(gldp::kernels::cut_scan_serial(m, n));
}

void BM_CutScanOmp(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const std::vector<double> m = cut_mass(n);
  for (auto _ : state)
    benchmark::DoNotOptimize(gldp::kernels::cut_scan_omp(m, n));
}

void BM_AdjacencyFillSerial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const std::vector<double> prob(static_cast<std::size_t>(n) * n, 0.4);
  std::vector<std::uint8_t> adj;
  for (auto _ : state) {
    gldp::kernels::adjacency_fill_serial(prob, n, 11, adj);
    benchmark::DoNotOptimize(adj.data());
  }
}

void BM_AdjacencyFillOmp(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const std::vector<double> prob(static_cast<std::size_t>(n) * n, 0.4);
  std::vector<std::uint8_t> adj;
  for (auto _ : state) {
    gldp::kernels::adjacency_fill_omp(prob, n, 11, adj);
    benchmark::DoNotOptimize(adj.data());
  }
}

std::vector<double> x_grid(int k) {
  std::vector<double> xs(k);
  for (int i = 0; i < k; ++i) xs[i] = static_cast<double>(i) / (k - 1);
  return xs;
}

void BM_JrateScanSerial(benchmark::State& state) {
  const auto r = gldp::ReferenceGraphon::rank1({0.4, 0.4});
  const std::vector<double> xs = x_grid(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(gldp::kernels::jrate_scan_serial(r, 0.75, xs));
}

void BM_JrateScanOmp(benchmark::State& state) {
  const auto r = gldp::ReferenceGraphon::rank1({0.4, 0.4});
  const std::vector<double> xs = x_grid(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(gldp::kernels::jrate_scan_omp(r, 0.75, xs));
}

void BM_TiltedDegreesSerial(benchmark::State& state) {
  const std::vector<double> q(200, 0.6);
  std::vector<int> deg;
  for (auto _ : state) {
    gldp::kernels::tilted_degrees_serial(q, state.range(0), 3, deg);
    benchmark::DoNotOptimize(deg.data());
  }
}

void BM_TiltedDegreesOmp(benchmark::State& state) {
  const std::vector<double> q(200, 0.6);
  std::vector<int> deg;
  for (auto _ : state) {
    gldp::kernels::tilted_degrees_omp(q, state.range(0), 3, deg);
    benchmark::DoNotOptimize(deg.data());
  }
}

}  // namespace

BENCHMARK(BM_CutScanSerial)->Arg(16)->Arg(18);
BENCHMARK(BM_CutScanOmp)->Arg(16)->Arg(18);
BENCHMARK(BM_AdjacencyFillSerial)->Arg(256)->Arg(512);
BENCHMARK(BM_AdjacencyFillOmp)->Arg(256)->Arg(512);
BENCHMARK(BM_JrateScanSerial)->Arg(129);
BENCHMARK(BM_JrateScanOmp)->Arg(129);
BENCHMARK(BM_TiltedDegreesSerial)->Arg(20000);
BENCHMARK(BM_TiltedDegreesOmp)->Arg(20000);

BENCHMARK_MAIN();
