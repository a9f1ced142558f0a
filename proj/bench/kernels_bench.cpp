// Serial reference vs OpenMP versions of the data-parallel kernels.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "ultraseq/kernels.hpp"

using namespace ultraseq::kernels;

namespace {

std::vector<double> lattice(long count) {
  std::vector<double> xs(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) xs[i] = -4.0 + 8.0 * i / (count - 1);
  return xs;
}

void jet(double x, std::span<double> out) {
  const double e = std::exp(-x * x);
  out[0] = e;
  if (out.size() > 1) out[1] = -2 * x * e;
  if (out.size() > 2) out[2] = (4 * x * x - 2) * e;
  if (out.size() > 3) out[3] = (12 * x - 8 * x * x * x) * e;
}

void BM_GridSup(benchmark::State& state) {
  const auto xs = lattice(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(grid_sup(jet, 3, xs));
}

void BM_GridSupSerial(benchmark::State& state) {
  const auto xs = lattice(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(grid_sup_serial(jet, 3, xs));
}

double heavy(long n) {
  double s = 0;
  for (int k = 1; k <= 64; ++k) s += std::log1p(static_cast<double>(n) / k);
  return s;
}

void BM_MapIndices(benchmark::State& state) {
  std::vector<long> idx(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<long>(i) + 2;
  std::vector<double> out(idx.size());
  for (auto _ : state) {
    map_indices(idx, heavy, out);
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_MapIndicesSerial(benchmark::State& state) {
  std::vector<long> idx(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<long>(i) + 2;
  std::vector<double> out(idx.size());
  for (auto _ : state) {
    map_indices_serial(idx, heavy, out);
    benchmark::DoNotOptimize(out.data());
  }
}

double spike(double x) { return 64.0 * std::exp(-4096.0 * x * x) * std::cos(3 * x); }

void BM_Quadrature(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate_panels(spike, -1, 1, static_cast<int>(state.range(0)), 1e-10));
  }
}

void BM_QuadratureSerial(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate_panels_serial(spike, -1, 1, static_cast<int>(state.range(0)), 1e-10));
  }
}

}  // namespace

BENCHMARK(BM_GridSup)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(BM_GridSupSerial)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(BM_MapIndices)->Arg(1 << 10)->Arg(1 << 14);
BENCHMARK(BM_MapIndicesSerial)->Arg(1 << 10)->Arg(1 << 14);
BENCHMARK(BM_Quadrature)->Arg(8)->Arg(32);
BENCHMARK(BM_QuadratureSerial)->Arg(8)->Arg(32);

BENCHMARK_MAIN();
