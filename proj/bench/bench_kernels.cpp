// Serial vs OpenMP per-clique kernels on random symmetric clique blocks.
// Args: number of cliques, clique size.
#include <benchmark/benchmark.h>

#include <random>

#include "csdp/admm.hpp"
#include "csdp/kernels.hpp"
#include "csdp/sdp.hpp"

namespace {

std::vector<csdp::Mat> random_blocks(int count, int size) {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> g;
  std::vector<csdp::Mat> out;
  for (int k = 0; k < count; ++k) {
    csdp::Mat a(size, size);
    for (int i = 0; i < size; ++i)
      for (int j = 0; j < size; ++j) a(i, j) = g(rng);
    out.push_back(0.5 * (a + a.transpose()));
  }
  return out;
}

template <csdp::Exec E>
void BM_PsdProjectBatch(benchmark::State& state) {
  auto in = random_blocks(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  std::vector<csdp::Mat> out(in.size());
  for (auto _ : state) {
    csdp::psd_project_batch(in, out, E);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <csdp::Exec E>
void BM_MinEigenvalues(benchmark::State& state) {
  auto in = random_blocks(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(csdp::min_eigenvalues(in, E));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

// Whole domain-mode solve on a banded Max-Cut, to see how much of the
// kernel speedup survives the rest of the iteration.
template <csdp::Exec E>
void BM_SolveBandedMaxcut(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0)), band = 4;
  csdp::Mat W = csdp::Mat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j <= std::min(n - 1, i + band); ++j) W(i, j) = W(j, i) = 1.0;
  auto d = csdp::domain_decompose(csdp::gen_maxcut(W));
  csdp::AdmmSettings s;
  s.exec = E;
  s.max_iter = 200;
  for (auto _ : state) benchmark::DoNotOptimize(csdp::solve_domain(d, s).objective);
}

const auto kSerial = csdp::Exec::Serial;
const auto kParallel = csdp::Exec::Parallel;

}  // namespace

BENCHMARK_TEMPLATE(BM_PsdProjectBatch, kSerial)->Args({64, 8})->Args({256, 16})->Args({64, 48});
BENCHMARK_TEMPLATE(BM_PsdProjectBatch, kParallel)->Args({64, 8})->Args({256, 16})->Args({64, 48});
BENCHMARK_TEMPLATE(BM_MinEigenvalues, kSerial)->Args({64, 8})->Args({256, 16})->Args({64, 48});
BENCHMARK_TEMPLATE(BM_MinEigenvalues, kParallel)->Args({64, 8})->Args({256, 16})->Args({64, 48});
BENCHMARK_TEMPLATE(BM_SolveBandedMaxcut, kSerial)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_SolveBandedMaxcut, kParallel)->Arg(200)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
