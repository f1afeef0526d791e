// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include <random>

#include "ompc/complex_core.hpp"
#include "ompc/dictionary.hpp"
#include "ompc/gtd_model.hpp"
#include "ompc/omp_solver.hpp"

namespace {

ompc::CMatrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  ompc::CMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = {g(rng), g(rng)};
  return m;
}

void BM_OmpGtdPreset(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  ompc::GtdScene scene = ompc::reference_preset();
  const auto ranges = ompc::reference_scatterer_ranges();
  for (std::size_t i = 0; i < k; ++i) scene.scatterers.push_back({ranges[i], 1.0});
  const ompc::Dictionary d = ompc::build_gtd_dictionary(scene);
  const ompc::CVector y = ompc::synthesize_measurement(scene);
  const ompc::StoppingRule rule{ompc::FixedIterations{k}, 0};
  for (auto _ : state) benchmark::DoNotOptimize(ompc::omp_solve(d, y, rule));
}
BENCHMARK(BM_OmpGtdPreset)->DenseRange(1, 5);

void BM_MutualIncoherence(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const ompc::Dictionary d = ompc::normalize_columns(random_matrix(n / 2, n, 1));
  for (auto _ : state) benchmark::DoNotOptimize(ompc::mutual_incoherence(d).mu);
}
BENCHMARK(BM_MutualIncoherence)->Arg(40)->Arg(101)->Arg(256);

void BM_Lstsq(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const ompc::CMatrix a = random_matrix(m, m / 4, 2);
  const ompc::CMatrix y = random_matrix(m, 1, 3);
  for (auto _ : state) benchmark::DoNotOptimize(ompc::lstsq(a, y.data()));
}
BENCHMARK(BM_Lstsq)->Arg(32)->Arg(128);

}  // namespace

BENCHMARK_MAIN();
