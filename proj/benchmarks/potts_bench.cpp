// Copyright 2026 The cwpotts Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <cstdint>

#include "cwpotts/exact_dist.hpp"
#include "cwpotts/free_energy.hpp"
#include "cwpotts/limit_laws.hpp"
#include "cwpotts/minimizers.hpp"
#include "cwpotts/rc_graph.hpp"

namespace cwpotts {
namespace {

void BM_ExactDistribution(benchmark::State& state) {
  const ModelParams p = critical_point_from_z(3, 0.2).params(3);
  const std::int64_t n = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(exact_distribution(p, n).log_z());
  }
  state.SetItemsProcessed(state.iterations() * (n + 1) * (n + 2) / 2);
}
BENCHMARK(BM_ExactDistribution)->Arg(100)->Arg(400)->Arg(1600)
    ->Unit(benchmark::kMillisecond);

void BM_FindGlobalMinimizers(benchmark::State& state) {
  const ModelParams p = ModelParams::make(static_cast<int>(state.range(0)),
                                          2.9, 0.01);
  for (auto _ : state) {
    benchmark::DoNotOptimize(find_global_minimizers(p));
  }
}
BENCHMARK(BM_FindGlobalMinimizers)->Arg(3)->Arg(10);

void BM_FkPercolate(benchmark::State& state) {
  const std::int64_t n = state.range(0);
  const double beta_c = phase_boundaries(3).beta_c;
  const auto dist = exact_distribution(ModelParams::make(3, beta_c, 0.0), n);
  const CountSampler sampler(dist);
  Rng rng = make_stream(1, 0);
  for (auto _ : state) {
    const Coloring sigma = assemble_coloring(sampler.sample(rng), rng);
    benchmark::DoNotOptimize(
        giant_fraction(fk_percolate(sigma, p_of_beta(beta_c, n), rng)));
  }
}
BENCHMARK(BM_FkPercolate)->Arg(1000)->Arg(3000)->Unit(benchmark::kMicrosecond);

void BM_QuarticCdf(benchmark::State& state) {
  const QuarticLaw law(3);
  double t = -0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(law.cdf(t));
    t = t > 0.5 ? -0.5 : t + 0.01;
  }
}
BENCHMARK(BM_QuarticCdf);

void BM_CovarianceMatrix(benchmark::State& state) {
  const int q = static_cast<int>(state.range(0));
  const ModelParams p = ModelParams::make(q, 1.0, 0.2);
  const DensityVector x = find_global_minimizers(p).minimizers.front();
  for (auto _ : state) {
    benchmark::DoNotOptimize(covariance_matrix(x, p.beta));
  }
}
BENCHMARK(BM_CovarianceMatrix)->Arg(3)->Arg(20);

}  // namespace
}  // namespace cwpotts

BENCHMARK_MAIN();
