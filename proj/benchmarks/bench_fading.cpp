// Copyright 2026 The thzlink Authors
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

#include <vector>

#include "thzlink/fading.hpp"
#include "thzlink/rng.hpp"

namespace {

using namespace thzlink;

const fading::WeibullParams kHovering{5.01, 57.40};

void BM_WeibullSample(benchmark::State& state) {
  Rng rng(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fading::weibull_sample(kHovering, rng));
  }
}
BENCHMARK(BM_WeibullSample);

void BM_RicianSample(benchmark::State& state) {
  Rng rng(1);
  const fading::RicianParams p{3.65, 1.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(fading::rician_sample(p, rng));
  }
}
BENCHMARK(BM_RicianSample);

void BM_WeibullMle(benchmark::State& state) {
  Rng rng(7);
  std::vector<double> draws(state.range(0));
  for (auto& v : draws) v = fading::weibull_sample(kHovering, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fading::weibull_fit_mle(draws));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_WeibullMle)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_RicianCdf(benchmark::State& state) {
  const fading::RicianParams p{3.65, 1.0};
  double r = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fading::rician_cdf(r, p));
    r = r < 7.0 ? r + 0.1 : 0.5;
  }
}
BENCHMARK(BM_RicianCdf);

void BM_ClassifyFading(benchmark::State& state) {
  Rng rng(3);
  std::vector<double> draws(2000);
  for (auto& v : draws) v = fading::weibull_sample(kHovering, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fading::classify_fading(draws));
  }
}
BENCHMARK(BM_ClassifyFading);

}  // namespace
