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

#include "thzlink/alignment.hpp"
#include "thzlink/config.hpp"

namespace {

using namespace thzlink;

void BM_ThreeDbRadius(benchmark::State& state) {
  const auto link = config::default_scenario().link();
  for (auto _ : state) {
    benchmark::DoNotOptimize(alignment::three_db_radius_m(
        link, 50.0, alignment::PatternConfig::TxAndRx));
  }
}
BENCHMARK(BM_ThreeDbRadius);

void BM_Sweep3db(benchmark::State& state) {
  const auto link = config::default_scenario().link();
  const std::vector<double> distances{10.0, 50.0, 100.0, 200.0};
  std::vector<double> hpbws;
  for (int i = 1; i <= 10; ++i) hpbws.push_back(i);
  for (auto _ : state) {
    benchmark::DoNotOptimize(alignment::sweep_3db(
        link, distances, hpbws, alignment::PatternConfig::TxOnly));
  }
  state.SetItemsProcessed(state.iterations() * 40);
}
BENCHMARK(BM_Sweep3db);

}  // namespace
