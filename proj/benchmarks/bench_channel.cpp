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

#include "thzlink/channel.hpp"
#include "thzlink/config.hpp"
#include "thzlink/rng.hpp"
#include "thzlink/trajectory.hpp"

namespace {

using namespace thzlink;

void BM_MeanSnr(benchmark::State& state) {
  const auto scenario = config::default_scenario();
  const auto link = scenario.link();
  for (auto _ : state) {
    benchmark::DoNotOptimize(channel::mean_snr_db(
        link, scenario.nominal_uav, channel::ModelMode::Calibrated));
  }
}
BENCHMARK(BM_MeanSnr);

void BM_PowerMapGrid(benchmark::State& state) {
  const auto scenario = config::default_scenario();
  const auto link = scenario.link();
  const double half = 0.25;
  const double step = 2.0 * half / static_cast<double>(state.range(0) - 1);
  const channel::AxisSpec a{"b", -half, half, step};
  const channel::AxisSpec b{"height", -half, half, step};
  for (auto _ : state) {
    benchmark::DoNotOptimize(channel::power_map(
        link, scenario.nominal_uav, a, b, channel::ModelMode::Calibrated));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) *
                          state.range(0));
}
BENCHMARK(BM_PowerMapGrid)->Arg(21)->Arg(51)->Arg(101);

void BM_SimulateHover(benchmark::State& state) {
  const auto scenario = config::default_scenario();
  trajectory::JitterParams jitter = scenario.jitter;
  jitter.duration_s = static_cast<double>(state.range(0));
  for (auto _ : state) {
    Rng rng(1);
    benchmark::DoNotOptimize(
        trajectory::simulate_hover(scenario.nominal_uav, jitter, rng));
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(jitter.duration_s / jitter.dt_s));
}
BENCHMARK(BM_SimulateHover)->Arg(60)->Arg(600);

void BM_PredictOverLog(benchmark::State& state) {
  const auto scenario = config::default_scenario();
  Rng rng(2);
  const auto log =
      trajectory::simulate_hover(scenario.nominal_uav, scenario.jitter, rng);
  const auto link = scenario.link();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        channel::predict_over_log(log, link, channel::ModelMode::Calibrated));
  }
  state.SetItemsProcessed(state.iterations() * log.samples.size());
}
BENCHMARK(BM_PredictOverLog);

}  // namespace
