// Copyright 2026 The dmkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <dmkit/forest.hpp>
#include <dmkit/synthetic.hpp>

namespace {

void BM_TrainForest(benchmark::State& state) {
    const auto data = dmkit::make_recovery(1000, 50, 6, 1);
    dmkit::ForestConfig cfg;
    cfg.n_trees = static_cast<std::size_t>(state.range(0));
    cfg.threads = static_cast<unsigned>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(dmkit::train_forest(data.x, data.y, cfg));
}

void BM_Predict(benchmark::State& state) {
    const auto data = dmkit::make_recovery(1000, 50, 6, 1);
    const auto model = dmkit::train_forest(data.x, data.y, {});
    for (auto _ : state) benchmark::DoNotOptimize(dmkit::predict(model, data.x));
    state.SetItemsProcessed(state.iterations() * 1000);
}

}  // namespace

BENCHMARK(BM_TrainForest)->Args({25, 1})->Args({100, 1})->Args({100, 4})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Predict)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
