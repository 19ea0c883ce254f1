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

#include <dmkit/selection.hpp>
#include <dmkit/synthetic.hpp>

namespace {

const dmkit::LabelledMatrix& data() {
    static const auto d = dmkit::make_recovery(1000, 50, 6, 1);
    return d;
}

void BM_Chi2(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(dmkit::score_chi2(data().x, data().y));
}

void BM_FStatistic(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(dmkit::score_f_statistic(data().x, data().y));
}

void BM_MutualInformation(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(dmkit::score_mutual_information(data().x, data().y));
}

void BM_Rfe(benchmark::State& state) {
    dmkit::ForestConfig cfg;
    cfg.n_trees = 25;
    for (auto _ : state) benchmark::DoNotOptimize(dmkit::rfe(data().x, data().y, 6, 4, cfg));
}

}  // namespace

BENCHMARK(BM_Chi2);
BENCHMARK(BM_FStatistic);
BENCHMARK(BM_MutualInformation);
BENCHMARK(BM_Rfe)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
