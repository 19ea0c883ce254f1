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

#include <map>

#include <dmkit/dataset.hpp>
#include <dmkit/itemsets.hpp>
#include <dmkit/rules.hpp>
#include <dmkit/synthetic.hpp>
#include <dmkit/transactions.hpp>

namespace {

const dmkit::TransactionSet& survey(std::size_t rows) {
    static std::map<std::size_t, dmkit::TransactionSet> cache;
    auto it = cache.find(rows);
    if (it == cache.end())
        it = cache.emplace(rows, dmkit::to_transactions(dmkit::discretize(dmkit::make_survey(rows, 1), 5).dataset))
                 .first;
    return it->second;
}

dmkit::MiningConfig mining() {
    dmkit::MiningConfig cfg;
    cfg.min_support = 0.1;
    cfg.max_len = 3;
    return cfg;
}

void BM_Apriori(benchmark::State& state) {
    const auto& tx = survey(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(dmkit::mine_apriori(tx, mining()));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_FpGrowth(benchmark::State& state) {
    const auto& tx = survey(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(dmkit::mine_fpgrowth(tx, mining()));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_GenerateRules(benchmark::State& state) {
    const auto& tx = survey(static_cast<std::size_t>(state.range(0)));
    const auto itemsets = dmkit::mine_fpgrowth(tx, mining());
    for (auto _ : state) benchmark::DoNotOptimize(dmkit::generate_rules(itemsets, tx, 0.7));
}

}  // namespace

BENCHMARK(BM_Apriori)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FpGrowth)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GenerateRules)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
