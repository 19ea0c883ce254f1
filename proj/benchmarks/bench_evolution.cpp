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

#include <dmkit/evolution.hpp>
#include <dmkit/synthetic.hpp>

namespace {

void BM_Evolve(benchmark::State& state) {
    const auto ds = dmkit::make_planted(1000, 8, 1);
    const auto tx = dmkit::to_transactions(ds);
    const auto grammar =
        dmkit::bind_schema(dmkit::parse_grammar(dmkit::default_rule_grammar()), tx, ds.target_column());
    const auto target = *tx.find("class", "pos");
    dmkit::GEConfig cfg;
    cfg.population = static_cast<std::size_t>(state.range(0));
    cfg.generations = 10;
    for (auto _ : state) benchmark::DoNotOptimize(dmkit::evolve(grammar, tx, target, cfg));
}

void BM_MapGenotype(benchmark::State& state) {
    const auto ds = dmkit::make_planted(100, 8, 1);
    const auto tx = dmkit::to_transactions(ds);
    const auto grammar =
        dmkit::bind_schema(dmkit::parse_grammar(dmkit::default_rule_grammar()), tx, ds.target_column());
    dmkit::GEConfig cfg;
    dmkit::Rng rng(1);
    std::vector<dmkit::Genotype> genomes;
    for (int i = 0; i < 256; ++i) genomes.push_back(dmkit::random_genotype(cfg, rng));
    std::size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(dmkit::map_genotype(genomes[i++ % 256], grammar, 2));
}

}  // namespace

BENCHMARK(BM_Evolve)->Arg(100)->Arg(500)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MapGenotype);

BENCHMARK_MAIN();
