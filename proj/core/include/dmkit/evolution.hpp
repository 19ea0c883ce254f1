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

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dmkit/grammar.hpp"
#include "dmkit/random.hpp"
#include "dmkit/transactions.hpp"

namespace dmkit {

struct Condition {
    ItemId item;  ///< the (column, value) item tested
    bool negated = false;  ///< true for `!=`

    friend bool operator==(const Condition&, const Condition&) = default;
};

/// Class association rule `conditions -> target`; the target item is fixed.
struct ClassRule {
    std::vector<Condition> conditions;
    ItemId target = 0;

    /// At least one condition, distinct columns, target column untouched.
    bool valid(const TransactionSet& tx) const;
    /// Conditions sorted by column name, then value, then operator.
    ClassRule normalized(const TransactionSet& tx) const;
    /// Phenotype tokens, e.g. {"Age", "==", "[18-28)", "AND", ...}.
    std::vector<std::string> tokens(const TransactionSet& tx) const;
    /// "Age == [18-28) AND Sex != M => Health == Good".
    std::string to_string(const TransactionSet& tx) const;

    friend bool operator==(const ClassRule&, const ClassRule&) = default;
};

/// Reads `attr op value (AND attr op value)*` token streams. Returns nullopt when
/// the tokens do not have that shape or name an unknown (column, value) item.
/// Duplicate columns survive decoding; ClassRule::valid() rejects them.
std::optional<ClassRule> decode_rule(const std::vector<std::string>& terminals,
                                     const TransactionSet& tx, ItemId target);

struct RuleScore {
    double fitness = 0.0;    ///< precision * recall
    double precision = 0.0;  ///< equals the rule's confidence
    double recall = 0.0;
    std::size_t coverage = 0;  ///< transactions matching every condition
    std::size_t hits = 0;      ///< covered transactions that carry the target
};

/// Rows satisfying every condition (`!=` is the complement of the item's rows).
Bitset rule_cover(const ClassRule& rule, const TransactionSet& tx);

/// Invalid or zero-coverage rules score 0.
RuleScore fitness(const ClassRule& rule, const TransactionSet& tx, ItemId target);

struct Confidence {
    double value = 0.0;
    bool undefined = false;  ///< zero coverage; value reported as 0
};
Confidence rule_confidence(const ClassRule& rule, const TransactionSet& tx);

struct GEConfig {
    std::size_t population = 500;
    std::size_t generations = 50;
    double crossover_rate = 0.75;
    double mutation_rate = 0.05;  ///< per codon
    std::size_t tournament_size = 2;
    std::size_t elitism = 1;
    std::size_t max_wraps = 2;
    std::size_t codon_length = 64;
    std::uint32_t codon_max = 256;
    std::uint64_t seed = 0;
    unsigned threads = 1;

    void validate() const;
};

Genotype random_genotype(const GEConfig& cfg, Rng& rng);

struct RankedRule {
    ClassRule rule;
    RuleScore score;
    double confidence = 0.0;
};

struct EvolutionResult {
    /// Distinct valid phenotypes of the final population, by fitness then confidence.
    std::vector<RankedRule> ranked;
    /// Best fitness of the initial population and of every generation after it.
    std::vector<double> best_fitness;
    std::size_t mapping_failures = 0;  ///< in the final population
};

/// Generational GA: tournament selection, one-point crossover, per-codon reset
/// mutation and elitism. `grammar` must already be bound to `tx`.
EvolutionResult evolve(const Grammar& grammar, const TransactionSet& tx, ItemId target,
                       const GEConfig& cfg);

/// `rule;fitness;precision;recall;confidence;coverage_count`
void write_class_rules_csv(std::ostream& out, const std::vector<RankedRule>& rules,
                           const TransactionSet& tx);

}  // namespace dmkit
