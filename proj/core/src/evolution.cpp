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

#include "dmkit/evolution.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <set>
#include <tuple>

#include "dmkit/dataset.hpp"
#include "dmkit/parallel.hpp"

namespace dmkit {

bool ClassRule::valid(const TransactionSet& tx) const {
    if (conditions.empty()) return false;
    const auto target_column = tx.item(target).column;
    std::set<std::size_t> columns;
    for (const auto& c : conditions) {
        const auto column = tx.item(c.item).column;
        if (column == target_column || !columns.insert(column).second) return false;
    }
    return true;
}

ClassRule ClassRule::normalized(const TransactionSet& tx) const {
    ClassRule out = *this;
    std::sort(out.conditions.begin(), out.conditions.end(),
              [&](const Condition& a, const Condition& b) {
                  const auto& ia = tx.item(a.item);
                  const auto& ib = tx.item(b.item);
                  return std::tie(ia.column_name, ia.label, a.negated) <
                         std::tie(ib.column_name, ib.label, b.negated);
              });
    return out;
}

std::vector<std::string> ClassRule::tokens(const TransactionSet& tx) const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < conditions.size(); ++i) {
        if (i) out.emplace_back("AND");
        const auto& item = tx.item(conditions[i].item);
        out.push_back(item.column_name);
        out.emplace_back(conditions[i].negated ? "!=" : "==");
        out.push_back(item.label);
    }
    return out;
}

std::string ClassRule::to_string(const TransactionSet& tx) const {
    std::string out;
    for (const auto& t : tokens(tx)) {
        if (!out.empty()) out += ' ';
        out += t;
    }
    const auto& goal = tx.item(target);
    return out + " => " + goal.column_name + " == " + goal.label;
}

std::optional<ClassRule> decode_rule(const std::vector<std::string>& terminals,
                                     const TransactionSet& tx, ItemId target) {
    ClassRule rule;
    rule.target = target;
    std::size_t i = 0;
    for (;;) {
        if (i + 3 > terminals.size()) return std::nullopt;
        const auto& op = terminals[i + 1];
        if (op != "==" && op != "!=") return std::nullopt;
        const auto item = tx.find(terminals[i], terminals[i + 2]);
        if (!item) return std::nullopt;
        rule.conditions.push_back({*item, op == "!="});
        i += 3;
        if (i == terminals.size()) return rule;
        if (terminals[i] != "AND") return std::nullopt;
        ++i;
    }
}

Bitset rule_cover(const ClassRule& rule, const TransactionSet& tx) {
    Bitset covered(tx.n_transactions());
    covered.set_all();
    for (const auto& c : rule.conditions) {
        if (c.negated)
            covered &= tx.tidset(c.item).complement();
        else
            covered &= tx.tidset(c.item);
    }
    return covered;
}

RuleScore fitness(const ClassRule& rule, const TransactionSet& tx, ItemId target) {
    RuleScore score;
    ClassRule aimed = rule;
    aimed.target = target;
    if (!aimed.valid(tx)) return score;
    const Bitset covered = rule_cover(aimed, tx);
    score.coverage = covered.count();
    score.hits = covered.count_and(tx.tidset(target));
    const std::size_t positives = tx.tidset(target).count();
    if (score.coverage == 0 || positives == 0) return score;
    score.precision = static_cast<double>(score.hits) / static_cast<double>(score.coverage);
    score.recall = static_cast<double>(score.hits) / static_cast<double>(positives);
    score.fitness = score.precision * score.recall;
    return score;
}

Confidence rule_confidence(const ClassRule& rule, const TransactionSet& tx) {
    const Bitset covered = rule_cover(rule, tx);
    const std::size_t coverage = covered.count();
    if (coverage == 0) return {0.0, true};
    return {static_cast<double>(covered.count_and(tx.tidset(rule.target))) /
                static_cast<double>(coverage),
            false};
}

void GEConfig::validate() const {
    auto rate = [](double v, const char* name) {
        if (!(v >= 0.0 && v <= 1.0)) throw ArgumentError(std::string(name) + " must lie in [0, 1]");
    };
    rate(crossover_rate, "crossover_rate");
    rate(mutation_rate, "mutation_rate");
    if (population < 2) throw ArgumentError("population must be >= 2");
    if (tournament_size < 1) throw ArgumentError("tournament_size must be >= 1");
    if (elitism > population) throw ArgumentError("elitism exceeds population");
    if (codon_length < 1) throw ArgumentError("codon_length must be >= 1");
    if (codon_max < 1) throw ArgumentError("codon_max must be >= 1");
}

Genotype random_genotype(const GEConfig& cfg, Rng& rng) {
    Genotype g;
    g.codons.resize(cfg.codon_length);
    for (auto& c : g.codons) c = static_cast<std::uint32_t>(rng.below(cfg.codon_max));
    return g;
}

namespace {

struct Individual {
    Genotype genotype;
    std::optional<ClassRule> phenotype;
    RuleScore score;
};

void evaluate(std::vector<Individual>& pop, const Grammar& grammar, const TransactionSet& tx,
              ItemId target, const GEConfig& cfg) {
    parallel_for(pop.size(), cfg.threads, [&](std::size_t i) {
        auto& ind = pop[i];
        ind.phenotype.reset();
        ind.score = {};
        const auto mapped = map_genotype(ind.genotype, grammar, cfg.max_wraps);
        if (!mapped.ok) return;
        ind.phenotype = decode_rule(mapped.terminals, tx, target);
        if (ind.phenotype) ind.score = fitness(*ind.phenotype, tx, target);
    });
}

double best_of(const std::vector<Individual>& pop) {
    double best = 0.0;
    for (const auto& ind : pop) best = std::max(best, ind.score.fitness);
    return best;
}

}  // namespace

EvolutionResult evolve(const Grammar& grammar, const TransactionSet& tx, ItemId target,
                       const GEConfig& cfg) {
    cfg.validate();
    if (target >= tx.n_items()) throw ArgumentError("target item out of range");
    if (grammar.has_schema_placeholder())
        throw ArgumentError("grammar still holds %schema placeholders; bind it first");

    Rng rng(cfg.seed);
    std::vector<Individual> pop(cfg.population);
    for (auto& ind : pop) ind.genotype = random_genotype(cfg, rng);
    evaluate(pop, grammar, tx, target, cfg);

    EvolutionResult result;
    result.best_fitness.push_back(best_of(pop));

    auto tournament = [&]() -> const Individual& {
        const Individual* winner = &pop[rng.below(pop.size())];
        for (std::size_t t = 1; t < cfg.tournament_size; ++t) {
            const Individual& rival = pop[rng.below(pop.size())];
            if (rival.score.fitness > winner->score.fitness) winner = &rival;
        }
        return *winner;
    };
    auto mutate = [&](Genotype& g) {
        for (auto& c : g.codons)
            if (rng.bernoulli(cfg.mutation_rate)) c = static_cast<std::uint32_t>(rng.below(cfg.codon_max));
    };

    for (std::size_t gen = 0; gen < cfg.generations; ++gen) {
        std::vector<std::size_t> order(pop.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return pop[a].score.fitness > pop[b].score.fitness;
        });

        std::vector<Individual> next;
        next.reserve(pop.size());
        for (std::size_t e = 0; e < cfg.elitism; ++e) next.push_back(pop[order[e]]);
        while (next.size() < pop.size()) {
            Genotype a = tournament().genotype;
            Genotype b = tournament().genotype;
            if (a.codons.size() > 1 && rng.bernoulli(cfg.crossover_rate)) {
                const auto cut = 1 + static_cast<std::size_t>(rng.below(a.codons.size() - 1));
                std::swap_ranges(a.codons.begin() + static_cast<std::ptrdiff_t>(cut), a.codons.end(),
                                 b.codons.begin() + static_cast<std::ptrdiff_t>(cut));
            }
            mutate(a);
            mutate(b);
            next.push_back({std::move(a), std::nullopt, {}});
            if (next.size() < pop.size()) next.push_back({std::move(b), std::nullopt, {}});
        }
        // Elites keep their evaluation; re-evaluating them would give the same score.
        std::vector<Individual> fresh(std::make_move_iterator(next.begin() + static_cast<std::ptrdiff_t>(cfg.elitism)),
                                      std::make_move_iterator(next.end()));
        evaluate(fresh, grammar, tx, target, cfg);
        std::move(fresh.begin(), fresh.end(), next.begin() + static_cast<std::ptrdiff_t>(cfg.elitism));
        pop = std::move(next);
        result.best_fitness.push_back(best_of(pop));
    }

    std::set<std::string> seen;
    for (const auto& ind : pop) {
        if (!ind.phenotype) {
            ++result.mapping_failures;
            continue;
        }
        if (!ind.phenotype->valid(tx)) continue;
        const auto rule = ind.phenotype->normalized(tx);
        if (!seen.insert(rule.to_string(tx)).second) continue;
        result.ranked.push_back({rule, ind.score, ind.score.precision});
    }
    std::sort(result.ranked.begin(), result.ranked.end(), [&](const auto& a, const auto& b) {
        if (a.score.fitness != b.score.fitness) return a.score.fitness > b.score.fitness;
        if (a.confidence != b.confidence) return a.confidence > b.confidence;
        return a.rule.to_string(tx) < b.rule.to_string(tx);
    });
    return result;
}

void write_class_rules_csv(std::ostream& out, const std::vector<RankedRule>& rules,
                           const TransactionSet& tx) {
    out << "rule;fitness;precision;recall;confidence;coverage_count\n";
    for (const auto& r : rules)
        out << csv_escape(r.rule.to_string(tx), ';') << ';' << format_number(r.score.fitness) << ';'
            << format_number(r.score.precision) << ';' << format_number(r.score.recall) << ';'
            << format_number(r.confidence) << ';' << r.score.coverage << '\n';
}

}  // namespace dmkit
