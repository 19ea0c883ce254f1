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

#include <exception>
#include <iostream>

#include <CLI11.hpp>

#include <dmkit/errors.hpp>

#include "commands.hpp"

namespace {

using namespace dmkit::cli;

void add_common(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("--data", o.data, "Input CSV with a header row")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--schema", o.schema, "Column schema file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--target", o.target, "Objective column (default: last column)");
    cmd->add_option("--seed", o.seed, "Run seed; every random stream derives from it")
        ->capture_default_str();
    cmd->add_option("--threads", o.threads, "Worker thread cap")
        ->check(CLI::Range(1u, 1024u))
        ->capture_default_str();
    cmd->add_option("--out-dir", o.out_dir, "Directory for report files")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dmkit: association rules, feature selection and rule evolution for survey data"};
    app.set_config("--config", "", "INI/TOML file; [encode], [mine], [select], [evolve] sections");
    app.require_subcommand(1);

    CommonOptions common;

    EncodeOptions encode;
    auto* enc = app.add_subcommand("encode", "Drop sparse columns and one-hot encode");
    add_common(enc, common);
    enc->add_option("--max-missing", encode.max_missing, "Drop columns missing in more than this fraction")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    enc->add_option("--test-fraction", encode.test_fraction, "Held-out fraction of the split")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();

    MineOptions mine;
    auto* min = app.add_subcommand("mine", "Frequent itemsets and association rules");
    add_common(min, common);
    min->add_option("--min-support", mine.min_support)->capture_default_str();
    min->add_option("--max-len", mine.max_len, "Largest itemset size (0 = unbounded)")
        ->capture_default_str();
    min->add_option("--algorithm", mine.algorithm)
        ->check(CLI::IsMember({"apriori", "fpgrowth"}))
        ->capture_default_str();
    min->add_option("--min-confidence", mine.min_confidence)->capture_default_str();
    min->add_option("--min-lift", mine.min_lift)->capture_default_str();
    min->add_option("--max-antecedent-support", mine.max_antecedent_support)->capture_default_str();
    min->add_option("--max-consequent-support", mine.max_consequent_support)->capture_default_str();
    min->add_flag("--trivial-filter", mine.trivial_filter, "Remove rules linking dependent columns");
    min->add_option("--triviality-map", mine.triviality_map, "Pairs of linked columns")
        ->check(CLI::ExistingFile);
    min->add_option("--bins", mine.bins, "Equal-width bins for numeric columns")->capture_default_str();

    SelectOptions select;
    auto* sel = app.add_subcommand("select", "Compare feature selectors");
    add_common(sel, common);
    sel->add_option("--selectors", select.selectors, "Comma-separated selector names")
        ->delimiter(',')
        ->capture_default_str();
    sel->add_option("--top-k", select.top_k, "Features kept by fixed-size selectors and voted")
        ->capture_default_str();
    sel->add_option("--test-fraction", select.test_fraction)
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    sel->add_option("--max-missing", select.max_missing)->check(CLI::Range(0.0, 1.0))->capture_default_str();
    sel->add_option("--trees", select.trees, "Forest size for final evaluation")->capture_default_str();
    sel->add_option("--search-trees", select.search_trees, "Forest size inside wrapper searches")
        ->capture_default_str();
    sel->add_option("--rfe-step", select.rfe_step)->capture_default_str();
    sel->add_option("--folds", select.folds)->capture_default_str();
    sel->add_option("--curve-max", select.curve_max, "Largest k on the CCR curves")->capture_default_str();
    sel->add_option("--tree-levels", select.tree_levels)->capture_default_str();

    EvolveOptions evolve;
    auto* evo = app.add_subcommand("evolve", "Evolve class association rules");
    add_common(evo, common);
    evo->add_option("--target-class", evolve.target_class, "Target label (default: first category)");
    evo->add_option("--grammar", evolve.grammar, "BNF grammar file")->check(CLI::ExistingFile);
    evo->add_option("--population", evolve.population)->capture_default_str();
    evo->add_option("--generations", evolve.generations)->capture_default_str();
    evo->add_option("--crossover", evolve.crossover)->capture_default_str();
    evo->add_option("--mutation", evolve.mutation)->capture_default_str();
    evo->add_option("--tournament", evolve.tournament)->capture_default_str();
    evo->add_option("--elitism", evolve.elitism)->capture_default_str();
    evo->add_option("--codon-length", evolve.codon_length)->capture_default_str();
    evo->add_option("--max-wraps", evolve.max_wraps)->capture_default_str();
    evo->add_option("--bins", evolve.bins)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*enc) cmd_encode(common, encode);
        if (*min) cmd_mine(common, mine);
        if (*sel) cmd_select(common, select);
        if (*evo) cmd_evolve(common, evolve);
    } catch (const dmkit::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
