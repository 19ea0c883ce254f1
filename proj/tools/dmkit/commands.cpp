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

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include <dmkit/dataset.hpp>
#include <dmkit/encoding.hpp>
#include <dmkit/errors.hpp>
#include <dmkit/evolution.hpp>
#include <dmkit/forest.hpp>
#include <dmkit/grammar.hpp>
#include <dmkit/itemsets.hpp>
#include <dmkit/random.hpp>
#include <dmkit/rules.hpp>
#include <dmkit/selection.hpp>
#include <dmkit/split.hpp>
#include <dmkit/transactions.hpp>

namespace dmkit::cli {

namespace {

Dataset load(const CommonOptions& common) {
    const auto schema = load_schema(common.schema);
    return load_csv(common.data, schema, common.target);
}

std::ofstream open_output(const CommonOptions& common, const std::string& name) {
    std::filesystem::create_directories(common.out_dir);
    const auto path = common.out_dir / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ArgumentError("cannot write " + path.string());
    return out;
}

void warn(const std::vector<std::string>& warnings) {
    for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

ForestConfig forest_config(const CommonOptions& common, std::size_t n_trees) {
    ForestConfig cfg;
    cfg.n_trees = n_trees;
    cfg.seed = derive_seed(common.seed, "forest");
    cfg.threads = common.threads;
    return cfg;
}

// Test CCR of a forest restricted to `features`; with no features the majority
// training class is predicted for every row.
double evaluate_subset(const Matrix& x_train, std::span<const int> y_train, const Matrix& x_test,
                       std::span<const int> y_test, const std::vector<std::size_t>& features,
                       const ForestConfig& cfg) {
    std::vector<int> predicted;
    if (features.empty()) {
        std::map<int, std::size_t> counts;
        for (int y : y_train) ++counts[y];
        int majority = counts.begin()->first;
        for (const auto& [label, count] : counts)
            if (count > counts[majority]) majority = label;
        predicted.assign(y_test.size(), majority);
    } else {
        const auto model = train_forest(take_columns(x_train, features), y_train, cfg);
        predicted = predict(model, take_columns(x_test, features));
    }
    return ccr(predicted, y_test);
}

}  // namespace

void cmd_encode(const CommonOptions& common, const EncodeOptions& opts) {
    const Dataset ds = load(common);
    const auto dropped = drop_sparse_columns(ds, opts.max_missing);
    warn(dropped.warnings);
    const auto split =
        stratified_split(dropped.dataset, opts.test_fraction, derive_seed(common.seed, "split"));
    warn(split.warnings);
    const auto em = encode(dropped.dataset, split.train);

    auto matrix = open_output(common, "matrix.csv");
    write_matrix_csv(matrix, em);
    auto map = open_output(common, "feature_map.csv");
    write_feature_map_csv(map, em);
    auto split_out = open_output(common, "split.csv");
    write_split_csv(split_out, split);

    auto dropped_out = open_output(common, "dropped_columns.csv");
    dropped_out << "column,missing_fraction\n";
    for (const auto& name : dropped.dropped)
        dropped_out << csv_escape(name) << ','
                    << format_number(ds.missing_fraction(*ds.column_index(name))) << '\n';

    auto summary = open_output(common, "encode_summary.csv");
    summary << "metric,value\n"
            << "rows," << ds.n_rows() << '\n'
            << "input_columns," << ds.n_columns() << '\n'
            << "dropped_columns," << dropped.dropped.size() << '\n'
            << "final_features," << em.n_features() << '\n'
            << "train_rows," << split.train.size() << '\n'
            << "test_rows," << split.test.size() << '\n';

    std::cout << "rows              " << ds.n_rows() << '\n'
              << "input columns     " << ds.n_columns() << '\n'
              << "dropped columns   " << dropped.dropped.size() << '\n'
              << "final features    " << em.n_features() << '\n';
}

void cmd_mine(const CommonOptions& common, const MineOptions& opts) {
    if (opts.algorithm != "apriori" && opts.algorithm != "fpgrowth")
        throw ArgumentError("unknown algorithm '" + opts.algorithm + "' (apriori | fpgrowth)");
    if (opts.bins < 2) throw ArgumentError("bins must be >= 2");
    FilterConfig filters;
    filters.min_confidence = opts.min_confidence;
    filters.min_lift = opts.min_lift;
    filters.max_antecedent_support = opts.max_antecedent_support;
    filters.max_consequent_support = opts.max_consequent_support;
    filters.apply_trivial_filter = opts.trivial_filter;
    filters.validate();
    TrivialityMap triviality;
    if (!opts.triviality_map.empty()) triviality = TrivialityMap::load(opts.triviality_map);

    const Dataset ds = load(common);
    const auto disc = discretize(ds, opts.bins);
    warn(disc.warnings);
    const auto tx = to_transactions(disc.dataset);

    MiningConfig mining;
    mining.min_support = opts.min_support;
    mining.max_len = opts.max_len;
    mining.threads = common.threads;
    const auto itemsets =
        opts.algorithm == "apriori" ? mine_apriori(tx, mining) : mine_fpgrowth(tx, mining);
    const auto rules = generate_rules(itemsets, tx, opts.min_confidence, common.threads);
    auto kept = filter_rules(rules, filters);
    const std::size_t after_metrics = kept.size();
    if (opts.trivial_filter) kept = trivial_filter(kept, triviality, tx).rules;
    kept = sort_by_lift(std::move(kept));

    auto itemsets_out = open_output(common, "itemsets.csv");
    write_itemsets_csv(itemsets_out, itemsets, tx);
    auto rules_out = open_output(common, "rules.csv");
    write_rules_csv(rules_out, kept, tx);

    const std::vector<std::pair<std::string, std::size_t>> stages{
        {"frequent_itemsets", itemsets.size()},
        {"rules", rules.size()},
        {"metric_filters", after_metrics},
        {"trivial_filter", kept.size()},
    };
    auto stages_out = open_output(common, "stage_counts.csv");
    stages_out << "stage,count\n";
    for (const auto& [stage, count] : stages) stages_out << stage << ',' << count << '\n';

    auto table = open_output(common, "rule_counts.csv");
    table << "conf,min_lift,mas,mcs,trivial_filter,n_rules\n"
          << format_number(opts.min_confidence) << ',' << format_number(opts.min_lift) << ','
          << format_number(opts.max_antecedent_support) << ','
          << format_number(opts.max_consequent_support) << ','
          << (opts.trivial_filter ? "Yes" : "No") << ',' << kept.size() << '\n';

    for (const auto& [stage, count] : stages)
        std::cout << std::left << std::setw(20) << stage << count << '\n';
}

void cmd_select(const CommonOptions& common, const SelectOptions& opts) {
    std::vector<SelectorKind> kinds;
    for (const auto& name : opts.selectors) {
        const auto kind = parse_selector(name);
        if (!kind)
            throw ArgumentError("unknown selector '" + name +
                                "' (chi2, f_statistic, mutual_information, forward_selection, "
                                "rfe, rfecv, embedded_rf, rf_selector, tree_splits)");
        kinds.push_back(*kind);
    }
    if (opts.top_k == 0) throw ArgumentError("top-k must be >= 1");

    const Dataset ds = load(common);
    const auto dropped = drop_sparse_columns(ds, opts.max_missing);
    warn(dropped.warnings);
    const auto split =
        stratified_split(dropped.dataset, opts.test_fraction, derive_seed(common.seed, "split"));
    warn(split.warnings);
    const auto em = encode(dropped.dataset, split.train);
    if (em.n_features() == 0) throw PreconditionError("no features left after encoding");

    const Matrix x_train = take_rows(em.values, split.train);
    const Matrix x_test = take_rows(em.values, split.test);
    const auto y_train = take(std::span<const int>(em.target), split.train);
    const auto y_test = take(std::span<const int>(em.target), split.test);
    const std::size_t width = em.n_features();
    const std::size_t k = std::min(opts.top_k, width);

    const ForestConfig full = forest_config(common, opts.trees);
    const ForestConfig search = forest_config(common, opts.search_trees);

    std::vector<SelectionReport> reports;
    for (const auto kind : kinds) {
        SelectionReport report;
        switch (kind) {
            case SelectorKind::chi2:
            case SelectorKind::f_statistic:
            case SelectorKind::mutual_information:
                report = run_filter(kind, x_train, y_train, k);
                break;
            case SelectorKind::rfe:
                report = rfe(x_train, y_train, k, opts.rfe_step, search);
                break;
            case SelectorKind::rfecv:
                report = rfecv(x_train, y_train, opts.folds, opts.rfe_step, search);
                break;
            case SelectorKind::forward_selection:
                report = forward_selection(x_train, y_train, k, search, opts.folds);
                break;
            case SelectorKind::embedded_rf:
                report = embedded_rf_select(x_train, y_train, full);
                break;
            case SelectorKind::rf_selector:
                report = rf_as_selector(x_train, y_train, full);
                break;
            case SelectorKind::tree_splits:
                report = tree_split_selector(x_train, y_train, opts.tree_levels);
                break;
        }
        report.achieved_ccr =
            evaluate_subset(x_train, y_train, x_test, y_test, report.selected, full);

        const std::string name{to_string(kind)};
        auto out = open_output(common, "selection_" + name + ".csv");
        write_selection_csv(out, report, em.feature_names);
        if (score_based(kind) && report.scores) {
            const auto curve = ccr_curve(x_train, y_train, x_test, y_test, *report.scores,
                                         std::min(opts.curve_max, width), search);
            auto curve_out = open_output(common, "curve_" + name + ".csv");
            write_curve_csv(curve_out, curve.points);
        }
        if (!report.cv_curve.empty()) {
            auto curve_out = open_output(common, "curve_" + name + ".csv");
            write_curve_csv(curve_out, report.cv_curve);
        }
        reports.push_back(std::move(report));
    }

    std::vector<std::string> sources;
    for (std::size_t f = 0; f < width; ++f) sources.push_back(em.source_name(f));
    const auto histogram = vote_top_features(reports, opts.top_k, sources);
    auto hist_out = open_output(common, "vote_histogram.csv");
    write_histogram_csv(hist_out, histogram);

    // Wall-clock times differ between runs, so they live apart from the summary.
    auto summary = open_output(common, "selection_summary.csv");
    auto timings = open_output(common, "timings.csv");
    summary << "feature_selector,n_features,ccr\n";
    timings << "feature_selector,avg_selection_time_s\n";
    std::cout << std::left << std::setw(22) << "feature_selector" << std::setw(12) << "n_features"
              << std::setw(10) << "ccr" << "seconds\n";
    for (const auto& r : reports) {
        const std::string name{to_string(r.selector)};
        summary << name << ',' << r.selected.size() << ',' << format_number(*r.achieved_ccr)
                << '\n';
        timings << name << ',' << format_number(r.wall_time) << '\n';
        std::cout << std::setw(22) << name << std::setw(12) << r.selected.size() << std::setw(10)
                  << format_number(std::round(*r.achieved_ccr * 1e4) / 1e4)
                  << format_number(r.wall_time) << '\n';
    }
}

void cmd_evolve(const CommonOptions& common, const EvolveOptions& opts) {
    if (opts.bins < 2) throw ArgumentError("bins must be >= 2");
    std::string grammar_text{default_rule_grammar()};
    if (!opts.grammar.empty()) {
        std::ifstream in(opts.grammar, std::ios::binary);
        if (!in) throw ArgumentError("cannot read grammar " + opts.grammar.string());
        std::ostringstream buf;
        buf << in.rdbuf();
        grammar_text = buf.str();
    }
    const Grammar grammar = parse_grammar(grammar_text);

    GEConfig cfg;
    cfg.population = opts.population;
    cfg.generations = opts.generations;
    cfg.crossover_rate = opts.crossover;
    cfg.mutation_rate = opts.mutation;
    cfg.tournament_size = opts.tournament;
    cfg.elitism = opts.elitism;
    cfg.codon_length = opts.codon_length;
    cfg.max_wraps = opts.max_wraps;
    cfg.seed = derive_seed(common.seed, "ge");
    cfg.threads = common.threads;
    cfg.validate();

    const Dataset ds = load(common);
    const auto disc = discretize(ds, opts.bins);
    warn(disc.warnings);
    const auto tx = to_transactions(disc.dataset);
    const std::size_t target_column = disc.dataset.target_column();
    const auto& target_schema = disc.dataset.column(target_column);
    const std::string label =
        opts.target_class.empty() ? target_schema.categories.front() : opts.target_class;

    const auto target = tx.find(target_schema.name, label);
    if (!target) {
        std::vector<std::string> valid;
        for (const auto& item : tx.items())
            if (item.column == target_column) valid.push_back(item.label);
        throw ArgumentError("unknown target class '" + label + "' for column '" +
                            target_schema.name + "'; valid labels: " + join(valid, ", "));
    }

    const Grammar bound =
        grammar.has_schema_placeholder() ? bind_schema(grammar, tx, target_column) : grammar;
    const auto result = evolve(bound, tx, *target, cfg);

    auto rules_out = open_output(common, "class_rules.csv");
    write_class_rules_csv(rules_out, result.ranked, tx);
    auto log = open_output(common, "evolution_log.csv");
    log << "generation,best_fitness\n";
    for (std::size_t g = 0; g < result.best_fitness.size(); ++g)
        log << g << ',' << format_number(result.best_fitness[g]) << '\n';

    std::cout << "distinct rules    " << result.ranked.size() << '\n'
              << "mapping failures  " << result.mapping_failures << '\n'
              << "best fitness      " << format_number(result.best_fitness.back()) << '\n';
    const std::size_t shown = std::min<std::size_t>(5, result.ranked.size());
    for (std::size_t i = 0; i < shown; ++i)
        std::cout << "  " << result.ranked[i].rule.to_string(tx) << "  (fitness "
                  << format_number(result.ranked[i].score.fitness) << ")\n";
}

}  // namespace dmkit::cli
