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

// Acceptance suite. Each criterion prints one PASS/FAIL line; the exit status is
// non-zero when any criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <dmkit/dataset.hpp>
#include <dmkit/encoding.hpp>
#include <dmkit/evolution.hpp>
#include <dmkit/forest.hpp>
#include <dmkit/grammar.hpp>
#include <dmkit/itemsets.hpp>
#include <dmkit/rules.hpp>
#include <dmkit/selection.hpp>
#include <dmkit/split.hpp>
#include <dmkit/synthetic.hpp>
#include <dmkit/transactions.hpp>

#include "generators.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using namespace dmkit;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

class Check {
public:
    void require(bool ok, const std::string& what) {
        if (!ok && out_.pass) out_.detail = what;
        out_.pass = out_.pass && ok;
    }
    void note(const std::string& text) {
        if (out_.pass) out_.detail = text;
    }
    Outcome result() const { return out_; }

private:
    Outcome out_;
};

std::string fmt(double v, int digits = 4) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(digits) << v;
    return s.str();
}

// ---------------------------------------------------------------------------

Outcome mining_equivalence() {
    Check check;
    gen::Source src(20260101);
    std::size_t itemsets = 0;
    for (int i = 0; i < 250; ++i) {
        const auto t = gen::transactions(src, 8, 30);
        MiningConfig cfg;
        cfg.min_support = 0.02 + 0.6 * src.unit();
        cfg.max_len = src.between(1, 8);
        const auto a = mine_apriori(t.tx, cfg);
        const auto f = mine_fpgrowth(t.tx, cfg);
        const auto b = brute_force_itemsets(t.tx, cfg);
        const auto o = oracle::frequent_itemsets(t.rows, t.n_items, cfg.min_support, cfg.max_len);
        check.require(a == b && f == b, "miners disagree on case " + std::to_string(i));
        bool oracle_ok = b.size() == o.size();
        for (const auto& fi : b) {
            const auto it = o.find(fi.items);
            oracle_ok = oracle_ok && it != o.end() && it->second == fi.support_count;
        }
        check.require(oracle_ok, "brute force differs from oracle on case " + std::to_string(i));
        itemsets += b.size();
    }
    check.note("250 sets, " + std::to_string(itemsets) + " itemsets identical");
    return check.result();
}

Outcome metric_identities() {
    Check check;
    std::vector<gen::Transactions> sets;
    {
        gen::Transactions toy;
        toy.n_items = 3;
        const std::vector<std::vector<ItemId>> lists{{0, 1, 2}, {0, 1}, {0, 2}, {1, 2}, {0, 1, 2}};
        for (const auto& l : lists) toy.rows.emplace_back(l.begin(), l.end());
        toy.tx = TransactionSet::from_item_lists({"a", "b", "c"}, lists);
        sets.push_back(std::move(toy));
    }
    gen::Source src(20260102);
    for (int i = 0; i < 50; ++i) sets.push_back(gen::transactions(src, 8, 30));

    std::size_t n_rules = 0;
    for (std::size_t s = 0; s < sets.size(); ++s) {
        const auto& t = sets[s];
        MiningConfig cfg;
        cfg.min_support = s == 0 ? 0.4 : 0.1;
        cfg.max_len = 4;
        for (const auto& r : generate_rules(mine_fpgrowth(t.tx, cfg), t.tx, 0.0)) {
            ++n_rules;
            const auto o = oracle::rule(t.rows, r.antecedent, r.consequent);
            check.require(r.confidence == static_cast<double>(o.xy) / static_cast<double>(o.nx),
                          "confidence mismatch in set " + std::to_string(s));
            check.require(std::abs(r.lift - o.lift()) <= 1e-12 * o.lift(),
                          "lift mismatch in set " + std::to_string(s));
            const double sa = static_cast<double>(o.nx) / static_cast<double>(o.n);
            const double sc = static_cast<double>(o.ny) / static_cast<double>(o.n);
            check.require(r.support <= std::min(sa, sc) + 1e-15 &&
                              r.support >= std::max(0.0, sa + sc - 1.0) - 1e-15,
                          "Frechet bound violated in set " + std::to_string(s));
        }
    }
    check.require(n_rules > 1000, "too few rules generated to be meaningful");
    check.note(std::to_string(n_rules) + " rules over " + std::to_string(sets.size()) + " sets");
    return check.result();
}

Outcome filter_cascade() {
    Check check;
    const auto ds = discretize(make_survey(1000, 11), 5).dataset;
    const auto tx = to_transactions(ds);
    MiningConfig mining;
    mining.min_support = 0.1;
    mining.max_len = 3;
    const auto rules = generate_rules(mine_fpgrowth(tx, mining), tx, 0.7);
    const auto triviality = TrivialityMap::parse(survey_triviality_map());

    FilterConfig lift;
    lift.min_lift = 1.0;
    FilterConfig support = lift;
    support.max_antecedent_support = 0.5;
    support.max_consequent_support = 0.5;
    const std::vector<std::size_t> counts{
        rules.size(),
        filter_rules(rules, lift).size(),
        filter_rules(rules, support).size(),
        trivial_filter(filter_rules(rules, support), triviality, tx).rules.size(),
    };
    for (std::size_t i = 1; i < counts.size(); ++i)
        check.require(counts[i] <= counts[i - 1], "stage " + std::to_string(i) + " grew");
    check.require(counts.front() > counts.back(), "filters removed nothing");
    check.note(std::to_string(counts[0]) + " -> " + std::to_string(counts[1]) + " -> " +
               std::to_string(counts[2]) + " -> " + std::to_string(counts[3]));
    return check.result();
}

Outcome forest_sanity() {
    Check check;
    const auto data = make_separable(500, 10, 20260104);
    const auto split = stratified_split(data.y, 0.3, 1);
    ForestConfig cfg;
    cfg.seed = 7;
    const auto model = train_forest(take_rows(data.x, split.train), take<int>(data.y, split.train), cfg);
    const double test_ccr =
        ccr(predict(model, take_rows(data.x, split.test)), take<int>(data.y, split.test));
    check.require(test_ccr >= 0.95, "test CCR " + fmt(test_ccr) + " < 0.95");

    const std::vector<int> truth{1, 0, 1, 1, 0, 0, 1, 0, 1, 1};
    std::vector<int> predicted = truth;
    predicted[0] = 0;
    predicted[5] = 1;
    check.require(ccr(predicted, truth) == 0.8, "ccr(8/10) != 0.8");
    check.require(ccr(truth, truth) == 1.0, "ccr(10/10) != 1");

    const auto imp = importances(model);
    const double sum = std::accumulate(imp.begin(), imp.end(), 0.0);
    check.require(std::abs(sum - 1.0) <= 1e-9, "importances sum to " + fmt(sum, 12));
    for (const auto& tree : model.trees) {
        const auto ti = tree.importances();
        const double s = std::accumulate(ti.begin(), ti.end(), 0.0);
        check.require(tree.nodes().size() == 1 || std::abs(s - 1.0) <= 1e-9, "tree importances off");
    }
    check.note("test CCR " + fmt(test_ccr) + ", importance sum " + fmt(sum, 12));
    return check.result();
}

struct RecoverySet {
    LabelledMatrix data;
    SplitIndices split;
    Matrix x_train, x_test;
    std::vector<int> y_train, y_test;
};

const RecoverySet& recovery_set() {
    static const RecoverySet set = [] {
        RecoverySet s;
        s.data = make_recovery(1000, 50, 6, 1);
        s.split = stratified_split(s.data.y, 0.3, 2);
        s.x_train = take_rows(s.data.x, s.split.train);
        s.x_test = take_rows(s.data.x, s.split.test);
        s.y_train = take<int>(s.data.y, s.split.train);
        s.y_test = take<int>(s.data.y, s.split.test);
        return s;
    }();
    return set;
}

ForestConfig search_forest() {
    ForestConfig cfg;
    cfg.n_trees = 25;
    cfg.seed = 3;
    return cfg;
}

Outcome selector_recovery() {
    Check check;
    const auto& s = recovery_set();
    const std::set<std::size_t> informative(s.data.informative.begin(), s.data.informative.end());
    std::vector<SelectionReport> reports{
        run_filter(SelectorKind::chi2, s.x_train, s.y_train, 6),
        run_filter(SelectorKind::f_statistic, s.x_train, s.y_train, 6),
        run_filter(SelectorKind::mutual_information, s.x_train, s.y_train, 6),
        rfe(s.x_train, s.y_train, 6, 1, search_forest()),
        forward_selection(s.x_train, s.y_train, 6, search_forest()),
    };
    std::string found;
    for (const auto& r : reports) {
        std::size_t hits = 0;
        for (std::size_t i = 0; i < std::min<std::size_t>(6, r.selected.size()); ++i)
            hits += informative.count(r.selected[i]);
        check.require(hits >= 5, std::string(to_string(r.selector)) + " found only " +
                                     std::to_string(hits) + " of 6");
        found += std::string(found.empty() ? "" : " ") + std::string(to_string(r.selector)) + "=" +
                 std::to_string(hits);
    }
    std::vector<std::string> sources;
    for (std::size_t f = 0; f < 50; ++f) sources.push_back("f" + std::to_string(f));
    const auto votes = vote_top_features(reports, 6, sources);
    const auto& first = votes.counts.front().first;
    check.require(informative.count(std::stoul(first.substr(1))) == 1,
                  "top-voted feature " + first + " is not informative");
    check.note(found + "; top vote " + first);
    return check.result();
}

Outcome curve_shape() {
    Check check;
    const auto& s = recovery_set();
    const auto mi = score_mutual_information(s.x_train, s.y_train);
    const auto curve =
        ccr_curve(s.x_train, s.y_train, s.x_test, s.y_test, mi.scores, 50, search_forest());
    const double all_features = curve.points.back().ccr;
    check.require(curve.best_k >= 4 && curve.best_k <= 12,
                  "MI curve peaks at k=" + std::to_string(curve.best_k));
    check.require(curve.best_ccr >= all_features - 0.01,
                  "peak " + fmt(curve.best_ccr) + " below all-features " + fmt(all_features));
    check.note("peak k=" + std::to_string(curve.best_k) + " CCR " + fmt(curve.best_ccr) +
               ", all features " + fmt(all_features));
    return check.result();
}

// ---------------------------------------------------------------------------
// CLI-driven criteria

const std::string kCli = DMKIT_CLI_PATH;
const std::string kDataDir = DMKIT_DATA_DIR;

int run_cli(const std::string& args, const fs::path& log) {
    const std::string cmd = kCli + " " + args + " >" + log.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string first_line(const fs::path& p) {
    std::ifstream in(p);
    std::string line;
    std::getline(in, line);
    return line;
}

std::size_t line_count(const fs::path& p) {
    const auto text = slurp(p);
    return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

struct Subcommand {
    std::string name;
    std::string args;
};

std::vector<Subcommand> pipeline() {
    const std::string data = "--data " + kDataDir + "/survey.csv --schema " + kDataDir + "/survey.schema";
    return {
        {"encode", "encode " + data + " --seed 5"},
        {"mine", "mine " + data + " --seed 5 --min-support 0.1 --max-len 3 --min-confidence 0.7 "
                 "--min-lift 1 --max-antecedent-support 0.5 --max-consequent-support 0.5 "
                 "--trivial-filter --triviality-map " + kDataDir + "/survey.triviality"},
        {"select", "select " + data + " --seed 5"},
        {"evolve", "evolve " + data + " --seed 5 --target-class Good"},
    };
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("dmkit_acceptance_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

Outcome determinism() {
    Check check;
    const auto root = scratch("determinism");
    std::size_t compared = 0;
    for (const auto& sub : pipeline()) {
        std::map<std::string, std::string> reference;
        for (const auto& [run, threads] : std::vector<std::pair<std::string, int>>{{"a", 1}, {"b", 8}, {"c", 1}}) {
            const auto out = root / (sub.name + "_" + run);
            const int code = run_cli(sub.args + " --threads " + std::to_string(threads) +
                                         " --out-dir " + out.string(),
                                     root / (sub.name + "_" + run + ".log"));
            check.require(code == 0, sub.name + " exited with " + std::to_string(code));
            std::map<std::string, std::string> files;
            for (const auto& entry : fs::directory_iterator(out))
                if (entry.path().filename() != "timings.csv")
                    files[entry.path().filename().string()] = slurp(entry.path());
            if (reference.empty()) {
                reference = std::move(files);
                check.require(!reference.empty(), sub.name + " wrote no files");
                continue;
            }
            for (const auto& [name, bytes] : reference) {
                const auto it = files.find(name);
                check.require(it != files.end() && it->second == bytes,
                              sub.name + "/" + name + " differs between runs");
                ++compared;
            }
            check.require(files.size() == reference.size(), sub.name + " file sets differ");
        }
    }
    fs::remove_all(root);
    check.note(std::to_string(compared) + " file comparisons identical (threads 1, 8, 1)");
    return check.result();
}

Outcome ge_correctness() {
    Check check;
    // Mapping determinism against an independent recursive mapper.
    {
        const auto ds = make_planted(200, 4, 1);
        const auto tx = to_transactions(ds);
        const auto g = bind_schema(parse_grammar(default_rule_grammar()), tx, ds.target_column());
        oracle::Grammar og{{}, g.start_symbol};
        for (const auto& [nt, alts] : g.productions)
            for (const auto& alt : alts) {
                std::vector<std::string> symbols;
                for (const auto& sym : alt) symbols.push_back(sym.text);
                og.rules[nt].push_back(symbols);
            }
        GEConfig cfg;
        Rng rng(20260108);
        std::size_t agree = 0;
        for (int i = 0; i < 1000; ++i) {
            const auto genome = random_genotype(cfg, rng);
            const auto a = map_genotype(genome, g, cfg.max_wraps);
            const auto b = map_genotype(genome, g, cfg.max_wraps);
            const auto o = oracle::map_genome(og, genome.codons, cfg.max_wraps);
            agree += a.ok == b.ok && a.terminals == b.terminals && a.ok == o.has_value() &&
                     (!a.ok || a.terminals == *o);
        }
        check.require(agree == 1000, "mapping disagreed on " + std::to_string(1000 - agree) + " genotypes");
    }

    std::size_t monotone = 0, reached = 0, verified = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto ds = make_planted(200, 4, 100 + seed);
        const auto tx = to_transactions(ds);
        const auto g = bind_schema(parse_grammar(default_rule_grammar()), tx, ds.target_column());
        const auto target = *tx.find("class", "pos");
        GEConfig cfg;  // population 500, 50 generations, elitism 1
        cfg.seed = seed;
        const auto res = evolve(g, tx, target, cfg);
        monotone += res.best_fitness.size() == 51 &&
                    std::is_sorted(res.best_fitness.begin(), res.best_fitness.end());
        reached += !res.ranked.empty() && res.ranked.front().score.fitness == 1.0;
        for (const auto& r : res.ranked) {
            std::size_t covered = 0, hits = 0, positives = 0;
            for (std::size_t row = 0; row < ds.n_rows(); ++row) {
                bool match = true;
                for (const auto& c : r.rule.conditions) {
                    const auto& item = tx.item(c.item);
                    const bool has = ds.cell(row, item.column) &&
                                     static_cast<std::size_t>(*ds.cell(row, item.column)) == item.category;
                    match = match && has != c.negated;
                }
                const bool positive = *ds.cell(row, ds.target_column()) == 0.0;
                positives += positive;
                covered += match;
                hits += match && positive;
            }
            const double expected = covered == 0 ? 0.0
                                                 : (static_cast<double>(hits) / static_cast<double>(covered)) *
                                                       (static_cast<double>(hits) / static_cast<double>(positives));
            check.require(std::abs(r.score.fitness - expected) <= 1e-12,
                          "fitness mismatch for " + r.rule.to_string(tx));
            ++verified;
        }
    }
    check.require(monotone == 20, "best fitness decreased in " + std::to_string(20 - monotone) + " runs");
    check.require(reached >= 19, "planted rule found in only " + std::to_string(reached) + "/20 runs");
    check.note("1000 genotypes mapped identically; monotone " + std::to_string(monotone) +
               "/20; fitness 1.0 in " + std::to_string(reached) + "/20; " + std::to_string(verified) +
               " rule scores recounted");
    return check.result();
}

Outcome end_to_end() {
    Check check;
    const auto root = scratch("e2e");
    const auto out = root / "out";
    for (const auto& sub : pipeline()) {
        const int code = run_cli(sub.args + " --out-dir " + out.string(), root / (sub.name + ".log"));
        check.require(code == 0, sub.name + " exited with " + std::to_string(code) + ": " +
                                     slurp(root / (sub.name + ".log")));
    }
    const std::vector<std::pair<std::string, std::string>> headers{
        {"matrix.csv", ""},
        {"feature_map.csv", "index,feature,source_column"},
        {"split.csv", "row_index,partition"},
        {"encode_summary.csv", "metric,value"},
        {"itemsets.csv", "items;support_count;support"},
        {"rules.csv", "antecedent;consequent;support;confidence;lift;antecedent_support;consequent_support"},
        {"stage_counts.csv", "stage,count"},
        {"rule_counts.csv", "conf,min_lift,mas,mcs,trivial_filter,n_rules"},
        {"selection_summary.csv", "feature_selector,n_features,ccr"},
        {"timings.csv", "feature_selector,avg_selection_time_s"},
        {"vote_histogram.csv", "feature,votes"},
        {"class_rules.csv", "rule;fitness;precision;recall;confidence;coverage_count"},
        {"evolution_log.csv", "generation,best_fitness"},
    };
    for (const auto& [file, header] : headers) {
        const auto path = out / file;
        check.require(fs::exists(path), file + " missing");
        if (!fs::exists(path)) continue;
        if (!header.empty()) check.require(first_line(path) == header, file + " header is '" + first_line(path) + "'");
        check.require(line_count(path) >= 2, file + " has no data rows");
    }
    // Selector summary: one row per selector with a CCR in [0, 1] and a non-negative time.
    std::size_t selectors = 0;
    if (fs::exists(out / "selection_summary.csv")) {
        std::ifstream in(out / "selection_summary.csv");
        std::string line;
        std::getline(in, line);
        while (std::getline(in, line)) {
            ++selectors;
            const auto ccr_text = line.substr(line.rfind(',') + 1);
            const double v = std::stod(ccr_text);
            check.require(v >= 0.0 && v <= 1.0, "CCR out of range: " + line);
        }
    }
    check.require(selectors == 8, "selection summary lists " + std::to_string(selectors) + " selectors");
    check.require(line_count(out / "timings.csv") == 9, "timings table should list 8 selectors");
    check.require(line_count(out / "rule_counts.csv") == 2, "rule count table should have one row");
    check.require(line_count(out / "evolution_log.csv") == 52, "evolution log should span 51 generations");
    fs::remove_all(root);
    check.note("encode, mine, select, evolve wrote " + std::to_string(headers.size()) + " well-formed reports");
    return check.result();
}

}  // namespace

int main() {
    const std::vector<std::tuple<int, std::string, double, std::function<Outcome()>>> criteria{
        {1, "mining oracle equivalence", 30, mining_equivalence},
        {2, "metric identities", 0, metric_identities},
        {3, "filter cascade monotonicity", 0, filter_cascade},
        {4, "forest sanity", 20, forest_sanity},
        {5, "selector recovery", 300, selector_recovery},
        {6, "CCR curve shape", 0, curve_shape},
        {7, "determinism", 0, determinism},
        {8, "grammatical evolution", 180, ge_correctness},
        {9, "end-to-end pipeline", 0, end_to_end},
    };
    int failures = 0;
    for (const auto& [id, name, budget, fn] : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = fn();
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (budget > 0 && seconds > budget) {
            outcome.pass = false;
            outcome.detail = "took " + fmt(seconds, 1) + " s, budget " + fmt(budget, 0) + " s";
        }
        failures += outcome.pass ? 0 : 1;
        std::cout << (outcome.pass ? "PASS" : "FAIL") << "  criterion " << id << ": " << name << " ("
                  << fmt(seconds, 1) << " s) " << outcome.detail << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
