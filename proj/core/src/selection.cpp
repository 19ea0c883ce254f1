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

#include "dmkit/selection.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <set>

#include "dmkit/dataset.hpp"
#include "dmkit/errors.hpp"
#include "dmkit/random.hpp"
#include "dmkit/split.hpp"

namespace dmkit {

namespace {

constexpr std::size_t kMiBins = 16;

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void check_xy(const Matrix& x, std::span<const int> y) {
    if (x.rows() != y.size())
        throw ArgumentError("label count " + std::to_string(y.size()) + " != row count " +
                            std::to_string(x.rows()));
    if (x.rows() == 0) throw ArgumentError("empty matrix");
    for (int label : y)
        if (label < 0) throw ArgumentError("class labels must be non-negative codes");
}

std::size_t n_classes(std::span<const int> y) {
    return static_cast<std::size_t>(*std::max_element(y.begin(), y.end()) + 1);
}

/// Ids sorted by descending value, ties ascending id.
std::vector<std::size_t> rank_desc(std::span<const double> values) {
    std::vector<std::size_t> ids(values.size());
    std::iota(ids.begin(), ids.end(), 0);
    std::stable_sort(ids.begin(), ids.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
    return ids;
}

std::vector<std::size_t> sorted(std::vector<std::size_t> ids) {
    std::sort(ids.begin(), ids.end());
    return ids;
}

std::vector<std::vector<std::size_t>> folds_for(std::span<const int> y, std::size_t k,
                                                const ForestConfig& cfg) {
    return stratified_kfold(y, k, derive_seed(cfg.seed, "folds"));
}

/// Importances of a forest trained on the given columns, in that column order.
std::vector<double> importances_on(const Matrix& x, std::span<const int> y,
                                   const std::vector<std::size_t>& columns,
                                   const ForestConfig& cfg) {
    return importances(train_forest(take_columns(x, columns), y, cfg));
}

/// One elimination round: keeps the `keep` most important of `surviving`, where
/// imp[i] belongs to surviving[i]. Returns the kept ids ascending.
std::vector<std::size_t> eliminate(const std::vector<std::size_t>& surviving,
                                   const std::vector<double>& imp, std::size_t keep) {
    std::vector<std::size_t> pos(surviving.size());
    std::iota(pos.begin(), pos.end(), 0);
    // Most important first; among equals the lower id survives.
    std::stable_sort(pos.begin(), pos.end(),
                     [&](std::size_t a, std::size_t b) { return imp[a] > imp[b]; });
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < keep; ++i) out.push_back(surviving[pos[i]]);
    return sorted(std::move(out));
}

SelectionReport importance_report(SelectorKind kind, std::vector<double> imp,
                                  std::vector<std::size_t> selected) {
    SelectionReport report;
    report.selector = kind;
    std::stable_sort(selected.begin(), selected.end(), [&](std::size_t a, std::size_t b) {
        return imp[a] > imp[b] || (imp[a] == imp[b] && a < b);
    });
    report.selected = std::move(selected);
    report.scores = std::move(imp);
    return report;
}

}  // namespace

std::string_view to_string(SelectorKind kind) {
    switch (kind) {
        case SelectorKind::chi2: return "chi2";
        case SelectorKind::f_statistic: return "f_statistic";
        case SelectorKind::mutual_information: return "mutual_information";
        case SelectorKind::forward_selection: return "forward_selection";
        case SelectorKind::rfe: return "rfe";
        case SelectorKind::rfecv: return "rfecv";
        case SelectorKind::embedded_rf: return "embedded_rf";
        case SelectorKind::rf_selector: return "rf_selector";
        case SelectorKind::tree_splits: return "tree_splits";
    }
    return "chi2";
}

std::optional<SelectorKind> parse_selector(std::string_view name) {
    for (auto kind : {SelectorKind::chi2, SelectorKind::f_statistic,
                      SelectorKind::mutual_information, SelectorKind::forward_selection,
                      SelectorKind::rfe, SelectorKind::rfecv, SelectorKind::embedded_rf,
                      SelectorKind::rf_selector, SelectorKind::tree_splits})
        if (to_string(kind) == name) return kind;
    if (name == "f") return SelectorKind::f_statistic;
    if (name == "mi") return SelectorKind::mutual_information;
    if (name == "ffs") return SelectorKind::forward_selection;
    return std::nullopt;
}

bool score_based(SelectorKind kind) {
    return kind == SelectorKind::chi2 || kind == SelectorKind::f_statistic ||
           kind == SelectorKind::mutual_information;
}

ScoreResult score_chi2(const Matrix& x, std::span<const int> y) {
    check_xy(x, y);
    const std::size_t p = x.cols();
    const std::size_t c = n_classes(y);
    const auto n = static_cast<double>(x.rows());

    std::vector<double> class_prob(c, 0.0);
    for (int label : y) class_prob[static_cast<std::size_t>(label)] += 1.0 / n;

    ScoreResult out;
    out.scores.assign(p, 0.0);
    std::vector<double> observed(c);
    for (std::size_t f = 0; f < p; ++f) {
        std::fill(observed.begin(), observed.end(), 0.0);
        double total = 0.0;
        for (std::size_t r = 0; r < x.rows(); ++r) {
            const double v = x(r, f);
            if (v < 0.0)
                throw ArgumentError("chi2 needs non-negative features; feature " +
                                    std::to_string(f) + " has " + format_number(v) + " at row " +
                                    std::to_string(r));
            observed[static_cast<std::size_t>(y[r])] += v;
            total += v;
        }
        double chi2 = 0.0;
        for (std::size_t k = 0; k < c; ++k) {
            const double expected = class_prob[k] * total;
            if (expected > 0.0) chi2 += (observed[k] - expected) * (observed[k] - expected) / expected;
        }
        out.scores[f] = chi2;
    }
    return out;
}

ScoreResult score_f_statistic(const Matrix& x, std::span<const int> y) {
    check_xy(x, y);
    const std::size_t p = x.cols();
    const std::size_t c = n_classes(y);
    std::vector<std::size_t> sizes(c, 0);
    for (int label : y) ++sizes[static_cast<std::size_t>(label)];
    const std::size_t present =
        static_cast<std::size_t>(std::count_if(sizes.begin(), sizes.end(), [](auto s) { return s > 0; }));
    if (present < 2) throw ArgumentError("F statistic needs at least two classes");
    const auto n = static_cast<double>(x.rows());
    const double df_between = static_cast<double>(present - 1);
    const double df_within = n - static_cast<double>(present);

    ScoreResult out;
    out.scores.assign(p, 0.0);
    std::vector<double> sums(c);
    for (std::size_t f = 0; f < p; ++f) {
        std::fill(sums.begin(), sums.end(), 0.0);
        double grand = 0.0;
        for (std::size_t r = 0; r < x.rows(); ++r) {
            sums[static_cast<std::size_t>(y[r])] += x(r, f);
            grand += x(r, f);
        }
        grand /= n;
        double between = 0.0;
        for (std::size_t k = 0; k < c; ++k) {
            if (sizes[k] == 0) continue;
            const double mean = sums[k] / static_cast<double>(sizes[k]);
            between += static_cast<double>(sizes[k]) * (mean - grand) * (mean - grand);
        }
        double within = 0.0;
        for (std::size_t r = 0; r < x.rows(); ++r) {
            const auto k = static_cast<std::size_t>(y[r]);
            const double d = x(r, f) - sums[k] / static_cast<double>(sizes[k]);
            within += d * d;
        }
        // Differences below rounding noise of the data scale count as zero.
        double scale = 0.0;
        for (std::size_t r = 0; r < x.rows(); ++r) scale = std::max(scale, std::abs(x(r, f)));
        const double eps = 1e-12 * (scale * scale + 1e-300) * n;
        if (between <= eps) between = 0.0;
        if (within <= eps || df_within <= 0.0) {
            out.flagged.push_back(f);
            out.scores[f] = between > 0.0 ? std::numeric_limits<double>::max() : 0.0;
            continue;
        }
        out.scores[f] = (between / df_between) / (within / df_within);
    }
    return out;
}

ScoreResult score_mutual_information(const Matrix& x, std::span<const int> y) {
    check_xy(x, y);
    const std::size_t p = x.cols();
    const std::size_t c = n_classes(y);
    const std::size_t n = x.rows();
    const auto dn = static_cast<double>(n);

    std::vector<double> class_p(c, 0.0);
    for (int label : y) class_p[static_cast<std::size_t>(label)] += 1.0;
    for (auto& v : class_p) v /= dn;

    ScoreResult out;
    out.scores.assign(p, 0.0);
    std::vector<std::size_t> codes(n);
    for (std::size_t f = 0; f < p; ++f) {
        std::map<double, std::size_t> distinct;
        for (std::size_t r = 0; r < n && distinct.size() <= kMiBins; ++r) distinct.emplace(x(r, f), 0);
        if (distinct.size() <= kMiBins) {
            std::size_t next = 0;
            for (auto& [value, code] : distinct) code = next++;
            for (std::size_t r = 0; r < n; ++r) codes[r] = distinct.at(x(r, f));
        } else {
            double lo = x(0, f), hi = x(0, f);
            for (std::size_t r = 1; r < n; ++r) {
                lo = std::min(lo, x(r, f));
                hi = std::max(hi, x(r, f));
            }
            const double width = (hi - lo) / static_cast<double>(kMiBins);
            for (std::size_t r = 0; r < n; ++r) {
                auto b = static_cast<std::size_t>((x(r, f) - lo) / width);
                codes[r] = std::min(b, kMiBins - 1);
            }
        }
        const std::size_t levels = *std::max_element(codes.begin(), codes.end()) + 1;
        std::vector<double> joint(levels * c, 0.0);
        std::vector<double> marginal(levels, 0.0);
        for (std::size_t r = 0; r < n; ++r) {
            joint[codes[r] * c + static_cast<std::size_t>(y[r])] += 1.0;
            marginal[codes[r]] += 1.0;
        }
        double mi = 0.0;
        for (std::size_t v = 0; v < levels; ++v)
            for (std::size_t k = 0; k < c; ++k) {
                const double pxy = joint[v * c + k] / dn;
                if (pxy > 0.0) mi += pxy * std::log(pxy / ((marginal[v] / dn) * class_p[k]));
            }
        out.scores[f] = std::max(0.0, mi);
    }
    return out;
}

SelectionReport select_top_k(std::span<const double> scores, std::size_t k, SelectorKind kind) {
    if (k > scores.size())
        throw ArgumentError("top-k of " + std::to_string(k) + " exceeds " +
                            std::to_string(scores.size()) + " features");
    SelectionReport report;
    report.selector = kind;
    auto ranked = rank_desc(scores);
    ranked.resize(k);
    report.selected = std::move(ranked);
    report.scores = std::vector<double>(scores.begin(), scores.end());
    return report;
}

SelectionReport run_filter(SelectorKind kind, const Matrix& x, std::span<const int> y,
                           std::size_t k) {
    const Stopwatch clock;
    ScoreResult scored;
    switch (kind) {
        case SelectorKind::chi2: scored = score_chi2(x, y); break;
        case SelectorKind::f_statistic: scored = score_f_statistic(x, y); break;
        case SelectorKind::mutual_information: scored = score_mutual_information(x, y); break;
        default: throw ArgumentError(std::string(to_string(kind)) + " is not a filter selector");
    }
    auto report = select_top_k(scored.scores, std::min(k, x.cols()), kind);
    report.flagged = !scored.flagged.empty();
    report.wall_time = clock.seconds();
    return report;
}

double cross_validated_ccr(const Matrix& x, std::span<const int> y,
                           std::span<const std::vector<std::size_t>> folds,
                           const ForestConfig& cfg) {
    double total = 0.0;
    for (const auto& test : folds) {
        const auto train = complement(test, x.rows());
        const auto model =
            train_forest(take_rows(x, train), take(y, std::span<const std::size_t>(train)), cfg);
        total += ccr(predict(model, take_rows(x, test)), take(y, std::span<const std::size_t>(test)));
    }
    return total / static_cast<double>(folds.size());
}

std::vector<std::size_t> elimination_counts(std::size_t width, std::size_t floor,
                                            std::size_t step) {
    if (step == 0) throw ArgumentError("elimination step must be >= 1");
    std::vector<std::size_t> counts{width};
    while (counts.back() > floor) counts.push_back(counts.back() - std::min(step, counts.back() - floor));
    return counts;
}

SelectionReport rfe(const Matrix& x, std::span<const int> y, std::size_t target_k,
                    std::size_t step, const ForestConfig& cfg) {
    check_xy(x, y);
    if (target_k < 1 || target_k > x.cols())
        throw ArgumentError("rfe target_k must lie in [1, " + std::to_string(x.cols()) + "]");
    const Stopwatch clock;
    std::vector<std::size_t> surviving(x.cols());
    std::iota(surviving.begin(), surviving.end(), 0);
    std::vector<double> imp = importances_on(x, y, surviving, cfg);
    for (const auto keep : elimination_counts(x.cols(), target_k, step)) {
        if (keep == surviving.size()) continue;
        surviving = eliminate(surviving, imp, keep);
        imp = importances_on(x, y, surviving, cfg);
    }
    std::vector<double> scores(x.cols(), 0.0);
    for (std::size_t i = 0; i < surviving.size(); ++i) scores[surviving[i]] = imp[i];
    auto report = importance_report(SelectorKind::rfe, std::move(scores), surviving);
    report.wall_time = clock.seconds();
    return report;
}

SelectionReport rfecv(const Matrix& x, std::span<const int> y, std::size_t k_folds,
                      std::size_t step, const ForestConfig& cfg) {
    check_xy(x, y);
    if (k_folds < 2) throw ArgumentError("rfecv needs k_folds >= 2");
    const Stopwatch clock;
    const auto folds = folds_for(y, k_folds, cfg);
    const auto counts = elimination_counts(x.cols(), 1, step);
    std::map<std::size_t, double> ccr_sum;

    for (const auto& test : folds) {
        const auto train = complement(test, x.rows());
        const Matrix x_train = take_rows(x, train);
        const Matrix x_test = take_rows(x, test);
        const auto y_train = take(y, std::span<const std::size_t>(train));
        const auto y_test = take(y, std::span<const std::size_t>(test));
        std::vector<std::size_t> surviving(x.cols());
        std::iota(surviving.begin(), surviving.end(), 0);
        for (const auto keep : counts) {
            if (keep != surviving.size()) {
                const auto imp = importances_on(x_train, y_train, surviving, cfg);
                surviving = eliminate(surviving, imp, keep);
            }
            const auto model = train_forest(take_columns(x_train, surviving), y_train, cfg);
            ccr_sum[keep] += ccr(predict(model, take_columns(x_test, surviving)), y_test);
        }
    }

    std::vector<CurvePoint> curve;
    std::size_t best_k = 0;
    double best = -1.0;
    for (const auto& [k, total] : ccr_sum) {  // ascending k, strict > keeps the smaller count
        const double mean = total / static_cast<double>(folds.size());
        curve.push_back({k, mean});
        if (mean > best) {
            best = mean;
            best_k = k;
        }
    }

    auto report = rfe(x, y, best_k, step, cfg);
    report.selector = SelectorKind::rfecv;
    report.achieved_ccr = best;
    report.cv_curve = std::move(curve);
    report.wall_time = clock.seconds();
    return report;
}

SelectionReport forward_selection(const Matrix& x, std::span<const int> y, std::size_t target_k,
                                  const ForestConfig& cfg, std::size_t k_folds) {
    check_xy(x, y);
    if (target_k > x.cols())
        throw ArgumentError("forward selection target_k exceeds feature count");
    const Stopwatch clock;
    const auto folds = folds_for(y, k_folds, cfg);
    SelectionReport report;
    report.selector = SelectorKind::forward_selection;
    std::vector<double> gained(x.cols(), 0.0);
    std::vector<bool> used(x.cols(), false);
    double current = 0.0;
    while (report.selected.size() < target_k) {
        std::size_t best_f = x.cols();
        double best = -1.0;
        for (std::size_t f = 0; f < x.cols(); ++f) {
            if (used[f]) continue;
            auto candidate = report.selected;
            candidate.push_back(f);
            const double score =
                cross_validated_ccr(take_columns(x, sorted(candidate)), y, folds, cfg);
            if (score > best) {
                best = score;
                best_f = f;
            }
        }
        used[best_f] = true;
        report.selected.push_back(best_f);
        gained[best_f] = best;
        current = best;
    }
    report.scores = std::move(gained);  // CV CCR after each feature was added
    if (target_k > 0) report.achieved_ccr = current;
    report.wall_time = clock.seconds();
    return report;
}

SelectionReport embedded_rf_select(const Matrix& x, std::span<const int> y,
                                   const ForestConfig& cfg) {
    check_xy(x, y);
    const Stopwatch clock;
    auto imp = importances(train_forest(x, y, cfg));
    const double mean = std::accumulate(imp.begin(), imp.end(), 0.0) / static_cast<double>(imp.size());
    std::vector<std::size_t> selected;
    for (std::size_t f = 0; f < imp.size(); ++f)
        if (imp[f] > mean) selected.push_back(f);
    auto report = importance_report(SelectorKind::embedded_rf, std::move(imp), std::move(selected));
    report.flagged = report.selected.empty();
    report.wall_time = clock.seconds();
    return report;
}

SelectionReport rf_as_selector(const Matrix& x, std::span<const int> y, const ForestConfig& cfg) {
    check_xy(x, y);
    const Stopwatch clock;
    auto imp = importances(train_forest(x, y, cfg));
    std::vector<std::size_t> selected;
    for (std::size_t f = 0; f < x.cols(); ++f)
        if (imp[f] > 0.0) selected.push_back(f);
    auto report = importance_report(SelectorKind::rf_selector, std::move(imp), std::move(selected));
    report.wall_time = clock.seconds();
    return report;
}

SelectionReport tree_split_selector(const Matrix& x, std::span<const int> y,
                                    std::size_t max_levels) {
    check_xy(x, y);
    const Stopwatch clock;
    ForestConfig cfg;
    const auto tree = train_tree(x, y, cfg, false);
    std::map<std::size_t, std::size_t> depth_of;  // feature -> shallowest split depth
    for (const auto& node : tree.nodes()) {
        if (node.leaf() || node.depth >= max_levels) continue;
        const auto f = static_cast<std::size_t>(node.feature);
        const auto it = depth_of.find(f);
        if (it == depth_of.end() || node.depth < it->second) depth_of[f] = node.depth;
    }
    std::vector<std::pair<std::size_t, std::size_t>> order;
    for (const auto& [f, d] : depth_of) order.emplace_back(d, f);
    std::sort(order.begin(), order.end());
    SelectionReport report;
    report.selector = SelectorKind::tree_splits;
    for (const auto& [d, f] : order) report.selected.push_back(f);
    report.scores = tree.importances();
    report.wall_time = clock.seconds();
    return report;
}

CcrCurve ccr_curve(const Matrix& x_train, std::span<const int> y_train, const Matrix& x_test,
                   std::span<const int> y_test, std::span<const double> scores, std::size_t k_max,
                   const ForestConfig& cfg) {
    if (scores.size() != x_train.cols() || x_test.cols() != x_train.cols())
        throw ArgumentError("score vector and matrices disagree on feature count");
    if (k_max < 1 || k_max > x_train.cols())
        throw ArgumentError("k_max must lie in [1, " + std::to_string(x_train.cols()) + "]");
    const auto ranked = rank_desc(scores);
    CcrCurve curve;
    for (std::size_t k = 1; k <= k_max; ++k) {
        const auto columns = sorted({ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(k)});
        const auto model = train_forest(take_columns(x_train, columns), y_train, cfg);
        const double value = ccr(predict(model, take_columns(x_test, columns)), y_test);
        curve.points.push_back({k, value});
        if (value > curve.best_ccr || curve.best_k == 0) {
            curve.best_ccr = value;
            curve.best_k = k;
        }
    }
    return curve;
}

std::size_t VoteHistogram::votes(std::string_view name) const {
    for (const auto& [n, v] : counts)
        if (n == name) return v;
    return 0;
}

VoteHistogram vote_top_features(std::span<const SelectionReport> reports, std::size_t top_k,
                                std::span<const std::string> feature_sources) {
    std::map<std::string, std::size_t> tally;
    for (const auto& report : reports) {
        std::set<std::string> columns;
        const std::size_t n = std::min(top_k, report.selected.size());
        for (std::size_t i = 0; i < n; ++i) columns.insert(feature_sources[report.selected[i]]);
        for (const auto& c : columns) ++tally[c];
    }
    VoteHistogram out;
    out.counts.assign(tally.begin(), tally.end());
    std::stable_sort(out.counts.begin(), out.counts.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    return out;
}

void write_selection_csv(std::ostream& out, const SelectionReport& report,
                         std::span<const std::string> feature_names) {
    out << "rank,feature,score\n";
    for (std::size_t i = 0; i < report.selected.size(); ++i) {
        const auto f = report.selected[i];
        out << i + 1 << ',' << csv_escape(feature_names[f]) << ',';
        if (report.scores) out << format_number((*report.scores)[f]);
        out << '\n';
    }
}

void write_curve_csv(std::ostream& out, std::span<const CurvePoint> points) {
    out << "k,ccr\n";
    for (const auto& p : points) out << p.k << ',' << format_number(p.ccr) << '\n';
}

void write_histogram_csv(std::ostream& out, const VoteHistogram& histogram) {
    out << "feature,votes\n";
    for (const auto& [name, votes] : histogram.counts) out << csv_escape(name) << ',' << votes << '\n';
}

}  // namespace dmkit
