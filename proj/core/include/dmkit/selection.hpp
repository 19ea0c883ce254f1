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
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dmkit/encoding.hpp"
#include "dmkit/forest.hpp"

namespace dmkit {

enum class SelectorKind {
    chi2,
    f_statistic,
    mutual_information,
    forward_selection,
    rfe,
    rfecv,
    embedded_rf,
    rf_selector,
    tree_splits,
};

std::string_view to_string(SelectorKind kind);
std::optional<SelectorKind> parse_selector(std::string_view name);
/// chi2, f_statistic, mutual_information.
bool score_based(SelectorKind kind);

struct ScoreResult {
    std::vector<double> scores;
    /// Features whose score hit a degenerate case (0/0 or an infinite ratio).
    std::vector<std::size_t> flagged;
};

struct CurvePoint {
    std::size_t k;
    double ccr;
};

struct SelectionReport {
    SelectorKind selector = SelectorKind::chi2;
    /// Unique feature ids, most relevant first.
    std::vector<std::size_t> selected;
    std::optional<std::vector<double>> scores;
    double wall_time = 0.0;  ///< seconds
    std::optional<double> achieved_ccr;
    bool flagged = false;
    /// Cross-validated CCR per surviving-feature count (rfecv only), ascending k.
    std::vector<CurvePoint> cv_curve;
};

/// Chi-square statistic of per-class feature sums against their expectation under
/// class independence. Requires non-negative features (ArgumentError otherwise).
ScoreResult score_chi2(const Matrix& x, std::span<const int> y);

/// One-way ANOVA F. Zero within-class variance scores the largest finite double when
/// the class means differ and 0 when they do not; both cases are flagged.
ScoreResult score_f_statistic(const Matrix& x, std::span<const int> y);

/// Plug-in mutual information (nats) between each feature and the class.
/// Features with more than 16 distinct values are first cut into 16 equal-width bins.
ScoreResult score_mutual_information(const Matrix& x, std::span<const int> y);

/// Highest k scores, ties by ascending feature id.
SelectionReport select_top_k(std::span<const double> scores, std::size_t k,
                             SelectorKind kind = SelectorKind::chi2);

/// Scores with the given filter and keeps the top k; wall_time covers both steps.
SelectionReport run_filter(SelectorKind kind, const Matrix& x, std::span<const int> y,
                           std::size_t k);

/// Mean CCR of forests trained on each fold's complement and tested on the fold.
double cross_validated_ccr(const Matrix& x, std::span<const int> y,
                           std::span<const std::vector<std::size_t>> folds,
                           const ForestConfig& cfg);

/// Feature counts visited by elimination from `width` down to `floor`, removing
/// `step` per round with the last round clamped. Descending.
std::vector<std::size_t> elimination_counts(std::size_t width, std::size_t floor,
                                            std::size_t step);

/// Recursive feature elimination by forest importance until target_k remain.
/// Ties in importance drop the higher feature id first.
SelectionReport rfe(const Matrix& x, std::span<const int> y, std::size_t target_k,
                    std::size_t step, const ForestConfig& cfg);

/// RFE whose final count maximizes stratified k-fold mean CCR (ties to fewer features).
/// Folds are seeded with derive_seed(cfg.seed, "folds").
SelectionReport rfecv(const Matrix& x, std::span<const int> y, std::size_t k_folds,
                      std::size_t step, const ForestConfig& cfg);

/// Greedy forward selection scored by stratified k-fold mean CCR.
SelectionReport forward_selection(const Matrix& x, std::span<const int> y,
                                  std::size_t target_k, const ForestConfig& cfg,
                                  std::size_t k_folds = 5);

/// Features whose forest importance exceeds the mean importance.
SelectionReport embedded_rf_select(const Matrix& x, std::span<const int> y,
                                   const ForestConfig& cfg);

/// Features used by at least one split of the forest (importance > 0).
SelectionReport rf_as_selector(const Matrix& x, std::span<const int> y,
                               const ForestConfig& cfg);

/// Distinct split features of one unrestricted tree above depth max_levels,
/// ordered by (depth, feature id).
SelectionReport tree_split_selector(const Matrix& x, std::span<const int> y,
                                    std::size_t max_levels);

struct CcrCurve {
    std::vector<CurvePoint> points;  ///< k = 1..k_max
    std::size_t best_k = 0;          ///< argmax, ties to the smaller k
    double best_ccr = 0.0;
};

/// Test CCR of a forest on the top-k features by score, for k = 1..k_max.
CcrCurve ccr_curve(const Matrix& x_train, std::span<const int> y_train, const Matrix& x_test,
                   std::span<const int> y_test, std::span<const double> scores, std::size_t k_max,
                   const ForestConfig& cfg);

struct VoteHistogram {
    /// (source column, votes), votes descending then name ascending.
    std::vector<std::pair<std::string, std::size_t>> counts;

    std::size_t votes(std::string_view name) const;
};

/// Per source column, the number of reports listing one of its features among their
/// first top_k selected features. feature_sources[f] names the column of feature f.
VoteHistogram vote_top_features(std::span<const SelectionReport> reports, std::size_t top_k,
                                std::span<const std::string> feature_sources);

/// `rank,feature,score`; score is empty when the selector produces none.
void write_selection_csv(std::ostream& out, const SelectionReport& report,
                         std::span<const std::string> feature_names);
void write_curve_csv(std::ostream& out, std::span<const CurvePoint> points);
void write_histogram_csv(std::ostream& out, const VoteHistogram& histogram);

}  // namespace dmkit
