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

#include <gtest/gtest.h>

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>

#include <dmkit/errors.hpp>
#include <dmkit/selection.hpp>
#include <dmkit/split.hpp>
#include <dmkit/synthetic.hpp>

#include "generators.hpp"
#include "oracles.hpp"

using namespace dmkit;

namespace {

std::vector<double> column_of(const Matrix& m, std::size_t c) {
    std::vector<double> out(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) out[r] = m(r, c);
    return out;
}

struct Small {
    Matrix x;
    std::vector<int> y;
};

// Three classes, four features of differing relevance.
Small small_random(std::uint64_t seed) {
    gen::Source src(seed);
    Small s{Matrix(60, 4), std::vector<int>(60)};
    for (std::size_t r = 0; r < 60; ++r) {
        s.y[r] = static_cast<int>(r % 3);
        s.x(r, 0) = static_cast<double>(src.below(5));               // noise, 5 levels
        s.x(r, 1) = static_cast<double>(s.y[r]) + src.unit();         // strong, continuous
        s.x(r, 2) = static_cast<double>(src.below(2) + (s.y[r] == 2 ? 1 : 0));  // weak, 3 levels
        s.x(r, 3) = 10.0 * src.unit();                               // noise, continuous
    }
    return s;
}

ForestConfig small_forest(std::uint64_t seed = 3) {
    ForestConfig cfg;
    cfg.n_trees = 15;
    cfg.seed = seed;
    return cfg;
}

std::vector<double> equal_width_codes(const std::vector<double>& v, std::size_t bins) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    std::vector<double> out;
    for (double x : v) {
        const double b = std::floor((x - *lo) / ((*hi - *lo) / static_cast<double>(bins)));
        out.push_back(std::min(b, static_cast<double>(bins - 1)));
    }
    return out;
}

}  // namespace

TEST(Chi2, MatchesOracle) {
    const auto s = small_random(1);
    const auto got = score_chi2(s.x, s.y);
    ASSERT_EQ(got.scores.size(), 4u);
    for (std::size_t f = 0; f < 4; ++f)
        EXPECT_NEAR(got.scores[f], oracle::chi2(column_of(s.x, f), s.y), 1e-9 * (1 + got.scores[f]));
    EXPECT_TRUE(got.flagged.empty());
}

TEST(Chi2, HandComputedTwoByTwo) {
    // Class 0 sums to 3 of a total 4 over 2 rows each: expected 2, chi2 = 1/2 + 1/2.
    Matrix x(4, 1);
    x(0, 0) = 1;
    x(1, 0) = 2;
    x(2, 0) = 1;
    x(3, 0) = 0;
    const std::vector<int> y{0, 0, 1, 1};
    EXPECT_DOUBLE_EQ(score_chi2(x, y).scores[0], 1.0);
}

TEST(Chi2, ZeroColumnScoresZeroAndNegativeRejected) {
    Matrix x(4, 1);
    const std::vector<int> y{0, 1, 0, 1};
    EXPECT_EQ(score_chi2(x, y).scores[0], 0.0);
    x(2, 0) = -1;
    EXPECT_THROW(score_chi2(x, y), ArgumentError);
}

TEST(FStatistic, MatchesOracle) {
    const auto s = small_random(2);
    const auto got = score_f_statistic(s.x, s.y);
    for (std::size_t f = 0; f < 4; ++f)
        EXPECT_NEAR(got.scores[f], oracle::anova_f(column_of(s.x, f), s.y), 1e-9 * (1 + got.scores[f]));
    EXPECT_GT(got.scores[1], got.scores[0]);
    EXPECT_GT(got.scores[1], got.scores[3]);
}

TEST(FStatistic, DegenerateCasesFlagged) {
    Matrix x(4, 3);
    const std::vector<int> y{0, 0, 1, 1};
    for (std::size_t r = 0; r < 4; ++r) {
        x(r, 0) = 5.0;                          // constant: 0/0
        x(r, 1) = static_cast<double>(y[r]);    // zero within-class variance, distinct means
        x(r, 2) = static_cast<double>(r);       // ordinary
    }
    const auto got = score_f_statistic(x, y);
    EXPECT_EQ(got.scores[0], 0.0);
    EXPECT_EQ(got.scores[1], std::numeric_limits<double>::max());
    EXPECT_EQ(got.flagged, (std::vector<std::size_t>{0, 1}));
    EXPECT_NEAR(got.scores[2], oracle::anova_f(column_of(x, 2), y), 1e-12);
    EXPECT_THROW(score_f_statistic(x, std::vector<int>{1, 1, 1, 1}), ArgumentError);
}

TEST(MutualInformation, DiscreteFeaturesMatchOracle) {
    const auto s = small_random(3);
    const auto got = score_mutual_information(s.x, s.y);
    for (std::size_t f : {0u, 2u})
        EXPECT_NEAR(got.scores[f], oracle::mutual_information(column_of(s.x, f), s.y), 1e-12);
}

TEST(MutualInformation, ContinuousFeaturesUseSixteenEqualBins) {
    const auto s = small_random(4);
    const auto got = score_mutual_information(s.x, s.y);
    for (std::size_t f : {1u, 3u}) {
        const auto codes = equal_width_codes(column_of(s.x, f), 16);
        EXPECT_NEAR(got.scores[f], oracle::mutual_information(codes, s.y), 1e-12);
    }
}

TEST(MutualInformation, PerfectAndIndependentFeatures) {
    Matrix x(8, 2);
    std::vector<int> y(8);
    for (std::size_t r = 0; r < 8; ++r) {
        y[r] = static_cast<int>(r % 2);
        x(r, 0) = static_cast<double>(y[r]);
        x(r, 1) = static_cast<double>(r / 4);  // balanced against y
    }
    const auto got = score_mutual_information(x, y);
    EXPECT_NEAR(got.scores[0], std::log(2.0), 1e-12);
    EXPECT_NEAR(got.scores[1], 0.0, 1e-12);
}

TEST(SelectTopK, TiesGoToLowerId) {
    const std::vector<double> scores{1.0, 3.0, 3.0, 0.5, 3.0};
    const auto r = select_top_k(scores, 2);
    EXPECT_EQ(r.selected, (std::vector<std::size_t>{1, 2}));
    EXPECT_EQ(select_top_k(scores, 0).selected.size(), 0u);
    EXPECT_EQ(select_top_k(scores, 5).selected, (std::vector<std::size_t>{1, 2, 4, 0, 3}));
    EXPECT_THROW(select_top_k(scores, 6), ArgumentError);
}

TEST(RunFilter, ClampsToWidthAndRejectsWrappers) {
    const auto s = small_random(5);
    const auto r = run_filter(SelectorKind::f_statistic, s.x, s.y, 10);
    EXPECT_EQ(r.selected.size(), 4u);
    EXPECT_EQ(r.selected.front(), 1u);
    EXPECT_GE(r.wall_time, 0.0);
    EXPECT_THROW(run_filter(SelectorKind::rfe, s.x, s.y, 2), ArgumentError);
}

TEST(EliminationCounts, ClampsLastRound) {
    EXPECT_EQ(elimination_counts(10, 4, 3), (std::vector<std::size_t>{10, 7, 4}));
    EXPECT_EQ(elimination_counts(10, 5, 3), (std::vector<std::size_t>{10, 7, 5}));
    EXPECT_EQ(elimination_counts(3, 3, 1), (std::vector<std::size_t>{3}));
    EXPECT_THROW(elimination_counts(3, 1, 0), ArgumentError);
}

TEST(Rfe, KeepsTheInformativeFeatures) {
    const auto data = make_separable(200, 6, 21);
    const auto r = rfe(data.x, data.y, 2, 1, small_forest());
    EXPECT_EQ(std::set<std::size_t>(r.selected.begin(), r.selected.end()),
              (std::set<std::size_t>{0, 1}));
    EXPECT_THROW(rfe(data.x, data.y, 0, 1, small_forest()), ArgumentError);
    EXPECT_THROW(rfe(data.x, data.y, 7, 1, small_forest()), ArgumentError);
}

TEST(Rfe, FullWidthKeepsEverything) {
    const auto data = make_separable(60, 3, 2);
    EXPECT_EQ(rfe(data.x, data.y, 3, 1, small_forest()).selected.size(), 3u);
}

TEST(Rfecv, ReportsCurveAndBestCount) {
    const auto data = make_separable(150, 5, 22);
    const auto r = rfecv(data.x, data.y, 3, 1, small_forest());
    ASSERT_EQ(r.cv_curve.size(), 5u);
    for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(r.cv_curve[i].k, i + 1);
    ASSERT_TRUE(r.achieved_ccr);
    double best = 0;
    std::size_t best_k = 0;
    for (const auto& p : r.cv_curve)
        if (p.ccr > best) {
            best = p.ccr;
            best_k = p.k;
        }
    EXPECT_EQ(r.selected.size(), best_k);
    EXPECT_EQ(*r.achieved_ccr, best);
    EXPECT_THROW(rfecv(data.x, data.y, 1, 1, small_forest()), ArgumentError);
}

TEST(ForwardSelection, PicksPerfectFeatureFirst) {
    gen::Source src(8);
    Matrix x(60, 4);
    std::vector<int> y(60);
    for (std::size_t r = 0; r < 60; ++r) {
        y[r] = static_cast<int>(r % 2);
        x(r, 0) = src.unit();
        x(r, 1) = src.unit();
        x(r, 2) = static_cast<double>(y[r]);
        x(r, 3) = src.unit();
    }
    const auto r = forward_selection(x, y, 2, small_forest(), 3);
    ASSERT_EQ(r.selected.size(), 2u);
    EXPECT_EQ(r.selected[0], 2u);
    EXPECT_EQ(*r.achieved_ccr, 1.0);
}

TEST(ForwardSelection, DuplicateColumnIsNotChosenTwice) {
    Matrix x(40, 3);
    std::vector<int> y(40);
    for (std::size_t r = 0; r < 40; ++r) {
        y[r] = static_cast<int>(r % 2);
        x(r, 0) = static_cast<double>(y[r]);
        x(r, 1) = static_cast<double>(y[r]);
        x(r, 2) = static_cast<double>(r % 7);
    }
    const auto r = forward_selection(x, y, 3, small_forest(), 2);
    EXPECT_EQ(std::set<std::size_t>(r.selected.begin(), r.selected.end()).size(), 3u);
    EXPECT_EQ(r.selected[0], 0u);  // ties resolved toward the lower id
    EXPECT_THROW(forward_selection(x, y, 4, small_forest(), 2), ArgumentError);
}

TEST(EmbeddedSelectors, AboveMeanAndNonZeroImportance) {
    const auto data = make_separable(200, 6, 23);
    const auto embedded = embedded_rf_select(data.x, data.y, small_forest());
    ASSERT_TRUE(embedded.scores);
    const auto& imp = *embedded.scores;
    double mean = 0.0;
    for (double v : imp) mean += v / 6.0;
    for (std::size_t f = 0; f < 6; ++f) {
        const bool chosen = std::find(embedded.selected.begin(), embedded.selected.end(), f) !=
                            embedded.selected.end();
        EXPECT_EQ(chosen, imp[f] > mean + 1e-12) << f;
    }
    EXPECT_TRUE(std::is_sorted(embedded.selected.begin(), embedded.selected.end(),
                               [&](auto a, auto b) { return imp[a] > imp[b]; }));
    const auto used = rf_as_selector(data.x, data.y, small_forest());
    for (auto f : embedded.selected)
        EXPECT_NE(std::find(used.selected.begin(), used.selected.end(), f), used.selected.end());
}

TEST(EmbeddedSelectors, ConstantColumnNeverUsed) {
    auto data = make_separable(100, 4, 24);
    for (std::size_t r = 0; r < data.x.rows(); ++r) data.x(r, 3) = 1.0;
    const auto used = rf_as_selector(data.x, data.y, small_forest());
    EXPECT_EQ(std::find(used.selected.begin(), used.selected.end(), 3u), used.selected.end());
}

TEST(TreeSplits, XorUsesBothColumnsWithinTwoLevels) {
    Matrix x(4, 3);
    const double v[4][3] = {{0, 0, 5}, {0, 1, 5}, {1, 0, 5}, {1, 1, 5}};
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 3; ++c) x(r, c) = v[r][c];
    const std::vector<int> y{0, 1, 1, 0};
    const auto two = tree_split_selector(x, y, 2);
    EXPECT_EQ(std::set<std::size_t>(two.selected.begin(), two.selected.end()),
              (std::set<std::size_t>{0, 1}));
    EXPECT_EQ(tree_split_selector(x, y, 1).selected.size(), 1u);
    EXPECT_TRUE(tree_split_selector(x, y, 0).selected.empty());
}

TEST(CcrCurve, SinglePointAndArgmax) {
    const auto data = make_separable(200, 4, 25);
    const auto split = stratified_split(data.y, 0.3, 4);
    const auto xtr = take_rows(data.x, split.train);
    const auto xte = take_rows(data.x, split.test);
    const auto ytr = take<int>(data.y, split.train);
    const auto yte = take<int>(data.y, split.test);
    const std::vector<double> scores{0.9, 0.8, 0.1, 0.0};
    const auto one = ccr_curve(xtr, ytr, xte, yte, scores, 1, small_forest());
    ASSERT_EQ(one.points.size(), 1u);
    EXPECT_EQ(one.best_k, 1u);
    const auto all = ccr_curve(xtr, ytr, xte, yte, scores, 4, small_forest());
    ASSERT_EQ(all.points.size(), 4u);
    EXPECT_EQ(all.points[0].ccr, one.points[0].ccr);
    for (const auto& p : all.points) EXPECT_LE(p.ccr, all.best_ccr);
    for (const auto& p : all.points) {
        if (p.k < all.best_k) {
            EXPECT_LT(p.ccr, all.best_ccr);
        }
    }
    EXPECT_THROW(ccr_curve(xtr, ytr, xte, yte, scores, 5, small_forest()), ArgumentError);
    EXPECT_THROW(ccr_curve(xtr, ytr, xte, yte, std::vector<double>{1.0}, 1, small_forest()),
                 ArgumentError);
}

TEST(VoteTopFeatures, CollapsesFeaturesToColumns) {
    const std::vector<std::string> sources{"colour", "colour", "colour", "age", "sex"};
    SelectionReport a, b, c;
    a.selected = {0, 1, 3};  // colour twice counts once
    b.selected = {3, 4};
    c.selected = {2, 4, 3};
    const std::vector<SelectionReport> reports{a, b, c};
    const auto h = vote_top_features(reports, 2, sources);
    EXPECT_EQ(h.votes("colour"), 2u);
    EXPECT_EQ(h.votes("age"), 1u);
    EXPECT_EQ(h.votes("sex"), 2u);
    EXPECT_EQ(h.votes("missing"), 0u);
    ASSERT_EQ(h.counts.size(), 3u);
    EXPECT_EQ(h.counts[0].first, "colour");  // ties by name
    EXPECT_EQ(h.counts[1].first, "sex");
}

TEST(SelectorNames, RoundTrip) {
    for (auto kind : {SelectorKind::chi2, SelectorKind::f_statistic, SelectorKind::mutual_information,
                      SelectorKind::forward_selection, SelectorKind::rfe, SelectorKind::rfecv,
                      SelectorKind::embedded_rf, SelectorKind::rf_selector, SelectorKind::tree_splits})
        EXPECT_EQ(parse_selector(to_string(kind)), kind);
    EXPECT_EQ(parse_selector("mi"), SelectorKind::mutual_information);
    EXPECT_FALSE(parse_selector("lasso"));
    EXPECT_TRUE(score_based(SelectorKind::chi2));
    EXPECT_FALSE(score_based(SelectorKind::rfe));
}

TEST(SelectionCsv, Layout) {
    SelectionReport r;
    r.selected = {1, 0};
    r.scores = std::vector<double>{0.25, 0.75};
    const std::vector<std::string> names{"a", "b"};
    std::ostringstream out;
    write_selection_csv(out, r, names);
    EXPECT_EQ(out.str(), "rank,feature,score\n1,b,0.75\n2,a,0.25\n");
    std::ostringstream curve;
    const std::vector<CurvePoint> points{{1, 0.5}};
    write_curve_csv(curve, points);
    EXPECT_EQ(curve.str(), "k,ccr\n1,0.5\n");
}
