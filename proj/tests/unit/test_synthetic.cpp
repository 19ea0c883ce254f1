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

#include <cmath>

#include <dmkit/errors.hpp>
#include <dmkit/rules.hpp>
#include <dmkit/synthetic.hpp>

using namespace dmkit;

TEST(Separable, MarginAndLabels) {
    const auto d = make_separable(300, 5, 1);
    EXPECT_EQ(d.informative, (std::vector<std::size_t>{0, 1}));
    for (std::size_t r = 0; r < 300; ++r) {
        const double s = d.x(r, 0) + d.x(r, 1);
        EXPECT_GE(std::abs(s - 1.0), 0.1);
        EXPECT_EQ(d.y[r], s > 1.0 ? 1 : 0);
        for (std::size_t c = 0; c < 5; ++c) {
            EXPECT_GE(d.x(r, c), 0.0);
            EXPECT_LT(d.x(r, c), 1.0);
        }
    }
    EXPECT_THROW(make_separable(10, 1, 1), ArgumentError);
}

TEST(Recovery, InformativeColumnsSpreadAndNonNegative) {
    const auto d = make_recovery(400, 50, 6, 2);
    EXPECT_EQ(d.informative, (std::vector<std::size_t>{4, 12, 20, 28, 36, 44}));
    std::size_t ones = 0;
    for (std::size_t r = 0; r < 400; ++r) {
        ones += static_cast<std::size_t>(d.y[r]);
        for (std::size_t c = 0; c < 50; ++c) EXPECT_GE(d.x(r, c), 0.0);
    }
    EXPECT_GT(ones, 140u);
    EXPECT_LT(ones, 260u);
    EXPECT_THROW(make_recovery(10, 5, 6, 1), ArgumentError);
}

TEST(Recovery, NoiseMatchesInformativeMarginal) {
    const auto d = make_recovery(4000, 12, 2, 3);
    auto moments = [&](std::size_t c) {
        double s = 0, sq = 0;
        for (std::size_t r = 0; r < d.x.rows(); ++r) {
            s += d.x(r, c);
            sq += d.x(r, c) * d.x(r, c);
        }
        const double n = static_cast<double>(d.x.rows());
        return std::pair{s / n, sq / n - (s / n) * (s / n)};
    };
    const auto [mi, vi] = moments(d.informative[0]);
    const auto [mn, vn] = moments(0);
    EXPECT_NEAR(mi, mn, 0.1);
    EXPECT_NEAR(vi, vn, 0.12);
    EXPECT_NEAR(vn, 1.09, 0.12);
}

TEST(ToDataset, NumericColumnsAndNominalLabel) {
    const auto d = make_separable(20, 3, 4);
    const auto ds = to_dataset(d);
    ASSERT_EQ(ds.n_columns(), 4u);
    EXPECT_EQ(ds.column(0).name, "f0");
    EXPECT_EQ(ds.column(3).name, "label");
    EXPECT_EQ(ds.target_column(), 3u);
    for (std::size_t r = 0; r < 20; ++r) {
        EXPECT_EQ(*ds.cell(r, 0), d.x(r, 0));
        EXPECT_EQ(*ds.cell(r, 3), static_cast<double>(d.y[r]));
    }
}

TEST(Planted, MarkerEqualsClass) {
    const auto ds = make_planted(500, 3, 5);
    EXPECT_EQ(ds.n_columns(), 5u);
    EXPECT_EQ(ds.column(ds.target_column()).name, "class");
    std::size_t pos = 0;
    for (std::size_t r = 0; r < ds.n_rows(); ++r) {
        EXPECT_EQ(*ds.cell(r, 3), *ds.cell(r, 4));
        pos += *ds.cell(r, 4) == 0.0;
    }
    EXPECT_NEAR(static_cast<double>(pos) / 500.0, 0.4, 0.07);
}

TEST(Survey, ShapeMissingnessAndLinkedColumns) {
    const auto ds = make_survey(600, 7);
    EXPECT_EQ(ds.n_columns(), 13u);
    EXPECT_EQ(ds.column(ds.target_column()).name, "health_state");
    const auto disability = ds.column_index("disability");
    const auto degree = ds.column_index("disability_degree");
    ASSERT_TRUE(disability && degree);
    std::size_t shelter_missing = 0;
    const auto shelter = *ds.column_index("prior_shelter_use");
    for (std::size_t r = 0; r < ds.n_rows(); ++r) {
        const bool disabled = *ds.cell(r, *disability) == 0.0;
        EXPECT_EQ(disabled, *ds.cell(r, *degree) > 0.0);
        shelter_missing += !ds.cell(r, shelter);
    }
    EXPECT_GT(static_cast<double>(shelter_missing) / 600.0, 0.75);
    const auto map = TrivialityMap::parse(survey_triviality_map());
    EXPECT_TRUE(map.linked("disability_degree", "disability"));
}

TEST(Survey, Deterministic) {
    EXPECT_EQ(make_survey(50, 3).rows(), make_survey(50, 3).rows());
    EXPECT_NE(make_survey(50, 3).rows(), make_survey(50, 4).rows());
}
