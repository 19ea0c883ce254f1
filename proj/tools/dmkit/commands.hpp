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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace dmkit::cli {

struct CommonOptions {
    std::filesystem::path data;
    std::filesystem::path schema;
    std::filesystem::path out_dir = ".";
    std::string target;  ///< empty selects the last column
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

struct EncodeOptions {
    double max_missing = 1.0;
    double test_fraction = 0.3;
};

struct MineOptions {
    double min_support = 0.1;
    std::size_t max_len = 2;
    std::string algorithm = "fpgrowth";
    double min_confidence = 0.9;
    double min_lift = 0.0;
    double max_antecedent_support = 1.0;
    double max_consequent_support = 1.0;
    bool trivial_filter = false;
    std::filesystem::path triviality_map;
    std::size_t bins = 5;
};

struct SelectOptions {
    std::vector<std::string> selectors{"chi2",  "f_statistic", "mutual_information",
                                       "rfe",   "rfecv",       "forward_selection",
                                       "embedded_rf", "rf_selector"};
    std::size_t top_k = 6;
    double test_fraction = 0.3;
    double max_missing = 1.0;
    std::size_t trees = 100;
    std::size_t search_trees = 25;
    std::size_t rfe_step = 1;
    std::size_t folds = 5;
    std::size_t curve_max = 100;
    std::size_t tree_levels = 3;
};

struct EvolveOptions {
    std::string target_class;  ///< empty selects the target column's first category
    std::filesystem::path grammar;
    std::size_t population = 500;
    std::size_t generations = 50;
    double crossover = 0.75;
    double mutation = 0.05;
    std::size_t tournament = 2;
    std::size_t elitism = 1;
    std::size_t codon_length = 64;
    std::size_t max_wraps = 2;
    std::size_t bins = 5;
};

void cmd_encode(const CommonOptions& common, const EncodeOptions& opts);
void cmd_mine(const CommonOptions& common, const MineOptions& opts);
void cmd_select(const CommonOptions& common, const SelectOptions& opts);
void cmd_evolve(const CommonOptions& common, const EvolveOptions& opts);

}  // namespace dmkit::cli
