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
#include <span>
#include <vector>

#include "dmkit/encoding.hpp"

namespace dmkit {

struct ForestConfig {
    std::size_t n_trees = 100;
    std::optional<std::size_t> max_depth;  ///< number of split levels; unlimited when empty
    std::size_t min_samples_leaf = 1;
    std::size_t mtry = 0;  ///< features tried per split; 0 means floor(sqrt(n_features))
    std::uint64_t seed = 0;
    bool bootstrap = true;  ///< false trains every tree on all rows (test hook)
    unsigned threads = 1;

    std::size_t features_per_split(std::size_t n_features) const;
};

/// CART classification tree stored as a flat node array; node 0 is the root.
class DecisionTree {
public:
    struct Node {
        int feature = -1;  ///< -1 for leaves
        double threshold = 0.0;  ///< value <= threshold goes left
        std::size_t left = 0;
        std::size_t right = 0;
        std::size_t depth = 0;
        int label = 0;  ///< majority class, ties to the lowest code
        std::vector<std::size_t> histogram;  ///< training rows per class reaching the node
        double impurity_decrease = 0.0;  ///< weighted Gini decrease of this split, in rows

        bool leaf() const noexcept { return feature < 0; }

        friend bool operator==(const Node&, const Node&) = default;
    };

    DecisionTree() = default;
    DecisionTree(std::vector<Node> nodes, std::size_t n_features, int n_classes)
        : nodes_(std::move(nodes)), n_features_(n_features), n_classes_(n_classes) {}

    const std::vector<Node>& nodes() const noexcept { return nodes_; }
    std::size_t n_features() const noexcept { return n_features_; }
    int n_classes() const noexcept { return n_classes_; }

    int predict(std::span<const double> row) const;
    /// Per-feature impurity decrease normalized to sum 1 (all zero without splits).
    std::vector<double> importances() const;

    friend bool operator==(const DecisionTree&, const DecisionTree&) = default;

private:
    std::vector<Node> nodes_;
    std::size_t n_features_ = 0;
    int n_classes_ = 0;
};

struct RandomForestModel {
    std::vector<DecisionTree> trees;
    ForestConfig config;
    std::size_t n_features = 0;
    int n_classes = 0;

    friend bool operator==(const RandomForestModel&, const RandomForestModel&) = default;
};

/// Greedy Gini tree on all rows. Candidate thresholds are midpoints between
/// consecutive distinct values. With feature_subsample, each split examines
/// cfg.features_per_split() non-constant features drawn with a stream seeded by cfg.seed.
DecisionTree train_tree(const Matrix& x, std::span<const int> y, const ForestConfig& cfg,
                        bool feature_subsample);

/// Bagged trees; tree t uses the stream derive_seed(cfg.seed, t), so the result does
/// not depend on cfg.threads.
RandomForestModel train_forest(const Matrix& x, std::span<const int> y, const ForestConfig& cfg);

/// Majority vote across trees, ties to the lowest class code.
std::vector<int> predict(const RandomForestModel& model, const Matrix& x);
std::vector<int> predict(const DecisionTree& tree, const Matrix& x);

/// Correctly classified patterns over total patterns.
double ccr(std::span<const int> predicted, std::span<const int> truth);

/// Mean over trees of each tree's normalized impurity decrease, renormalized to sum 1.
std::vector<double> importances(const RandomForestModel& model);

/// One node per line: `id kind feature threshold left right class`.
void write_tree_dump(std::ostream& out, const DecisionTree& tree);

}  // namespace dmkit
