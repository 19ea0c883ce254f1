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

#include "dmkit/forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "dmkit/dataset.hpp"
#include "dmkit/errors.hpp"
#include "dmkit/parallel.hpp"
#include "dmkit/random.hpp"

namespace dmkit {

std::size_t ForestConfig::features_per_split(std::size_t n_features) const {
    if (mtry > 0) return std::min(mtry, n_features);
    return std::max<std::size_t>(1, static_cast<std::size_t>(
                                        std::floor(std::sqrt(static_cast<double>(n_features)))));
}

namespace {

int majority(const std::vector<std::size_t>& histogram) {
    return static_cast<int>(std::max_element(histogram.begin(), histogram.end()) -
                            histogram.begin());
}

std::size_t sum_squares(const std::vector<std::size_t>& counts) {
    std::size_t s = 0;
    for (auto c : counts) s += c * c;
    return s;
}

struct Split {
    int feature = -1;
    double threshold = 0.0;
    double score = -1.0;  ///< sum_k cL_k^2 / nL + sum_k cR_k^2 / nR; higher is purer
};

class TreeBuilder {
public:
    TreeBuilder(const Matrix& x, std::span<const int> y, int n_classes, const ForestConfig& cfg,
                bool subsample, Rng& rng)
        : x_(x), y_(y), n_classes_(n_classes), cfg_(cfg), subsample_(subsample), rng_(rng),
          per_split_(cfg.features_per_split(x.cols())) {}

    DecisionTree build(std::vector<std::size_t> rows) {
        grow(std::move(rows), 0);
        return DecisionTree(std::move(nodes_), x_.cols(), n_classes_);
    }

private:
    std::size_t grow(std::vector<std::size_t> rows, std::size_t depth) {
        const std::size_t id = nodes_.size();
        nodes_.emplace_back();
        auto& node = nodes_.back();
        node.depth = depth;
        node.histogram.assign(static_cast<std::size_t>(n_classes_), 0);
        for (auto r : rows) ++node.histogram[static_cast<std::size_t>(y_[r])];
        node.label = majority(node.histogram);

        const std::size_t n = rows.size();
        const bool pure = node.histogram[static_cast<std::size_t>(node.label)] == n;
        const bool depth_capped = cfg_.max_depth && depth >= *cfg_.max_depth;
        if (pure || depth_capped || n < 2 * cfg_.min_samples_leaf) return id;

        const auto parent_hist = node.histogram;
        const Split split = find_split(rows, parent_hist);
        if (split.feature < 0) return id;

        std::vector<std::size_t> left_rows, right_rows;
        for (auto r : rows)
            (x_(r, static_cast<std::size_t>(split.feature)) <= split.threshold ? left_rows
                                                                               : right_rows)
                .push_back(r);
        rows.clear();
        rows.shrink_to_fit();

        const double dn = static_cast<double>(n);
        const double decrease =
            split.score - static_cast<double>(sum_squares(parent_hist)) / dn;
        const auto left = grow(std::move(left_rows), depth + 1);
        const auto right = grow(std::move(right_rows), depth + 1);
        auto& done = nodes_[id];  // nodes_ may have reallocated
        done.feature = split.feature;
        done.threshold = split.threshold;
        done.left = left;
        done.right = right;
        done.impurity_decrease = std::max(0.0, decrease);
        return id;
    }

    Split find_split(const std::vector<std::size_t>& rows,
                     const std::vector<std::size_t>& parent_hist) {
        const std::size_t p = x_.cols();
        std::vector<std::size_t> order(p);
        std::iota(order.begin(), order.end(), 0);
        std::size_t budget = p;
        if (subsample_) {
            rng_.shuffle(std::span(order));
            budget = per_split_;
        }

        // Visit features in draw order until `budget` non-constant ones were seen.
        std::vector<std::pair<std::size_t, Split>> evaluated;
        for (std::size_t k = 0; k < p && evaluated.size() < budget; ++k) {
            if (auto s = best_threshold(order[k], rows, parent_hist))
                evaluated.emplace_back(order[k], *s);
        }

        // First best gain in ascending feature order.
        std::sort(evaluated.begin(), evaluated.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        Split best;
        for (const auto& [f, s] : evaluated)
            if (s.feature >= 0 && s.score > best.score) best = s;
        return best;
    }

    // nullopt for a feature constant within the node; Split with feature -1 when
    // no threshold respects min_samples_leaf.
    std::optional<Split> best_threshold(std::size_t f, const std::vector<std::size_t>& rows,
                                        const std::vector<std::size_t>& parent_hist) {
        pairs_.clear();
        for (auto r : rows) pairs_.emplace_back(x_(r, f), y_[r]);
        std::sort(pairs_.begin(), pairs_.end());
        if (pairs_.front().first == pairs_.back().first) return std::nullopt;

        const std::size_t n = pairs_.size();
        const std::size_t min_leaf = cfg_.min_samples_leaf;
        left_.assign(parent_hist.size(), 0);
        right_ = parent_hist;
        std::size_t sq_left = 0;
        std::size_t sq_right = sum_squares(parent_hist);

        Split best;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const auto k = static_cast<std::size_t>(pairs_[i].second);
            sq_left += 2 * left_[k] + 1;
            ++left_[k];
            sq_right -= 2 * right_[k] - 1;
            --right_[k];
            const std::size_t n_left = i + 1;
            const std::size_t n_right = n - n_left;
            if (pairs_[i].first == pairs_[i + 1].first) continue;
            if (n_left < min_leaf || n_right < min_leaf) continue;
            const double score = static_cast<double>(sq_left) / static_cast<double>(n_left) +
                                 static_cast<double>(sq_right) / static_cast<double>(n_right);
            if (score > best.score) {
                double mid = 0.5 * (pairs_[i].first + pairs_[i + 1].first);
                if (!(mid < pairs_[i + 1].first)) mid = pairs_[i].first;
                best = {static_cast<int>(f), mid, score};
            }
        }
        return best;
    }

    const Matrix& x_;
    std::span<const int> y_;
    int n_classes_;
    const ForestConfig& cfg_;
    bool subsample_;
    Rng& rng_;
    std::size_t per_split_;
    std::vector<DecisionTree::Node> nodes_;
    std::vector<std::pair<double, int>> pairs_;
    std::vector<std::size_t> left_, right_;
};

void check_training_input(const Matrix& x, std::span<const int> y) {
    if (x.rows() == 0) throw ArgumentError("cannot train on zero rows");
    if (x.cols() == 0) throw ArgumentError("cannot train on zero features");
    if (y.size() != x.rows())
        throw ArgumentError("label count " + std::to_string(y.size()) + " != row count " +
                            std::to_string(x.rows()));
    for (int label : y)
        if (label < 0) throw ArgumentError("class labels must be non-negative codes");
}

int class_count(std::span<const int> y) { return *std::max_element(y.begin(), y.end()) + 1; }

}  // namespace

int DecisionTree::predict(std::span<const double> row) const {
    std::size_t id = 0;
    while (!nodes_[id].leaf())
        id = row[static_cast<std::size_t>(nodes_[id].feature)] <= nodes_[id].threshold
                 ? nodes_[id].left
                 : nodes_[id].right;
    return nodes_[id].label;
}

std::vector<double> DecisionTree::importances() const {
    std::vector<double> out(n_features_, 0.0);
    for (const auto& node : nodes_)
        if (!node.leaf()) out[static_cast<std::size_t>(node.feature)] += node.impurity_decrease;
    const double total = std::accumulate(out.begin(), out.end(), 0.0);
    if (total > 0.0)
        for (auto& v : out) v /= total;
    return out;
}

DecisionTree train_tree(const Matrix& x, std::span<const int> y, const ForestConfig& cfg,
                        bool feature_subsample) {
    check_training_input(x, y);
    Rng rng(derive_seed(cfg.seed, std::uint64_t{0}));
    std::vector<std::size_t> rows(x.rows());
    std::iota(rows.begin(), rows.end(), 0);
    return TreeBuilder(x, y, class_count(y), cfg, feature_subsample, rng).build(std::move(rows));
}

RandomForestModel train_forest(const Matrix& x, std::span<const int> y, const ForestConfig& cfg) {
    check_training_input(x, y);
    if (cfg.n_trees == 0) throw ArgumentError("a forest needs at least one tree");
    if (cfg.min_samples_leaf == 0) throw ArgumentError("min_samples_leaf must be >= 1");
    RandomForestModel model;
    model.config = cfg;
    model.n_features = x.cols();
    model.n_classes = class_count(y);
    model.trees.resize(cfg.n_trees);
    parallel_for(cfg.n_trees, cfg.threads, [&](std::size_t t) {
        Rng rng(derive_seed(cfg.seed, t));
        std::vector<std::size_t> rows(x.rows());
        if (cfg.bootstrap)
            for (auto& r : rows) r = static_cast<std::size_t>(rng.below(x.rows()));
        else
            std::iota(rows.begin(), rows.end(), 0);
        model.trees[t] =
            TreeBuilder(x, y, model.n_classes, cfg, true, rng).build(std::move(rows));
    });
    return model;
}

std::vector<int> predict(const RandomForestModel& model, const Matrix& x) {
    if (x.cols() != model.n_features)
        throw ArgumentError("matrix has " + std::to_string(x.cols()) + " features, model expects " +
                            std::to_string(model.n_features));
    std::vector<int> out(x.rows());
    std::vector<std::size_t> votes(static_cast<std::size_t>(model.n_classes));
    for (std::size_t r = 0; r < x.rows(); ++r) {
        std::fill(votes.begin(), votes.end(), 0);
        for (const auto& tree : model.trees) ++votes[static_cast<std::size_t>(tree.predict(x.row(r)))];
        out[r] = majority(votes);
    }
    return out;
}

std::vector<int> predict(const DecisionTree& tree, const Matrix& x) {
    if (x.cols() != tree.n_features())
        throw ArgumentError("matrix has " + std::to_string(x.cols()) + " features, tree expects " +
                            std::to_string(tree.n_features()));
    std::vector<int> out(x.rows());
    for (std::size_t r = 0; r < x.rows(); ++r) out[r] = tree.predict(x.row(r));
    return out;
}

double ccr(std::span<const int> predicted, std::span<const int> truth) {
    if (predicted.empty()) throw ArgumentError("ccr of an empty prediction");
    if (predicted.size() != truth.size())
        throw ArgumentError("ccr needs equally long prediction and truth vectors");
    std::size_t correct = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) correct += predicted[i] == truth[i];
    return static_cast<double>(correct) / static_cast<double>(truth.size());
}

std::vector<double> importances(const RandomForestModel& model) {
    std::vector<double> out(model.n_features, 0.0);
    for (const auto& tree : model.trees) {
        const auto t = tree.importances();
        for (std::size_t f = 0; f < out.size(); ++f) out[f] += t[f];
    }
    const double total = std::accumulate(out.begin(), out.end(), 0.0);
    if (total > 0.0)
        for (auto& v : out) v /= total;
    return out;
}

void write_tree_dump(std::ostream& out, const DecisionTree& tree) {
    const auto& nodes = tree.nodes();
    for (std::size_t id = 0; id < nodes.size(); ++id) {
        const auto& n = nodes[id];
        if (n.leaf())
            out << id << " leaf - - - - " << n.label << '\n';
        else
            out << id << " split " << n.feature << ' ' << format_number(n.threshold) << ' '
                << n.left << ' ' << n.right << " -\n";
    }
}

}  // namespace dmkit
