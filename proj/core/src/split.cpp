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

#include "dmkit/split.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>

#include "dmkit/errors.hpp"
#include "dmkit/random.hpp"

namespace dmkit {

namespace {

std::map<int, std::vector<std::size_t>> rows_by_class(std::span<const int> labels) {
    std::map<int, std::vector<std::size_t>> groups;
    for (std::size_t r = 0; r < labels.size(); ++r) groups[labels[r]].push_back(r);
    return groups;
}

}  // namespace

SplitIndices stratified_split(std::span<const int> labels, double test_fraction,
                              std::uint64_t seed) {
    if (!(test_fraction >= 0.0 && test_fraction < 1.0))
        throw ArgumentError("test_fraction must lie in [0, 1)");
    SplitIndices out;
    out.seed = seed;
    Rng rng(seed);
    for (auto& [label, rows] : rows_by_class(labels)) {
        rng.shuffle(std::span(rows));
        auto n_test = static_cast<std::size_t>(
            std::llround(test_fraction * static_cast<double>(rows.size())));
        if (rows.size() == 1 && test_fraction > 0.0) {
            out.warnings.push_back("class " + std::to_string(label) +
                                   " has a single row; kept in train");
            n_test = 0;
        }
        n_test = std::min(n_test, rows.size() > 1 ? rows.size() - 1 : std::size_t{0});
        out.test.insert(out.test.end(), rows.begin(), rows.begin() + n_test);
        out.train.insert(out.train.end(), rows.begin() + n_test, rows.end());
    }
    std::sort(out.train.begin(), out.train.end());
    std::sort(out.test.begin(), out.test.end());
    return out;
}

SplitIndices stratified_split(const Dataset& ds, double test_fraction, std::uint64_t seed) {
    const auto labels = ds.class_labels();
    return stratified_split(std::span<const int>(labels), test_fraction, seed);
}

std::vector<std::vector<std::size_t>> stratified_kfold(std::span<const int> labels,
                                                       std::size_t k, std::uint64_t seed) {
    if (k < 2) throw ArgumentError("k-fold cross-validation needs k >= 2");
    std::vector<std::vector<std::size_t>> folds(k);
    Rng rng(seed);
    std::size_t offset = 0;
    for (auto& [label, rows] : rows_by_class(labels)) {
        if (rows.size() < k)
            throw PreconditionError("class " + std::to_string(label) + " has " +
                                    std::to_string(rows.size()) + " rows, fewer than " +
                                    std::to_string(k) + " folds");
        rng.shuffle(std::span(rows));
        // Rotating the starting fold per class keeps overall fold sizes balanced.
        for (std::size_t i = 0; i < rows.size(); ++i) folds[(offset + i) % k].push_back(rows[i]);
        offset = (offset + rows.size()) % k;
    }
    for (auto& fold : folds) std::sort(fold.begin(), fold.end());
    return folds;
}

std::vector<std::size_t> complement(std::span<const std::size_t> rows, std::size_t n) {
    std::vector<bool> in(n, false);
    for (auto r : rows) in[r] = true;
    std::vector<std::size_t> out;
    out.reserve(n - rows.size());
    for (std::size_t r = 0; r < n; ++r)
        if (!in[r]) out.push_back(r);
    return out;
}

void write_split_csv(std::ostream& out, const SplitIndices& split) {
    out << "row_index,partition\n";
    std::size_t i = 0, j = 0;
    while (i < split.train.size() || j < split.test.size()) {
        if (j == split.test.size() || (i < split.train.size() && split.train[i] < split.test[j]))
            out << split.train[i++] << ",train\n";
        else
            out << split.test[j++] << ",test\n";
    }
}

}  // namespace dmkit
