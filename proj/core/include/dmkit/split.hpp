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
#include <span>
#include <string>
#include <vector>

#include "dmkit/dataset.hpp"

namespace dmkit {

struct SplitIndices {
    std::vector<std::size_t> train;  ///< ascending
    std::vector<std::size_t> test;   ///< ascending
    std::uint64_t seed = 0;
    std::vector<std::string> warnings;
};

/// Per class, round(test_fraction * class size) rows go to test (never the
/// whole class). A singleton class stays in train and produces a warning.
SplitIndices stratified_split(std::span<const int> labels, double test_fraction,
                              std::uint64_t seed);
SplitIndices stratified_split(const Dataset& ds, double test_fraction, std::uint64_t seed);

/// Test-row lists (ascending) of k stratified folds. Rows of each class are
/// shuffled and dealt round-robin, so fold sizes per class differ by at most one.
/// Throws PreconditionError when a class has fewer than k rows, since some fold
/// would then miss that class.
std::vector<std::vector<std::size_t>> stratified_kfold(std::span<const int> labels,
                                                       std::size_t k, std::uint64_t seed);

/// Complement of one fold's test rows within [0, n).
std::vector<std::size_t> complement(std::span<const std::size_t> rows, std::size_t n);

/// `row_index,partition` with partition in {train,test}, rows ascending.
void write_split_csv(std::ostream& out, const SplitIndices& split);

}  // namespace dmkit
