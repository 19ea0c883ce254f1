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
#include <span>
#include <string>
#include <vector>

#include "dmkit/dataset.hpp"

namespace dmkit {

/// Dense row-major matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix take_columns(const Matrix& m, std::span<const std::size_t> columns);
Matrix take_rows(const Matrix& m, std::span<const std::size_t> rows);

template <class T>
std::vector<T> take(std::span<const T> values, std::span<const std::size_t> index) {
    std::vector<T> out;
    out.reserve(index.size());
    for (auto i : index) out.push_back(values[i]);
    return out;
}

/// Numeric feature space derived from a Dataset. The target column is not a feature.
struct EncodedMatrix {
    Matrix values;
    std::vector<std::string> feature_names;
    /// Source column (index into the originating Dataset) of each feature.
    std::vector<std::size_t> feature_source;
    std::vector<std::string> source_names;  ///< column names of the originating Dataset
    std::vector<int> target;
    std::vector<std::string> class_names;

    std::size_t n_features() const noexcept { return values.cols(); }
    const std::string& source_name(std::size_t feature) const {
        return source_names[feature_source[feature]];
    }
};

/// Ordinal columns become one integer-coded feature, nominal columns one 0/1
/// feature per category, numeric columns pass through.
///
/// Missing cells: a nominal group stays all-zero; ordinal cells take the mode and
/// numeric cells the median of `impute_rows` (all rows when empty), so imputation
/// statistics can be restricted to the training partition.
EncodedMatrix encode(const Dataset& ds, std::span<const std::size_t> impute_rows = {});

/// Writes the matrix as CSV with feature names plus a trailing target column.
void write_matrix_csv(std::ostream& out, const EncodedMatrix& em);
/// Writes `index,feature,source_column`.
void write_feature_map_csv(std::ostream& out, const EncodedMatrix& em);

}  // namespace dmkit
