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
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dmkit {

enum class ColumnKind { numeric, ordinal, nominal };

std::string_view to_string(ColumnKind kind);

struct ColumnSchema {
    std::string name;
    ColumnKind kind = ColumnKind::numeric;
    /// Ordered labels; the position is the category code. Empty for numeric columns.
    std::vector<std::string> categories;
    /// Explicit discretization edges (numeric only). Empty means equal-width bins.
    std::vector<double> bin_edges;

    bool categorical() const noexcept { return kind != ColumnKind::numeric; }
    std::optional<std::size_t> category_index(std::string_view label) const;

    /// Throws SchemaError when the column's own invariants do not hold.
    void validate() const;
};

/// Parses the sidecar schema format, one column per line:
///   name|kind|cat1,cat2,...|edge1,edge2,...
/// The last two fields are optional. Blank lines and lines starting with '#' are skipped.
std::vector<ColumnSchema> parse_schema(std::string_view text);
std::vector<ColumnSchema> load_schema(const std::filesystem::path& path);
std::string format_schema(const std::vector<ColumnSchema>& schema);

/// Numeric value, category code, or missing.
using Cell = std::optional<double>;

/// Immutable tabular data with a designated target (objective) column.
class Dataset {
public:
    Dataset(std::vector<ColumnSchema> schema, std::vector<std::vector<Cell>> rows,
            std::size_t target_column);

    const std::vector<ColumnSchema>& schema() const noexcept { return schema_; }
    const ColumnSchema& column(std::size_t c) const { return schema_.at(c); }
    const std::vector<std::vector<Cell>>& rows() const noexcept { return rows_; }
    const Cell& cell(std::size_t r, std::size_t c) const { return rows_[r][c]; }

    std::size_t n_rows() const noexcept { return rows_.size(); }
    std::size_t n_columns() const noexcept { return schema_.size(); }
    std::size_t target_column() const noexcept { return target_; }

    std::optional<std::size_t> column_index(std::string_view name) const;
    double missing_fraction(std::size_t c) const;

    /// Class code per row for the target column. Throws CellError on a missing target.
    std::vector<int> class_labels() const;
    const std::vector<std::string>& class_names() const { return schema_[target_].categories; }

private:
    std::vector<ColumnSchema> schema_;
    std::vector<std::vector<Cell>> rows_;
    std::size_t target_;
};

/// Reads a header CSV (comma separated, double quotes for quoting, empty field = missing).
/// An empty target name selects the last column.
Dataset read_csv(std::istream& in, const std::vector<ColumnSchema>& schema,
                 std::string_view target = {});
Dataset load_csv(const std::filesystem::path& path, const std::vector<ColumnSchema>& schema,
                 std::string_view target = {});
void write_csv(std::ostream& out, const Dataset& ds);

struct DropResult {
    Dataset dataset;
    std::vector<std::string> dropped;
    std::vector<std::string> warnings;
};

/// Keeps the columns whose missing fraction is <= max_missing_fraction. The target
/// column is never dropped; exceeding the threshold only produces a warning.
DropResult drop_sparse_columns(const Dataset& ds, double max_missing_fraction);

struct DiscretizeResult {
    Dataset dataset;
    std::vector<std::string> warnings;
};

/// Turns every numeric column into an ordinal one labelled "[lo-hi)" (the last bin
/// is closed, "[lo-hi]"). Bins are equal-width over the observed range unless the
/// column carries explicit edges; values outside explicit edges fall in the nearest bin.
DiscretizeResult discretize(const Dataset& ds, std::size_t default_bins = 5);

/// Shortest round-trip decimal form used for bin labels and report numbers.
std::string format_number(double value);

/// Quotes a CSV field when it contains the separator, a quote or a newline.
std::string csv_escape(const std::string& field, char separator = ',');

}  // namespace dmkit
