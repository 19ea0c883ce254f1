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

#include "dmkit/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "dmkit/errors.hpp"

namespace dmkit {

namespace {

std::string_view trim(std::string_view s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string_view::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(sep, start);
        out.emplace_back(trim(s.substr(start, pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::optional<double> parse_double(std::string_view s) {
    s = trim(s);
    if (s.empty()) return std::nullopt;
    if (s.front() == '+') s.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(value))
        return std::nullopt;
    return value;
}

// One CSV record; handles quoted fields with embedded commas, quotes and newlines.
bool read_record(std::istream& in, std::vector<std::string>& fields) {
    fields.clear();
    std::string field;
    bool in_quotes = false;
    bool any = false;
    char c;
    while (in.get(c)) {
        any = true;
        if (in_quotes) {
            if (c == '"') {
                if (in.peek() == '"') {
                    field += '"';
                    in.get();
                } else {
                    in_quotes = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            in_quotes = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else if (c == '\n') {
            break;
        } else if (c != '\r') {
            field += c;
        }
    }
    if (!any) return false;
    fields.push_back(std::move(field));
    return true;
}

}  // namespace

std::string_view to_string(ColumnKind kind) {
    switch (kind) {
        case ColumnKind::numeric: return "numeric";
        case ColumnKind::ordinal: return "ordinal";
        case ColumnKind::nominal: return "nominal";
    }
    return "numeric";
}

std::optional<std::size_t> ColumnSchema::category_index(std::string_view label) const {
    for (std::size_t i = 0; i < categories.size(); ++i)
        if (categories[i] == label) return i;
    return std::nullopt;
}

void ColumnSchema::validate() const {
    if (name.empty()) throw SchemaError(name, "column with empty name");
    if (categorical()) {
        if (categories.empty())
            throw SchemaError(name, "column '" + name + "' is " + std::string(to_string(kind)) +
                                        " but declares no categories");
        std::set<std::string_view> seen;
        for (const auto& c : categories)
            if (!seen.insert(c).second)
                throw SchemaError(name, "column '" + name + "' repeats category '" + c + "'");
        if (!bin_edges.empty())
            throw SchemaError(name, "column '" + name + "' has bin edges but is not numeric");
    } else {
        if (!categories.empty())
            throw SchemaError(name, "numeric column '" + name + "' must not declare categories");
        if (!bin_edges.empty()) {
            if (bin_edges.size() < 2)
                throw SchemaError(name, "column '" + name + "' needs at least two bin edges");
            if (!std::is_sorted(bin_edges.begin(), bin_edges.end()) ||
                std::adjacent_find(bin_edges.begin(), bin_edges.end()) != bin_edges.end())
                throw SchemaError(name, "bin edges of '" + name + "' must be strictly increasing");
        }
    }
}

std::vector<ColumnSchema> parse_schema(std::string_view text) {
    std::vector<ColumnSchema> schema;
    std::set<std::string> names;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        const auto line = trim(text.substr(start, end - start));
        start = end + 1;
        ++line_no;
        if (line.empty() || line.front() == '#') continue;

        const auto fields = split(line, '|');
        if (fields.size() < 2 || fields.size() > 4)
            throw SchemaError("", "schema line " + std::to_string(line_no) +
                                      ": expected name|kind[|categories[|bin_edges]]");
        ColumnSchema col;
        col.name = fields[0];
        if (fields[1] == "numeric") col.kind = ColumnKind::numeric;
        else if (fields[1] == "ordinal") col.kind = ColumnKind::ordinal;
        else if (fields[1] == "nominal") col.kind = ColumnKind::nominal;
        else
            throw SchemaError(col.name, "schema line " + std::to_string(line_no) +
                                            ": unknown kind '" + fields[1] + "'");
        if (fields.size() > 2 && !fields[2].empty()) col.categories = split(fields[2], ',');
        if (fields.size() > 3 && !fields[3].empty()) {
            for (const auto& e : split(fields[3], ',')) {
                const auto v = parse_double(e);
                if (!v)
                    throw SchemaError(col.name, "schema line " + std::to_string(line_no) +
                                                    ": bad bin edge '" + e + "'");
                col.bin_edges.push_back(*v);
            }
        }
        col.validate();
        if (!names.insert(col.name).second)
            throw SchemaError(col.name, "duplicate column '" + col.name + "' in schema");
        schema.push_back(std::move(col));
    }
    if (schema.empty()) throw SchemaError("", "schema declares no columns");
    return schema;
}

std::vector<ColumnSchema> load_schema(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ArgumentError("cannot open schema file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_schema(buf.str());
}

std::string format_schema(const std::vector<ColumnSchema>& schema) {
    std::string out;
    for (const auto& col : schema) {
        out += col.name;
        out += '|';
        out += to_string(col.kind);
        if (!col.categories.empty() || !col.bin_edges.empty()) {
            out += '|';
            for (std::size_t i = 0; i < col.categories.size(); ++i) {
                if (i) out += ',';
                out += col.categories[i];
            }
        }
        if (!col.bin_edges.empty()) {
            out += '|';
            for (std::size_t i = 0; i < col.bin_edges.size(); ++i) {
                if (i) out += ',';
                out += format_number(col.bin_edges[i]);
            }
        }
        out += '\n';
    }
    return out;
}

Dataset::Dataset(std::vector<ColumnSchema> schema, std::vector<std::vector<Cell>> rows,
                 std::size_t target_column)
    : schema_(std::move(schema)), rows_(std::move(rows)), target_(target_column) {
    if (target_ >= schema_.size())
        throw ArgumentError("target column index " + std::to_string(target_) + " out of range");
    for (const auto& col : schema_) col.validate();
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (rows_[r].size() != schema_.size())
            throw CellError(r, rows_[r].size(), "row " + std::to_string(r) + " has " +
                                                    std::to_string(rows_[r].size()) +
                                                    " cells, schema has " +
                                                    std::to_string(schema_.size()));
        for (std::size_t c = 0; c < schema_.size(); ++c) {
            const auto& v = rows_[r][c];
            if (!v || !schema_[c].categorical()) continue;
            const double code = *v;
            if (code < 0 || code != std::floor(code) ||
                code >= static_cast<double>(schema_[c].categories.size()))
                throw CellError(r, c, "invalid category code at row " + std::to_string(r) +
                                          ", column '" + schema_[c].name + "'");
        }
    }
}

std::optional<std::size_t> Dataset::column_index(std::string_view name) const {
    for (std::size_t c = 0; c < schema_.size(); ++c)
        if (schema_[c].name == name) return c;
    return std::nullopt;
}

double Dataset::missing_fraction(std::size_t c) const {
    if (rows_.empty()) return 0.0;
    std::size_t missing = 0;
    for (const auto& row : rows_)
        if (!row[c]) ++missing;
    return static_cast<double>(missing) / static_cast<double>(rows_.size());
}

std::vector<int> Dataset::class_labels() const {
    if (!schema_[target_].categorical())
        throw PreconditionError("target column '" + schema_[target_].name +
                                "' must be ordinal or nominal");
    std::vector<int> labels(rows_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        const auto& v = rows_[r][target_];
        if (!v)
            throw CellError(r, target_, "missing target value at row " + std::to_string(r));
        labels[r] = static_cast<int>(*v);
    }
    return labels;
}

Dataset read_csv(std::istream& in, const std::vector<ColumnSchema>& schema,
                 std::string_view target) {
    std::vector<std::string> fields;
    if (!read_record(in, fields)) throw SchemaError("", "CSV input is empty (no header row)");
    if (!fields.empty() && fields[0].starts_with("\xEF\xBB\xBF")) fields[0].erase(0, 3);
    for (std::size_t c = 0; c < std::max(fields.size(), schema.size()); ++c) {
        if (c >= schema.size())
            throw SchemaError(std::string(trim(fields[c])),
                              "CSV column '" + std::string(trim(fields[c])) +
                                  "' is not declared in the schema");
        if (c >= fields.size())
            throw SchemaError(schema[c].name,
                              "schema column '" + schema[c].name + "' missing from CSV header");
        if (trim(fields[c]) != schema[c].name)
            throw SchemaError(schema[c].name, "CSV header column " + std::to_string(c) + " is '" +
                                                  std::string(trim(fields[c])) +
                                                  "', schema expects '" + schema[c].name + "'");
    }

    std::vector<std::vector<Cell>> rows;
    while (read_record(in, fields)) {
        if (fields.size() == 1 && trim(fields[0]).empty()) continue;  // blank line
        const std::size_t r = rows.size();
        if (fields.size() != schema.size())
            throw CellError(r, std::min(fields.size(), schema.size()),
                            "row " + std::to_string(r) + " has " + std::to_string(fields.size()) +
                                " fields, expected " + std::to_string(schema.size()));
        std::vector<Cell> row(schema.size());
        for (std::size_t c = 0; c < schema.size(); ++c) {
            const auto text = trim(fields[c]);
            if (text.empty()) continue;
            if (schema[c].categorical()) {
                const auto code = schema[c].category_index(text);
                if (!code)
                    throw CellError(r, c, "row " + std::to_string(r) + ", column '" +
                                              schema[c].name + "': label '" + std::string(text) +
                                              "' is not a declared category");
                row[c] = static_cast<double>(*code);
            } else {
                row[c] = parse_double(text);
            }
        }
        rows.push_back(std::move(row));
    }

    std::size_t target_index = schema.size() - 1;
    if (!target.empty()) {
        bool found = false;
        for (std::size_t c = 0; c < schema.size(); ++c)
            if (schema[c].name == target) {
                target_index = c;
                found = true;
            }
        if (!found)
            throw ArgumentError("target column '" + std::string(target) + "' not in schema");
    }
    return Dataset(schema, std::move(rows), target_index);
}

Dataset load_csv(const std::filesystem::path& path, const std::vector<ColumnSchema>& schema,
                 std::string_view target) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ArgumentError("cannot open data file " + path.string());
    return read_csv(in, schema, target);
}

void write_csv(std::ostream& out, const Dataset& ds) {
    for (std::size_t c = 0; c < ds.n_columns(); ++c) {
        if (c) out << ',';
        out << csv_escape(ds.column(c).name);
    }
    out << '\n';
    for (const auto& row : ds.rows()) {
        for (std::size_t c = 0; c < ds.n_columns(); ++c) {
            if (c) out << ',';
            if (!row[c]) continue;
            const auto& col = ds.column(c);
            if (col.categorical())
                out << csv_escape(col.categories[static_cast<std::size_t>(*row[c])]);
            else
                out << format_number(*row[c]);
        }
        out << '\n';
    }
}

DropResult drop_sparse_columns(const Dataset& ds, double max_missing_fraction) {
    if (!(max_missing_fraction >= 0.0 && max_missing_fraction <= 1.0))
        throw ArgumentError("max_missing_fraction must lie in [0, 1]");
    std::vector<std::size_t> keep;
    std::vector<std::string> dropped;
    std::vector<std::string> warnings;
    for (std::size_t c = 0; c < ds.n_columns(); ++c) {
        const double frac = ds.missing_fraction(c);
        if (frac <= max_missing_fraction) {
            keep.push_back(c);
        } else if (c == ds.target_column()) {
            keep.push_back(c);
            warnings.push_back("target column '" + ds.column(c).name + "' is missing in " +
                               format_number(frac) + " of rows; kept");
        } else {
            dropped.push_back(ds.column(c).name);
        }
    }
    std::vector<ColumnSchema> schema;
    std::size_t target = 0;
    for (std::size_t k = 0; k < keep.size(); ++k) {
        if (keep[k] == ds.target_column()) target = k;
        schema.push_back(ds.column(keep[k]));
    }
    std::vector<std::vector<Cell>> rows;
    rows.reserve(ds.n_rows());
    for (const auto& row : ds.rows()) {
        std::vector<Cell> out;
        out.reserve(keep.size());
        for (auto c : keep) out.push_back(row[c]);
        rows.push_back(std::move(out));
    }
    return {Dataset(std::move(schema), std::move(rows), target), std::move(dropped),
            std::move(warnings)};
}

std::string csv_escape(const std::string& field, char separator) {
    const char specials[] = {separator, '"', '\n', '\r', '\0'};
    if (field.find_first_of(specials) == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string format_number(double value) {
    if (value == 0.0) return "0";  // folds -0
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

namespace {

std::string format_edge(double value) {
    if (value == 0.0) return "0";
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 6);
    return std::string(buf, ptr);
}

}  // namespace

DiscretizeResult discretize(const Dataset& ds, std::size_t default_bins) {
    if (default_bins < 2) throw ArgumentError("discretize needs at least 2 bins");
    auto schema = ds.schema();
    auto rows = ds.rows();
    std::vector<std::string> warnings;

    for (std::size_t c = 0; c < schema.size(); ++c) {
        auto& col = schema[c];
        if (col.categorical()) continue;

        std::vector<double> edges = col.bin_edges;
        if (edges.empty()) {
            double lo = 0.0, hi = 0.0;
            bool any = false;
            for (const auto& row : rows) {
                if (!row[c]) continue;
                lo = any ? std::min(lo, *row[c]) : *row[c];
                hi = any ? std::max(hi, *row[c]) : *row[c];
                any = true;
            }
            if (!any) {
                warnings.push_back("numeric column '" + col.name + "' has no values; one bin");
                edges = {0.0, 0.0};
            } else if (lo == hi) {
                warnings.push_back("numeric column '" + col.name + "' is constant; one bin");
                edges = {lo, hi};
            } else {
                edges.resize(default_bins + 1);
                const double width = (hi - lo) / static_cast<double>(default_bins);
                for (std::size_t i = 0; i < default_bins; ++i)
                    edges[i] = lo + width * static_cast<double>(i);
                edges[default_bins] = hi;
            }
        }

        const std::size_t bins = edges.size() - 1;
        // Six significant digits hide float noise in computed edges; fall back to
        // exact digits if that would merge two labels.
        auto make_labels = [&](auto&& fmt) {
            std::vector<std::string> out;
            for (std::size_t b = 0; b < bins; ++b) {
                const bool last = b + 1 == bins;
                out.push_back("[" + fmt(edges[b]) + "-" + fmt(edges[b + 1]) + (last ? "]" : ")"));
            }
            return out;
        };
        auto labels = make_labels(format_edge);
        if (std::set<std::string>(labels.begin(), labels.end()).size() != labels.size())
            labels = make_labels(format_number);
        for (auto& row : rows) {
            if (!row[c]) continue;
            const auto it = std::upper_bound(edges.begin(), edges.end(), *row[c]);
            auto bin = static_cast<std::ptrdiff_t>(it - edges.begin()) - 1;
            bin = std::clamp<std::ptrdiff_t>(bin, 0, static_cast<std::ptrdiff_t>(bins) - 1);
            row[c] = static_cast<double>(bin);
        }
        col.kind = ColumnKind::ordinal;
        col.categories = std::move(labels);
        col.bin_edges.clear();
    }
    return {Dataset(std::move(schema), std::move(rows), ds.target_column()), std::move(warnings)};
}

}  // namespace dmkit
