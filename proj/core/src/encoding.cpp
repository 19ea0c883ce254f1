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

#include "dmkit/encoding.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

#include "dmkit/errors.hpp"

namespace dmkit {

Matrix take_columns(const Matrix& m, std::span<const std::size_t> columns) {
    Matrix out(m.rows(), columns.size());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t j = 0; j < columns.size(); ++j) out(r, j) = m(r, columns[j]);
    return out;
}

Matrix take_rows(const Matrix& m, std::span<const std::size_t> rows) {
    Matrix out(rows.size(), m.cols());
    for (std::size_t i = 0; i < rows.size(); ++i)
        std::copy_n(m.row(rows[i]).begin(), m.cols(), out.row(i).begin());
    return out;
}

namespace {

double impute_value(const Dataset& ds, std::size_t c, std::span<const std::size_t> rows) {
    const auto& col = ds.column(c);
    std::vector<double> observed;
    auto visit = [&](std::size_t r) {
        if (const auto& v = ds.cell(r, c)) observed.push_back(*v);
    };
    if (rows.empty())
        for (std::size_t r = 0; r < ds.n_rows(); ++r) visit(r);
    else
        for (auto r : rows) visit(r);
    if (observed.empty())
        throw PreconditionError("column '" + col.name +
                                "' has no observed values to impute missing cells from");

    if (col.kind == ColumnKind::ordinal) {
        std::vector<std::size_t> counts(col.categories.size(), 0);
        for (double v : observed) ++counts[static_cast<std::size_t>(v)];
        // max_element returns the first maximum, so ties go to the lowest code.
        return static_cast<double>(std::max_element(counts.begin(), counts.end()) -
                                   counts.begin());
    }
    std::sort(observed.begin(), observed.end());
    const std::size_t n = observed.size();
    return n % 2 ? observed[n / 2] : 0.5 * (observed[n / 2 - 1] + observed[n / 2]);
}

}  // namespace

EncodedMatrix encode(const Dataset& ds, std::span<const std::size_t> impute_rows) {
    EncodedMatrix em;
    em.target = ds.class_labels();
    em.class_names = ds.class_names();
    for (const auto& col : ds.schema()) em.source_names.push_back(col.name);

    struct Plan {
        std::size_t column;
        std::size_t first_feature;
        double fill;
    };
    std::vector<Plan> plans;
    for (std::size_t c = 0; c < ds.n_columns(); ++c) {
        if (c == ds.target_column()) continue;
        const auto& col = ds.column(c);
        Plan plan{c, em.feature_names.size(), 0.0};
        if (col.kind == ColumnKind::nominal) {
            for (const auto& cat : col.categories) {
                em.feature_names.push_back(col.name + "=" + cat);
                em.feature_source.push_back(c);
            }
        } else {
            em.feature_names.push_back(col.name);
            em.feature_source.push_back(c);
            if (ds.missing_fraction(c) > 0.0) plan.fill = impute_value(ds, c, impute_rows);
        }
        plans.push_back(plan);
    }

    em.values = Matrix(ds.n_rows(), em.feature_names.size(), 0.0);
    for (std::size_t r = 0; r < ds.n_rows(); ++r) {
        for (const auto& plan : plans) {
            const auto& v = ds.cell(r, plan.column);
            if (ds.column(plan.column).kind == ColumnKind::nominal) {
                if (v) em.values(r, plan.first_feature + static_cast<std::size_t>(*v)) = 1.0;
            } else {
                em.values(r, plan.first_feature) = v ? *v : plan.fill;
            }
        }
    }
    return em;
}

void write_matrix_csv(std::ostream& out, const EncodedMatrix& em) {
    for (const auto& name : em.feature_names) out << csv_escape(name) << ',';
    out << "target\n";
    for (std::size_t r = 0; r < em.values.rows(); ++r) {
        for (double v : em.values.row(r)) out << format_number(v) << ',';
        out << csv_escape(em.class_names[static_cast<std::size_t>(em.target[r])]) << '\n';
    }
}

void write_feature_map_csv(std::ostream& out, const EncodedMatrix& em) {
    out << "index,feature,source_column\n";
    for (std::size_t f = 0; f < em.n_features(); ++f)
        out << f << ',' << csv_escape(em.feature_names[f]) << ',' << csv_escape(em.source_name(f)) << '\n';
}

}  // namespace dmkit
