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

#include "dmkit/synthetic.hpp"

#include <algorithm>
#include <cmath>

#include "dmkit/errors.hpp"
#include "dmkit/random.hpp"

namespace dmkit {

LabelledMatrix make_separable(std::size_t n_rows, std::size_t n_features, std::uint64_t seed) {
    if (n_features < 2) throw ArgumentError("separable data needs at least 2 features");
    Rng rng(seed);
    LabelledMatrix out{Matrix(n_rows, n_features), std::vector<int>(n_rows), {0, 1}};
    for (std::size_t r = 0; r < n_rows; ++r) {
        double a, b;
        do {
            a = rng.uniform();
            b = rng.uniform();
        } while (std::abs(a + b - 1.0) < 0.1);
        out.x(r, 0) = a;
        out.x(r, 1) = b;
        for (std::size_t c = 2; c < n_features; ++c) out.x(r, c) = rng.uniform();
        out.y[r] = a + b > 1.0 ? 1 : 0;
    }
    return out;
}

LabelledMatrix make_recovery(std::size_t n_rows, std::size_t n_features,
                             std::size_t n_informative, std::uint64_t seed) {
    if (n_informative == 0 || n_informative > n_features)
        throw ArgumentError("n_informative must lie in [1, n_features]");
    Rng rng(seed);
    LabelledMatrix out{Matrix(n_rows, n_features), std::vector<int>(n_rows), {}};
    const std::size_t stride = n_features / n_informative;
    for (std::size_t i = 0; i < n_informative; ++i) out.informative.push_back(i * stride + stride / 2);

    constexpr double kNoise = 0.3;
    const double noise_scale = std::sqrt(1.0 + kNoise * kNoise);
    for (std::size_t r = 0; r < n_rows; ++r) {
        double latent_sum = 0.0;
        std::size_t next = 0;
        for (std::size_t c = 0; c < n_features; ++c) {
            double v;
            if (next < n_informative && out.informative[next] == c) {
                const double z = rng.normal();
                latent_sum += z;
                v = 10.0 + z + kNoise * rng.normal();
                ++next;
            } else {
                v = 10.0 + noise_scale * rng.normal();
            }
            // chi2 needs non-negative inputs; ten standard deviations never clip in practice.
            out.x(r, c) = std::max(0.0, v);
        }
        out.y[r] = latent_sum > 0.0 ? 1 : 0;
    }
    return out;
}

namespace {

ColumnSchema nominal(std::string name, std::vector<std::string> categories) {
    return {std::move(name), ColumnKind::nominal, std::move(categories), {}};
}

ColumnSchema ordinal(std::string name, std::vector<std::string> categories) {
    return {std::move(name), ColumnKind::ordinal, std::move(categories), {}};
}

std::size_t pick(Rng& rng, std::initializer_list<double> weights) {
    double u = rng.uniform();
    std::size_t i = 0;
    for (double w : weights) {
        if (u < w) return i;
        u -= w;
        ++i;
    }
    return i - 1;
}

}  // namespace

Dataset to_dataset(const LabelledMatrix& data) {
    std::vector<ColumnSchema> schema;
    for (std::size_t c = 0; c < data.x.cols(); ++c)
        schema.push_back({"f" + std::to_string(c), ColumnKind::numeric, {}, {}});
    schema.push_back(nominal("label", {"0", "1"}));
    std::vector<std::vector<Cell>> rows(data.x.rows());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (double v : data.x.row(r)) rows[r].emplace_back(v);
        rows[r].emplace_back(static_cast<double>(data.y[r]));
    }
    return Dataset(std::move(schema), std::move(rows), data.x.cols());
}

Dataset make_planted(std::size_t n_rows, std::size_t n_noise_columns, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<ColumnSchema> schema;
    for (std::size_t c = 0; c < n_noise_columns; ++c)
        schema.push_back(nominal("noise" + std::to_string(c), {"a", "b", "c"}));
    schema.push_back(nominal("marker", {"on", "off"}));
    schema.push_back(nominal("class", {"pos", "neg"}));

    std::vector<std::vector<Cell>> rows(n_rows);
    for (auto& row : rows) {
        for (std::size_t c = 0; c < n_noise_columns; ++c)
            row.emplace_back(static_cast<double>(rng.below(3)));
        const double cls = rng.bernoulli(0.4) ? 0.0 : 1.0;
        row.emplace_back(cls);
        row.emplace_back(cls);
    }
    return Dataset(std::move(schema), std::move(rows), n_noise_columns + 1);
}

Dataset make_survey(std::size_t n_rows, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<ColumnSchema> schema{
        {"age", ColumnKind::numeric, {}, {18, 28, 40, 55, 70, 90}},
        nominal("sex", {"Male", "Female"}),
        nominal("nationality", {"Spanish", "Foreign"}),
        {"years_homeless", ColumnKind::numeric, {}, {}},
        ordinal("education", {"None", "Primary", "Secondary", "University"}),
        nominal("employment", {"Unemployed", "Occasional", "Employed"}),
        nominal("chronic_disease", {"Yes", "No"}),
        nominal("disability", {"Yes", "No"}),
        ordinal("disability_degree", {"None", "Moderate", "Severe"}),
        nominal("sleeps_outdoors", {"Yes", "No"}),
        {"monthly_income", ColumnKind::numeric, {}, {}},
        nominal("prior_shelter_use", {"Yes", "No"}),
        ordinal("health_state", {"Bad", "Fair", "Good"}),
    };

    std::vector<std::vector<Cell>> rows;
    rows.reserve(n_rows);
    for (std::size_t r = 0; r < n_rows; ++r) {
        const double age = 18.0 + static_cast<double>(rng.below(68));
        const auto sex = pick(rng, {0.8, 0.2});
        const auto nationality = pick(rng, {0.55, 0.45});
        const double years = std::round(std::abs(rng.normal()) * 60.0) / 10.0;
        const auto education = pick(rng, {0.15, 0.4, 0.35, 0.1});
        const auto employment = pick(rng, {0.7, 0.2, 0.1});
        const bool chronic = rng.bernoulli(std::clamp(0.2 + (age - 18.0) / 100.0, 0.0, 1.0));
        const bool disabled = rng.bernoulli(chronic ? 0.45 : 0.15);
        const auto degree = disabled ? 1 + pick(rng, {0.6, 0.4}) : 0;
        const bool outdoors = rng.bernoulli(0.3 + 0.02 * std::min(years, 10.0));
        const double income =
            std::round(std::max(0.0, 150.0 + 200.0 * static_cast<double>(employment) + 80.0 * rng.normal()));
        const auto shelter = pick(rng, {0.6, 0.4});

        const double score = 2.0 - 1.2 * chronic - 0.8 * disabled - 0.5 * outdoors -
                             0.02 * (age - 40.0) + 0.2 * static_cast<double>(education) +
                             0.6 * rng.normal();
        const double health = score < 0.6 ? 0.0 : (score < 1.6 ? 1.0 : 2.0);

        auto maybe = [&](double value, double p_missing) -> Cell {
            if (rng.bernoulli(p_missing)) return std::nullopt;
            return value;
        };
        rows.push_back({
            age,
            static_cast<double>(sex),
            maybe(static_cast<double>(nationality), 0.03),
            maybe(years, 0.08),
            maybe(static_cast<double>(education), 0.05),
            static_cast<double>(employment),
            static_cast<double>(chronic ? 0 : 1),
            static_cast<double>(disabled ? 0 : 1),
            static_cast<double>(degree),
            static_cast<double>(outdoors ? 0 : 1),
            maybe(income, 0.25),
            maybe(static_cast<double>(shelter), 0.85),
            health,
        });
    }
    return Dataset(std::move(schema), std::move(rows), 12);
}

std::string survey_triviality_map() {
    return "# Columns recording the same fact twice.\n"
           "disability,disability_degree\n";
}

}  // namespace dmkit
