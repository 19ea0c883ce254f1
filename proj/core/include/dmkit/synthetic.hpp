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
#include <string>
#include <vector>

#include "dmkit/dataset.hpp"
#include "dmkit/encoding.hpp"

namespace dmkit {

/// Labelled numeric data with known relevant features.
struct LabelledMatrix {
    Matrix x;
    std::vector<int> y;
    std::vector<std::size_t> informative;  ///< ascending column indices
};

/// Two classes split by x0 + x1 = 1 with a margin of 0.1 around the boundary.
/// All features are uniform on [0, 1); only columns 0 and 1 carry signal.
LabelledMatrix make_separable(std::size_t n_rows, std::size_t n_features, std::uint64_t seed);

/// Latent z ~ N(0, 1) per informative column, observed as 10 + z + 0.3 e with
/// e ~ N(0, 1); the label is 1 when the latents sum to a positive value. Noise
/// columns share the informative marginal. Informative columns are spread evenly.
LabelledMatrix make_recovery(std::size_t n_rows, std::size_t n_features,
                             std::size_t n_informative, std::uint64_t seed);

/// Numeric columns f0..f{p-1} plus a nominal target `label` with classes "0" and "1".
Dataset to_dataset(const LabelledMatrix& data);

/// Nominal data whose `marker` column equals `on` exactly when `class` is `pos`.
/// The other columns are uniform noise.
Dataset make_planted(std::size_t n_rows, std::size_t n_noise_columns, std::uint64_t seed);

/// Mixed-type survey with numeric, ordinal and nominal columns, missing cells, one
/// very sparse column, a pair of columns linked by construction and an ordinal
/// `health_state` target.
Dataset make_survey(std::size_t n_rows, std::uint64_t seed);

/// Triviality map text matching make_survey()'s linked columns.
std::string survey_triviality_map();

}  // namespace dmkit
