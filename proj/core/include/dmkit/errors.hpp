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
#include <stdexcept>
#include <string>

namespace dmkit {

/// Base of every error the toolkit throws. The category decides the CLI exit code.
class Error : public std::runtime_error {
public:
    enum class Category { config = 1, data = 2, internal = 3 };

    Error(Category category, const std::string& what)
        : std::runtime_error(what), category_(category) {}

    Category category() const noexcept { return category_; }
    int exit_code() const noexcept { return static_cast<int>(category_); }

private:
    Category category_;
};

/// Bad parameters or configuration supplied by the caller.
class ArgumentError : public Error {
public:
    explicit ArgumentError(const std::string& what) : Error(Category::config, what) {}
};

/// Schema text or CSV header does not agree with the declared columns.
class SchemaError : public Error {
public:
    SchemaError(const std::string& column, const std::string& what)
        : Error(Category::data, what), column_(column) {}
    const std::string& column() const noexcept { return column_; }

private:
    std::string column_;
};

/// A single CSV cell that cannot be interpreted under its column schema.
/// Row and column are zero-based data coordinates (header excluded).
class CellError : public Error {
public:
    CellError(std::size_t row, std::size_t column, const std::string& what)
        : Error(Category::data, what), row_(row), column_(column) {}
    std::size_t row() const noexcept { return row_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t row_;
    std::size_t column_;
};

/// The input is well-formed but violates an operation's precondition.
class PreconditionError : public Error {
public:
    explicit PreconditionError(const std::string& what) : Error(Category::data, what) {}
};

/// Internal invariant broken (e.g. non-downward-closed itemsets fed to rule generation).
class ConsistencyError : public Error {
public:
    explicit ConsistencyError(const std::string& what) : Error(Category::internal, what) {}
};

}  // namespace dmkit
