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
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "dmkit/errors.hpp"
#include "dmkit/transactions.hpp"

namespace dmkit {

class GrammarError : public Error {
public:
    GrammarError(std::size_t line, const std::string& what)
        : Error(Category::config, what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

struct Symbol {
    enum class Kind { terminal, nonterminal, schema };
    Kind kind = Kind::terminal;
    std::string text;  ///< non-terminals keep their angle brackets

    friend bool operator==(const Symbol&, const Symbol&) = default;
};

using Production = std::vector<Symbol>;

/// BNF grammar, one production per line: `<nt> ::= alt1 | alt2`.
///
/// An alternative consisting of the single token `%schema` is a placeholder that
/// bind_schema() replaces with one alternative `column <op> value` per item of a
/// transaction set (the target column excluded), so `<op>` must be defined.
struct Grammar {
    std::map<std::string, std::vector<Production>> productions;
    std::string start_symbol;  ///< left-hand side of the first production

    std::size_t n_nonterminals() const noexcept { return productions.size(); }
    bool has_schema_placeholder() const;

    /// True when `tokens` is a sentence of the start symbol.
    bool derives(const std::vector<std::string>& tokens) const;
};

/// Validates that every referenced non-terminal is defined, that no production is
/// empty and that every non-terminal has a terminating derivation.
Grammar parse_grammar(std::string_view text);

/// Expands `%schema` placeholders from the items of `tx`, skipping the target column.
Grammar bind_schema(const Grammar& grammar, const TransactionSet& tx, std::size_t target_column);

/// Grammar text used when no grammar file is given.
std::string_view default_rule_grammar();

struct Genotype {
    std::vector<std::uint32_t> codons;

    friend bool operator==(const Genotype&, const Genotype&) = default;
};

struct MappingResult {
    bool ok = false;
    std::vector<std::string> terminals;  ///< phenotype tokens, valid when ok
    std::size_t codons_used = 0;
    std::size_t wraps = 0;
};

/// Leftmost derivation. A choice among n > 1 alternatives consumes the next codon c
/// and takes alternative c mod n; single alternatives consume nothing. The codon
/// vector is reread up to max_wraps extra times before the mapping fails.
MappingResult map_genotype(const Genotype& genotype, const Grammar& grammar,
                           std::size_t max_wraps);

}  // namespace dmkit
