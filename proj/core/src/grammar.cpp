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

#include "dmkit/grammar.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace dmkit {

namespace {

constexpr std::string_view kSchemaToken = "%schema";
constexpr std::size_t kMaxDerivationSymbols = 100000;

bool is_nonterminal(std::string_view token) {
    return token.size() > 2 && token.front() == '<' && token.back() == '>';
}

std::vector<std::string> tokenize(std::string_view s) {
    std::vector<std::string> out;
    std::istringstream in{std::string(s)};
    std::string token;
    while (in >> token) out.push_back(token);
    return out;
}

}  // namespace

std::string_view default_rule_grammar() {
    return "# Class association rules: conjunctions of attribute tests.\n"
           "<rule> ::= <cond> | <cond> AND <rule>\n"
           "<cond> ::= %schema\n"
           "<op> ::= == | !=\n";
}

bool Grammar::has_schema_placeholder() const {
    for (const auto& [nt, alts] : productions)
        for (const auto& alt : alts)
            for (const auto& sym : alt)
                if (sym.kind == Symbol::Kind::schema) return true;
    return false;
}

Grammar parse_grammar(std::string_view text) {
    Grammar g;
    std::map<std::string, std::size_t> defined_on;
    std::vector<std::pair<std::string, std::size_t>> references;
    bool uses_schema = false;
    std::size_t schema_line = 0;

    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string_view::npos || line[first] == '#') continue;

        const auto arrow = line.find("::=");
        if (arrow == std::string_view::npos)
            throw GrammarError(line_no, "grammar line " + std::to_string(line_no) + ": missing '::='");
        const auto lhs_tokens = tokenize(line.substr(0, arrow));
        if (lhs_tokens.size() != 1 || !is_nonterminal(lhs_tokens[0]))
            throw GrammarError(line_no, "grammar line " + std::to_string(line_no) +
                                            ": left-hand side must be a single <non-terminal>");
        const std::string lhs = lhs_tokens[0];
        if (defined_on.contains(lhs))
            throw GrammarError(line_no, "grammar line " + std::to_string(line_no) + ": " + lhs +
                                            " already defined on line " +
                                            std::to_string(defined_on[lhs]));
        defined_on[lhs] = line_no;
        if (g.start_symbol.empty()) g.start_symbol = lhs;

        std::vector<Production> alternatives;
        std::string_view rhs = line.substr(arrow + 3);
        for (;;) {
            const auto bar = rhs.find('|');
            const auto tokens = tokenize(rhs.substr(0, bar));
            if (tokens.empty())
                throw GrammarError(line_no, "grammar line " + std::to_string(line_no) +
                                                ": empty alternative for " + lhs);
            Production alt;
            for (const auto& t : tokens) {
                if (t == kSchemaToken) {
                    if (tokens.size() != 1)
                        throw GrammarError(line_no, "grammar line " + std::to_string(line_no) +
                                                        ": %schema must stand alone in its alternative");
                    alt.push_back({Symbol::Kind::schema, t});
                    uses_schema = true;
                    schema_line = line_no;
                } else if (is_nonterminal(t)) {
                    alt.push_back({Symbol::Kind::nonterminal, t});
                    references.emplace_back(t, line_no);
                } else {
                    alt.push_back({Symbol::Kind::terminal, t});
                }
            }
            alternatives.push_back(std::move(alt));
            if (bar == std::string_view::npos) break;
            rhs = rhs.substr(bar + 1);
        }
        g.productions[lhs] = std::move(alternatives);
    }

    if (g.productions.empty()) throw GrammarError(0, "grammar defines no productions");
    if (uses_schema) references.emplace_back("<op>", schema_line);
    for (const auto& [nt, line] : references)
        if (!g.productions.contains(nt))
            throw GrammarError(line, "grammar line " + std::to_string(line) +
                                         ": undefined non-terminal " + nt);

    // Fixpoint over non-terminals that can derive a finite terminal string.
    std::set<std::string> terminating;
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& [nt, alts] : g.productions) {
            if (terminating.contains(nt)) continue;
            const bool ok = std::any_of(alts.begin(), alts.end(), [&](const Production& alt) {
                return std::all_of(alt.begin(), alt.end(), [&](const Symbol& s) {
                    return s.kind != Symbol::Kind::nonterminal || terminating.contains(s.text);
                });
            });
            if (ok) {
                terminating.insert(nt);
                changed = true;
            }
        }
    }
    for (const auto& [nt, alts] : g.productions)
        if (!terminating.contains(nt))
            throw GrammarError(defined_on[nt], "non-terminal " + nt + " never terminates");
    return g;
}

Grammar bind_schema(const Grammar& grammar, const TransactionSet& tx, std::size_t target_column) {
    std::vector<Production> tests;
    for (const auto& item : tx.items()) {
        if (item.column == target_column) continue;
        tests.push_back({{Symbol::Kind::terminal, item.column_name},
                         {Symbol::Kind::nonterminal, "<op>"},
                         {Symbol::Kind::terminal, item.label}});
    }
    Grammar bound;
    bound.start_symbol = grammar.start_symbol;
    for (const auto& [nt, alts] : grammar.productions) {
        std::vector<Production> expanded;
        for (const auto& alt : alts) {
            if (alt.size() == 1 && alt[0].kind == Symbol::Kind::schema)
                expanded.insert(expanded.end(), tests.begin(), tests.end());
            else
                expanded.push_back(alt);
        }
        if (expanded.empty())
            throw GrammarError(0, "schema expansion left " + nt +
                                      " without alternatives (no non-target items)");
        bound.productions[nt] = std::move(expanded);
    }
    return bound;
}

bool Grammar::derives(const std::vector<std::string>& tokens) const {
    // Memoized set-of-end-positions recognizer; left recursion yields no parse.
    std::map<std::pair<std::string, std::size_t>, std::set<std::size_t>> memo;
    std::set<std::pair<std::string, std::size_t>> active;
    std::function<std::set<std::size_t>(const Symbol&, std::size_t)> ends =
        [&](const Symbol& sym, std::size_t pos) -> std::set<std::size_t> {
        if (sym.kind == Symbol::Kind::schema) return {};
        if (sym.kind == Symbol::Kind::terminal) {
            if (pos < tokens.size() && tokens[pos] == sym.text) return {pos + 1};
            return {};
        }
        const auto key = std::pair{sym.text, pos};
        if (const auto it = memo.find(key); it != memo.end()) return it->second;
        if (!active.insert(key).second) return {};
        std::set<std::size_t> result;
        for (const auto& alt : productions.at(sym.text)) {
            std::set<std::size_t> frontier{pos};
            for (const auto& s : alt) {
                std::set<std::size_t> next;
                for (auto p : frontier) {
                    const auto e = ends(s, p);
                    next.insert(e.begin(), e.end());
                }
                frontier = std::move(next);
                if (frontier.empty()) break;
            }
            result.insert(frontier.begin(), frontier.end());
        }
        active.erase(key);
        memo[key] = result;
        return result;
    };
    return ends({Symbol::Kind::nonterminal, start_symbol}, 0).contains(tokens.size());
}

MappingResult map_genotype(const Genotype& genotype, const Grammar& grammar,
                           std::size_t max_wraps) {
    MappingResult result;
    std::vector<const Symbol*> stack;
    const Symbol start{Symbol::Kind::nonterminal, grammar.start_symbol};
    stack.push_back(&start);
    std::size_t position = 0;
    std::size_t expanded = 0;
    const std::size_t length = genotype.codons.size();

    while (!stack.empty()) {
        const Symbol* sym = stack.back();
        stack.pop_back();
        if (sym->kind == Symbol::Kind::terminal) {
            result.terminals.push_back(sym->text);
            continue;
        }
        if (sym->kind == Symbol::Kind::schema || ++expanded > kMaxDerivationSymbols) return result;
        const auto& alts = grammar.productions.at(sym->text);
        std::size_t choice = 0;
        if (alts.size() > 1) {
            if (length == 0) return result;
            if (position == length) {
                if (result.wraps == max_wraps) return result;
                ++result.wraps;
                position = 0;
            }
            choice = genotype.codons[position++] % alts.size();
            ++result.codons_used;
        }
        const auto& alt = alts[choice];
        for (auto it = alt.rbegin(); it != alt.rend(); ++it) stack.push_back(&*it);
    }
    result.ok = true;
    return result;
}

}  // namespace dmkit
