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

#include "dmkit/rules.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

#include "dmkit/errors.hpp"
#include "dmkit/parallel.hpp"

namespace dmkit {

AssociationRule make_rule(std::vector<ItemId> antecedent, std::vector<ItemId> consequent,
                          std::size_t support_count, std::size_t antecedent_count,
                          std::size_t consequent_count, std::size_t n) {
    AssociationRule rule;
    rule.antecedent = std::move(antecedent);
    rule.consequent = std::move(consequent);
    rule.support_count = support_count;
    rule.antecedent_count = antecedent_count;
    rule.consequent_count = consequent_count;
    rule.n_transactions = n;
    const auto dn = static_cast<double>(n);
    rule.support = static_cast<double>(support_count) / dn;
    rule.antecedent_support = static_cast<double>(antecedent_count) / dn;
    rule.consequent_support = static_cast<double>(consequent_count) / dn;
    rule.confidence = static_cast<double>(support_count) / static_cast<double>(antecedent_count);
    rule.lift = rule.support / (rule.antecedent_support * rule.consequent_support);
    return rule;
}

RuleMetrics compute_metrics(const std::vector<ItemId>& x, const std::vector<ItemId>& y,
                            const TransactionSet& tx) {
    if (x.empty() || y.empty()) throw ArgumentError("rule sides must be non-empty");
    for (auto i : x)
        if (std::find(y.begin(), y.end(), i) != y.end())
            throw ArgumentError("antecedent and consequent share item " + tx.item(i).token());
    if (tx.empty()) throw ArgumentError("empty transaction set");
    const Bitset cover_x = tx.cover(x);
    const Bitset cover_y = tx.cover(y);
    const std::size_t nx = cover_x.count();
    const std::size_t ny = cover_y.count();
    if (nx == 0) throw PreconditionError("Support(X) is zero; confidence undefined");
    if (ny == 0) throw PreconditionError("Support(Y) is zero; lift undefined");
    const auto r = make_rule(x, y, cover_x.count_and(cover_y), nx, ny, tx.n_transactions());
    return {r.support, r.confidence, r.lift, r.antecedent_support, r.consequent_support};
}

std::vector<AssociationRule> generate_rules(const std::vector<FrequentItemset>& frequent,
                                            const TransactionSet& tx, double min_confidence,
                                            unsigned threads) {
    std::map<std::vector<ItemId>, std::size_t> counts;
    for (const auto& fi : frequent) counts.emplace(fi.items, fi.support_count);
    const std::size_t n = tx.n_transactions();

    auto lookup = [&](const std::vector<ItemId>& items) {
        const auto it = counts.find(items);
        if (it == counts.end())
            throw ConsistencyError("itemset {" + tx.format_itemset(items) +
                                   "} missing from frequent itemsets; input is not downward closed");
        return it->second;
    };

    std::vector<std::vector<AssociationRule>> parts(frequent.size());
    parallel_for(frequent.size(), threads, [&](std::size_t f) {
        const auto& z = frequent[f].items;
        if (z.size() < 2) return;
        if (z.size() > 20) throw ArgumentError("itemset too large to split into rules");
        std::vector<std::vector<ItemId>> antecedents;
        for (std::uint32_t mask = 1; mask + 1 < (std::uint32_t{1} << z.size()); ++mask) {
            std::vector<ItemId> a;
            for (std::size_t i = 0; i < z.size(); ++i)
                if (mask >> i & 1u) a.push_back(z[i]);
            antecedents.push_back(std::move(a));
        }
        std::sort(antecedents.begin(), antecedents.end(), [](const auto& l, const auto& r) {
            return l.size() != r.size() ? l.size() < r.size() : l < r;
        });
        for (auto& a : antecedents) {
            std::vector<ItemId> c;
            std::set_difference(z.begin(), z.end(), a.begin(), a.end(), std::back_inserter(c));
            const std::size_t na = lookup(a);
            const std::size_t nc = lookup(c);
            const std::size_t nz = frequent[f].support_count;
            if (static_cast<double>(nz) / static_cast<double>(na) < min_confidence) continue;
            parts[f].push_back(make_rule(std::move(a), std::move(c), nz, na, nc, n));
        }
    });

    std::vector<AssociationRule> rules;
    for (auto& part : parts)
        rules.insert(rules.end(), std::make_move_iterator(part.begin()),
                     std::make_move_iterator(part.end()));
    return rules;
}

void FilterConfig::validate() const {
    auto ratio = [](double v, const char* name) {
        if (!(v >= 0.0 && v <= 1.0)) throw ArgumentError(std::string(name) + " must lie in [0, 1]");
    };
    ratio(min_confidence, "min_confidence");
    ratio(max_antecedent_support, "max_antecedent_support");
    ratio(max_consequent_support, "max_consequent_support");
    if (!(min_lift >= 0.0)) throw ArgumentError("min_lift must be non-negative");
}

std::vector<AssociationRule> filter_rules(const std::vector<AssociationRule>& rules,
                                          const FilterConfig& cfg) {
    cfg.validate();
    std::vector<AssociationRule> out;
    std::copy_if(rules.begin(), rules.end(), std::back_inserter(out), [&](const auto& r) {
        return r.confidence >= cfg.min_confidence && r.lift >= cfg.min_lift &&
               r.antecedent_support <= cfg.max_antecedent_support &&
               r.consequent_support <= cfg.max_consequent_support;
    });
    return out;
}

void TrivialityMap::link(const std::string& a, const std::string& b) {
    if (a == b) throw ArgumentError("triviality map cannot link column '" + a + "' to itself");
    pairs_.insert(a < b ? std::pair{a, b} : std::pair{b, a});
}

bool TrivialityMap::linked(const std::string& a, const std::string& b) const {
    return pairs_.contains(a < b ? std::pair{a, b} : std::pair{b, a});
}

TrivialityMap TrivialityMap::parse(std::string_view text) {
    TrivialityMap map;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        if (b == std::string::npos) return std::string{};
        return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
    };
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line.front() == '#') continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
            throw ArgumentError("triviality map line " + std::to_string(line_no) +
                                ": expected columnA,columnB");
        map.link(trim(line.substr(0, comma)), trim(line.substr(comma + 1)));
    }
    return map;
}

TrivialityMap TrivialityMap::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ArgumentError("cannot open triviality map " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

TrivialFilterResult trivial_filter(const std::vector<AssociationRule>& rules,
                                   const TrivialityMap& map, const TransactionSet& tx) {
    TrivialFilterResult result;
    for (const auto& rule : rules) {
        bool trivial = false;
        for (auto a : rule.antecedent) {
            for (auto c : rule.consequent) {
                const auto& ia = tx.item(a);
                const auto& ic = tx.item(c);
                if (ia.column == ic.column || map.linked(ia.column_name, ic.column_name)) {
                    trivial = true;
                    break;
                }
            }
            if (trivial) break;
        }
        if (trivial)
            ++result.removed;
        else
            result.rules.push_back(rule);
    }
    return result;
}

std::vector<AssociationRule> sort_by_lift(std::vector<AssociationRule> rules) {
    std::sort(rules.begin(), rules.end(), [](const auto& a, const auto& b) {
        return std::tie(b.lift, b.confidence, b.support, a.antecedent, a.consequent) <
               std::tie(a.lift, a.confidence, a.support, b.antecedent, b.consequent);
    });
    return rules;
}

void write_rules_csv(std::ostream& out, const std::vector<AssociationRule>& rules,
                     const TransactionSet& tx) {
    out << "antecedent;consequent;support;confidence;lift;antecedent_support;consequent_support\n";
    for (const auto& r : rules)
        out << csv_escape(tx.format_itemset(r.antecedent), ';') << ';'
            << csv_escape(tx.format_itemset(r.consequent), ';') << ';' << format_number(r.support)
            << ';' << format_number(r.confidence) << ';' << format_number(r.lift) << ';'
            << format_number(r.antecedent_support) << ';' << format_number(r.consequent_support)
            << '\n';
}

}  // namespace dmkit
