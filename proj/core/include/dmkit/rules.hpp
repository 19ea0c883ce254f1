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
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dmkit/itemsets.hpp"
#include "dmkit/transactions.hpp"

namespace dmkit {

struct AssociationRule {
    std::vector<ItemId> antecedent;  ///< X, ascending
    std::vector<ItemId> consequent;  ///< Y, ascending, disjoint from X
    std::size_t support_count = 0;   ///< transactions containing X and Y
    std::size_t antecedent_count = 0;
    std::size_t consequent_count = 0;
    std::size_t n_transactions = 0;

    double support = 0.0;
    double confidence = 0.0;  ///< Support(X,Y) / Support(X)
    double lift = 0.0;        ///< Support(X,Y) / (Support(X) * Support(Y))
    double antecedent_support = 0.0;
    double consequent_support = 0.0;

    friend bool operator==(const AssociationRule&, const AssociationRule&) = default;
};

/// Builds a rule with every metric derived from the integer counts.
AssociationRule make_rule(std::vector<ItemId> antecedent, std::vector<ItemId> consequent,
                          std::size_t support_count, std::size_t antecedent_count,
                          std::size_t consequent_count, std::size_t n_transactions);

struct RuleMetrics {
    double support;
    double confidence;
    double lift;
    double antecedent_support;
    double consequent_support;
};

/// Metrics by direct bitset counting. Throws ArgumentError for empty or
/// overlapping itemsets and PreconditionError when Support(X) or Support(Y) is zero.
RuleMetrics compute_metrics(const std::vector<ItemId>& x, const std::vector<ItemId>& y,
                            const TransactionSet& tx);

/// Every split A -> Z\A of each itemset Z (|Z| >= 2) whose confidence reaches
/// min_confidence. Supports are looked up in `frequent`; a missing subset raises
/// ConsistencyError. Rules come out in itemset order, then by antecedent size
/// and lexicographic antecedent.
std::vector<AssociationRule> generate_rules(const std::vector<FrequentItemset>& frequent,
                                            const TransactionSet& tx, double min_confidence,
                                            unsigned threads = 1);

struct FilterConfig {
    double min_confidence = 0.0;
    double min_lift = 0.0;
    double max_antecedent_support = 1.0;
    double max_consequent_support = 1.0;
    bool apply_trivial_filter = false;

    void validate() const;
};

std::vector<AssociationRule> filter_rules(const std::vector<AssociationRule>& rules,
                                          const FilterConfig& cfg);

/// Unordered pairs of column names whose co-occurrence in a rule is uninformative.
class TrivialityMap {
public:
    TrivialityMap() = default;
    /// Throws ArgumentError on a self-pair.
    void link(const std::string& a, const std::string& b);
    bool linked(const std::string& a, const std::string& b) const;
    std::size_t size() const noexcept { return pairs_.size(); }

    /// One `columnA,columnB` pair per line; blank lines and '#' comments ignored.
    static TrivialityMap parse(std::string_view text);
    static TrivialityMap load(const std::filesystem::path& path);

private:
    std::set<std::pair<std::string, std::string>> pairs_;
};

struct TrivialFilterResult {
    std::vector<AssociationRule> rules;
    std::size_t removed = 0;
};

/// Drops a rule when an antecedent item and a consequent item share a source
/// column or their columns are linked in `map`.
TrivialFilterResult trivial_filter(const std::vector<AssociationRule>& rules,
                                   const TrivialityMap& map, const TransactionSet& tx);

/// Descending lift, then confidence, then support; then ascending antecedent and
/// consequent item ids.
std::vector<AssociationRule> sort_by_lift(std::vector<AssociationRule> rules);

/// `antecedent;consequent;support;confidence;lift;antecedent_support;consequent_support`
void write_rules_csv(std::ostream& out, const std::vector<AssociationRule>& rules,
                     const TransactionSet& tx);

}  // namespace dmkit
