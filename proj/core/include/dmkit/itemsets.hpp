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
#include <iosfwd>
#include <vector>

#include "dmkit/transactions.hpp"

namespace dmkit {

struct FrequentItemset {
    std::vector<ItemId> items;  ///< strictly ascending, non-empty
    std::size_t support_count = 0;
    double support = 0.0;  ///< support_count / n_transactions

    friend bool operator==(const FrequentItemset&, const FrequentItemset&) = default;
};

struct MiningConfig {
    double min_support = 0.1;  ///< in (0, 1]
    std::size_t max_len = 2;   ///< >= 1
    unsigned threads = 1;

    /// Throws ArgumentError when a field is out of range.
    void validate() const;
};

/// Smallest count c >= 1 with c / n >= min_support, evaluated with the same
/// division that produces FrequentItemset::support, so the threshold is inclusive.
std::size_t min_support_count(double min_support, std::size_t n_transactions);

/// Orders by (size, lexicographic items). All miners return this order.
void sort_canonical(std::vector<FrequentItemset>& itemsets);

/// Level-wise candidate generation with prefix joins and subset pruning; supports
/// are counted by intersecting transaction bitsets.
std::vector<FrequentItemset> mine_apriori(const TransactionSet& tx, const MiningConfig& cfg);

/// Pattern growth over an FP-tree with conditional trees and a single-path shortcut.
std::vector<FrequentItemset> mine_fpgrowth(const TransactionSet& tx, const MiningConfig& cfg);

/// Exhaustive enumeration with direct per-transaction counting. Test oracle;
/// refuses more than 20 items.
std::vector<FrequentItemset> brute_force_itemsets(const TransactionSet& tx,
                                                  const MiningConfig& cfg);

/// Prefix tree over frequency-ordered transactions.
class FPTree {
public:
    struct Node {
        ItemId item;
        std::size_t count;
        std::size_t parent;  ///< index of parent node; root is node 0
        std::size_t next;    ///< next node carrying the same item, or npos
        std::vector<std::size_t> children;
    };
    struct HeaderEntry {
        ItemId item;
        std::size_t count;  ///< sum of counts along the item's node chain
        std::size_t head;   ///< first node of the chain
    };
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    FPTree();

    /// Tree over (itemset, multiplicity) paths keeping items with count >= min_count.
    static FPTree build(const std::vector<std::pair<std::vector<ItemId>, std::size_t>>& paths,
                        std::size_t min_count);
    static FPTree build(const TransactionSet& tx, std::size_t min_count);

    const std::vector<Node>& nodes() const noexcept { return nodes_; }
    /// Ordered by descending item count, ties by ascending item id.
    const std::vector<HeaderEntry>& header() const noexcept { return header_; }
    bool single_path() const;

private:
    void insert(const std::vector<ItemId>& ordered, std::size_t count);

    std::vector<Node> nodes_;
    std::vector<HeaderEntry> header_;
    std::vector<std::size_t> header_pos_;  ///< item id -> position in header_, or npos
};

/// `items;support_count;support` with space-joined `column=value` tokens.
void write_itemsets_csv(std::ostream& out, const std::vector<FrequentItemset>& itemsets,
                        const TransactionSet& tx);

}  // namespace dmkit
