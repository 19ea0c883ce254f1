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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dmkit/bitset.hpp"
#include "dmkit/dataset.hpp"

namespace dmkit {

using ItemId = std::size_t;

/// One (column, category) pair.
struct Item {
    std::size_t column;        ///< source column index
    std::string column_name;
    std::size_t category;      ///< category code within the column
    std::string label;

    /// `column=value` token used in reports.
    std::string token() const { return column_name + "=" + label; }
};

/// Horizontal and vertical bitset views of a transactional dataset.
class TransactionSet {
public:
    TransactionSet() = default;
    /// Item ids are the positions in `items`. Each row lists the item ids it contains.
    /// Throws PreconditionError if a row holds two items of the same source column.
    TransactionSet(std::vector<Item> items, const std::vector<std::vector<ItemId>>& rows);

    /// Test helper: one column per item name, each item labelled "1".
    static TransactionSet from_item_lists(const std::vector<std::string>& names,
                                          const std::vector<std::vector<ItemId>>& rows);

    std::size_t n_items() const noexcept { return items_.size(); }
    std::size_t n_transactions() const noexcept { return rows_.size(); }
    bool empty() const noexcept { return rows_.empty(); }

    const std::vector<Item>& items() const noexcept { return items_; }
    const Item& item(ItemId id) const { return items_.at(id); }

    /// Item bitset of transaction r (width n_items).
    const Bitset& transaction(std::size_t r) const { return rows_[r]; }
    /// Transaction bitset of item i (width n_transactions).
    const Bitset& tidset(ItemId i) const { return tidsets_[i]; }

    std::optional<ItemId> find(std::string_view column, std::string_view label) const;

    /// Number of transactions containing every item in `itemset`.
    std::size_t count(const std::vector<ItemId>& itemset) const;
    /// Transactions containing every item in `itemset` (all transactions when empty).
    Bitset cover(const std::vector<ItemId>& itemset) const;

    std::string format_itemset(const std::vector<ItemId>& itemset) const;

private:
    std::vector<Item> items_;
    std::vector<Bitset> rows_;
    std::vector<Bitset> tidsets_;
};

/// One item per (column, category) that occurs at least once, ordered by column
/// then category code. Every column must already be ordinal or nominal.
TransactionSet to_transactions(const Dataset& ds);

}  // namespace dmkit
