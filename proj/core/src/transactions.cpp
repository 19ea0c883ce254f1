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

#include "dmkit/transactions.hpp"

#include <map>

#include "dmkit/errors.hpp"

namespace dmkit {

TransactionSet::TransactionSet(std::vector<Item> items,
                               const std::vector<std::vector<ItemId>>& rows)
    : items_(std::move(items)) {
    rows_.reserve(rows.size());
    tidsets_.assign(items_.size(), Bitset(rows.size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        Bitset bits(items_.size());
        for (const auto id : rows[r]) {
            if (id >= items_.size())
                throw ArgumentError("transaction " + std::to_string(r) + " references item " +
                                    std::to_string(id) + " outside the dictionary");
            bits.set(id);
        }
        std::map<std::size_t, ItemId> per_column;
        for (const auto id : bits.indices()) {
            const auto [it, fresh] = per_column.emplace(items_[id].column, id);
            if (!fresh)
                throw PreconditionError("transaction " + std::to_string(r) + " holds items '" +
                                        items_[it->second].token() + "' and '" +
                                        items_[id].token() + "' of the same column");
            tidsets_[id].set(r);
        }
        rows_.push_back(std::move(bits));
    }
}

TransactionSet TransactionSet::from_item_lists(const std::vector<std::string>& names,
                                               const std::vector<std::vector<ItemId>>& rows) {
    std::vector<Item> items;
    for (std::size_t i = 0; i < names.size(); ++i) items.push_back({i, names[i], 0, "1"});
    return TransactionSet(std::move(items), rows);
}

std::optional<ItemId> TransactionSet::find(std::string_view column,
                                           std::string_view label) const {
    for (ItemId i = 0; i < items_.size(); ++i)
        if (items_[i].column_name == column && items_[i].label == label) return i;
    return std::nullopt;
}

std::size_t TransactionSet::count(const std::vector<ItemId>& itemset) const {
    if (itemset.empty()) return rows_.size();
    if (itemset.size() == 1) return tidsets_[itemset[0]].count();
    if (itemset.size() == 2) return tidsets_[itemset[0]].count_and(tidsets_[itemset[1]]);
    return cover(itemset).count();
}

Bitset TransactionSet::cover(const std::vector<ItemId>& itemset) const {
    Bitset out(rows_.size());
    if (itemset.empty()) {
        out.set_all();
        return out;
    }
    out = tidsets_[itemset[0]];
    for (std::size_t k = 1; k < itemset.size(); ++k) out &= tidsets_[itemset[k]];
    return out;
}

std::string TransactionSet::format_itemset(const std::vector<ItemId>& itemset) const {
    std::string out;
    for (std::size_t k = 0; k < itemset.size(); ++k) {
        if (k) out += ' ';
        out += items_[itemset[k]].token();
    }
    return out;
}

TransactionSet to_transactions(const Dataset& ds) {
    for (const auto& col : ds.schema())
        if (!col.categorical())
            throw PreconditionError("column '" + col.name +
                                    "' is numeric; discretize before building transactions");

    // Dense ids only for categories that actually occur.
    std::vector<std::vector<ItemId>> item_of(ds.n_columns());
    std::vector<Item> items;
    for (std::size_t c = 0; c < ds.n_columns(); ++c) {
        const auto& col = ds.column(c);
        std::vector<bool> seen(col.categories.size(), false);
        for (const auto& row : ds.rows())
            if (row[c]) seen[static_cast<std::size_t>(*row[c])] = true;
        item_of[c].assign(col.categories.size(), 0);
        for (std::size_t k = 0; k < col.categories.size(); ++k) {
            if (!seen[k]) continue;
            item_of[c][k] = items.size();
            items.push_back({c, col.name, k, col.categories[k]});
        }
    }

    std::vector<std::vector<ItemId>> rows;
    rows.reserve(ds.n_rows());
    for (const auto& row : ds.rows()) {
        std::vector<ItemId> ids;
        for (std::size_t c = 0; c < ds.n_columns(); ++c)
            if (row[c]) ids.push_back(item_of[c][static_cast<std::size_t>(*row[c])]);
        rows.push_back(std::move(ids));
    }
    return TransactionSet(std::move(items), rows);
}

}  // namespace dmkit
