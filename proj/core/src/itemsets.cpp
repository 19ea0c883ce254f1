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

#include "dmkit/itemsets.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <ostream>
#include <set>

#include "dmkit/errors.hpp"
#include "dmkit/parallel.hpp"

namespace dmkit {

void MiningConfig::validate() const {
    if (!(min_support > 0.0 && min_support <= 1.0))
        throw ArgumentError("min_support must lie in (0, 1]");
    if (max_len < 1) throw ArgumentError("max_len must be >= 1");
}

std::size_t min_support_count(double min_support, std::size_t n) {
    if (n == 0) return 1;
    const auto ratio = [n](std::size_t c) {
        return static_cast<double>(c) / static_cast<double>(n);
    };
    auto c = static_cast<std::size_t>(std::max(1.0, std::ceil(min_support * static_cast<double>(n))));
    while (c > 1 && ratio(c - 1) >= min_support) --c;
    while (c <= n && ratio(c) < min_support) ++c;
    return c;
}

void sort_canonical(std::vector<FrequentItemset>& itemsets) {
    std::sort(itemsets.begin(), itemsets.end(), [](const auto& a, const auto& b) {
        if (a.items.size() != b.items.size()) return a.items.size() < b.items.size();
        return a.items < b.items;
    });
}

namespace {

FrequentItemset make_itemset(std::vector<ItemId> items, std::size_t count, std::size_t n) {
    return {std::move(items), count, static_cast<double>(count) / static_cast<double>(n)};
}

void check_input(const TransactionSet& tx, const MiningConfig& cfg) {
    cfg.validate();
    if (tx.empty()) throw ArgumentError("cannot mine an empty transaction set");
}

}  // namespace

std::vector<FrequentItemset> mine_apriori(const TransactionSet& tx, const MiningConfig& cfg) {
    check_input(tx, cfg);
    const std::size_t n = tx.n_transactions();
    const std::size_t min_count = min_support_count(cfg.min_support, n);

    std::vector<FrequentItemset> result;
    struct Level {
        std::vector<std::vector<ItemId>> itemsets;  // lexicographically sorted
        std::vector<Bitset> covers;
    };
    Level level;
    for (ItemId i = 0; i < tx.n_items(); ++i) {
        const auto count = tx.tidset(i).count();
        if (count < min_count) continue;
        level.itemsets.push_back({i});
        level.covers.push_back(tx.tidset(i));
        result.push_back(make_itemset({i}, count, n));
    }

    for (std::size_t k = 2; k <= cfg.max_len && level.itemsets.size() > 1; ++k) {
        const std::set<std::vector<ItemId>> previous(level.itemsets.begin(),
                                                     level.itemsets.end());
        // Join pairs sharing the first k-2 items; prune when any (k-1)-subset is infrequent.
        struct Candidate {
            std::vector<ItemId> items;
            std::size_t parent;
        };
        std::vector<Candidate> candidates;
        for (std::size_t a = 0; a < level.itemsets.size(); ++a) {
            const auto& left = level.itemsets[a];
            for (std::size_t b = a + 1; b < level.itemsets.size(); ++b) {
                const auto& right = level.itemsets[b];
                if (!std::equal(left.begin(), left.end() - 1, right.begin())) break;
                auto joined = left;
                joined.push_back(right.back());
                bool keep = true;
                for (std::size_t drop = 0; drop + 2 < joined.size() && keep; ++drop) {
                    auto subset = joined;
                    subset.erase(subset.begin() + static_cast<std::ptrdiff_t>(drop));
                    keep = previous.contains(subset);
                }
                if (keep) candidates.push_back({std::move(joined), a});
            }
        }

        std::vector<Bitset> covers(candidates.size());
        std::vector<std::size_t> counts(candidates.size());
        parallel_for(candidates.size(), cfg.threads, [&](std::size_t c) {
            covers[c] = level.covers[candidates[c].parent];
            covers[c] &= tx.tidset(candidates[c].items.back());
            counts[c] = covers[c].count();
        });

        Level next;
        for (std::size_t c = 0; c < candidates.size(); ++c) {
            if (counts[c] < min_count) continue;
            result.push_back(make_itemset(candidates[c].items, counts[c], n));
            next.itemsets.push_back(std::move(candidates[c].items));
            next.covers.push_back(std::move(covers[c]));
        }
        level = std::move(next);
    }
    sort_canonical(result);
    return result;
}

FPTree::FPTree() { nodes_.push_back({FPTree::npos, 0, FPTree::npos, FPTree::npos, {}}); }

FPTree FPTree::build(const std::vector<std::pair<std::vector<ItemId>, std::size_t>>& paths,
                     std::size_t min_count) {
    std::map<ItemId, std::size_t> freq;
    for (const auto& [items, count] : paths)
        for (auto i : items) freq[i] += count;

    FPTree tree;
    for (const auto& [item, count] : freq)
        if (count >= min_count) tree.header_.push_back({item, count, npos});
    std::stable_sort(tree.header_.begin(), tree.header_.end(),
                     [](const HeaderEntry& a, const HeaderEntry& b) { return a.count > b.count; });
    ItemId max_item = 0;
    for (const auto& h : tree.header_) max_item = std::max(max_item, h.item);
    tree.header_pos_.assign(tree.header_.empty() ? 0 : max_item + 1, npos);
    for (std::size_t p = 0; p < tree.header_.size(); ++p)
        tree.header_pos_[tree.header_[p].item] = p;

    std::vector<ItemId> ordered;
    for (const auto& [items, count] : paths) {
        ordered.clear();
        for (auto i : items)
            if (i < tree.header_pos_.size() && tree.header_pos_[i] != npos) ordered.push_back(i);
        std::sort(ordered.begin(), ordered.end(), [&](ItemId a, ItemId b) {
            return tree.header_pos_[a] < tree.header_pos_[b];
        });
        if (!ordered.empty()) tree.insert(ordered, count);
    }
    return tree;
}

FPTree FPTree::build(const TransactionSet& tx, std::size_t min_count) {
    std::vector<std::pair<std::vector<ItemId>, std::size_t>> paths;
    paths.reserve(tx.n_transactions());
    for (std::size_t r = 0; r < tx.n_transactions(); ++r)
        paths.emplace_back(tx.transaction(r).indices(), 1);
    return build(paths, min_count);
}

void FPTree::insert(const std::vector<ItemId>& ordered, std::size_t count) {
    std::size_t node = 0;
    for (auto item : ordered) {
        std::size_t child = npos;
        for (auto c : nodes_[node].children)
            if (nodes_[c].item == item) {
                child = c;
                break;
            }
        if (child == npos) {
            child = nodes_.size();
            auto& entry = header_[header_pos_[item]];
            nodes_.push_back({item, 0, node, entry.head, {}});
            entry.head = child;
            nodes_[node].children.push_back(child);
        }
        nodes_[child].count += count;
        node = child;
    }
}

bool FPTree::single_path() const {
    for (const auto& node : nodes_)
        if (node.children.size() > 1) return false;
    return true;
}

namespace {

struct GrowthContext {
    std::size_t min_count;
    std::size_t max_len;
    std::size_t n;
};

void emit_single_path(const FPTree& tree, const std::vector<ItemId>& suffix,
                      const GrowthContext& ctx, std::vector<FrequentItemset>& out) {
    // Path nodes from the root down; counts are non-increasing along the path.
    std::vector<std::size_t> path;
    for (std::size_t node = 0; !tree.nodes()[node].children.empty();)
        path.push_back(node = tree.nodes()[node].children.front());
    const std::size_t room = ctx.max_len - suffix.size();

    // Choose subsets of the path by recursion over positions; the support is the
    // count of the deepest chosen node.
    std::vector<std::size_t> chosen;
    auto recurse = [&](auto&& self, std::size_t start) -> void {
        for (std::size_t p = start; p < path.size(); ++p) {
            const auto& node = tree.nodes()[path[p]];
            if (node.count < ctx.min_count) break;
            chosen.push_back(p);
            auto items = suffix;
            for (auto q : chosen) items.push_back(tree.nodes()[path[q]].item);
            std::sort(items.begin(), items.end());
            out.push_back(make_itemset(std::move(items), node.count, ctx.n));
            if (chosen.size() < room) self(self, p + 1);
            chosen.pop_back();
        }
    };
    recurse(recurse, 0);
}

void grow(const FPTree& tree, const std::vector<ItemId>& suffix, const GrowthContext& ctx,
          std::vector<FrequentItemset>& out);

void grow_item(const FPTree& tree, std::size_t header_index, const std::vector<ItemId>& suffix,
               const GrowthContext& ctx, std::vector<FrequentItemset>& out) {
    const auto& entry = tree.header()[header_index];
    auto itemset = suffix;
    itemset.push_back(entry.item);
    {
        auto sorted = itemset;
        std::sort(sorted.begin(), sorted.end());
        out.push_back(make_itemset(std::move(sorted), entry.count, ctx.n));
    }
    if (itemset.size() >= ctx.max_len) return;

    std::vector<std::pair<std::vector<ItemId>, std::size_t>> base;
    for (auto node = entry.head; node != FPTree::npos; node = tree.nodes()[node].next) {
        std::vector<ItemId> prefix;
        for (auto up = tree.nodes()[node].parent; up != 0; up = tree.nodes()[up].parent)
            prefix.push_back(tree.nodes()[up].item);
        if (!prefix.empty()) base.emplace_back(std::move(prefix), tree.nodes()[node].count);
    }
    if (base.empty()) return;
    const auto conditional = FPTree::build(base, ctx.min_count);
    if (!conditional.header().empty()) grow(conditional, itemset, ctx, out);
}

void grow(const FPTree& tree, const std::vector<ItemId>& suffix, const GrowthContext& ctx,
          std::vector<FrequentItemset>& out) {
    if (tree.single_path()) {
        emit_single_path(tree, suffix, ctx, out);
        return;
    }
    for (std::size_t h = tree.header().size(); h-- > 0;) grow_item(tree, h, suffix, ctx, out);
}

}  // namespace

std::vector<FrequentItemset> mine_fpgrowth(const TransactionSet& tx, const MiningConfig& cfg) {
    check_input(tx, cfg);
    const GrowthContext ctx{min_support_count(cfg.min_support, tx.n_transactions()), cfg.max_len,
                            tx.n_transactions()};
    const auto tree = FPTree::build(tx, ctx.min_count);

    std::vector<FrequentItemset> result;
    if (tree.single_path()) {
        emit_single_path(tree, {}, ctx, result);
    } else {
        // Header items are independent sub-problems.
        std::vector<std::vector<FrequentItemset>> parts(tree.header().size());
        parallel_for(parts.size(), cfg.threads,
                     [&](std::size_t h) { grow_item(tree, h, {}, ctx, parts[h]); });
        for (auto& part : parts)
            result.insert(result.end(), std::make_move_iterator(part.begin()),
                          std::make_move_iterator(part.end()));
    }
    sort_canonical(result);
    return result;
}

std::vector<FrequentItemset> brute_force_itemsets(const TransactionSet& tx,
                                                  const MiningConfig& cfg) {
    check_input(tx, cfg);
    const std::size_t n_items = tx.n_items();
    if (n_items > 20)
        throw ArgumentError("brute_force_itemsets refuses " + std::to_string(n_items) +
                            " items (limit 20)");
    const std::size_t n = tx.n_transactions();
    std::vector<FrequentItemset> result;
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n_items); ++mask) {
        if (static_cast<std::size_t>(std::popcount(mask)) > cfg.max_len) continue;
        std::vector<ItemId> items;
        for (ItemId i = 0; i < n_items; ++i)
            if (mask >> i & 1u) items.push_back(i);
        std::size_t count = 0;
        for (std::size_t r = 0; r < n; ++r) {
            const auto& row = tx.transaction(r);
            if (std::all_of(items.begin(), items.end(), [&](ItemId i) { return row.test(i); }))
                ++count;
        }
        if (count > 0 &&
            static_cast<double>(count) / static_cast<double>(n) >= cfg.min_support)
            result.push_back(make_itemset(std::move(items), count, n));
    }
    sort_canonical(result);
    return result;
}

void write_itemsets_csv(std::ostream& out, const std::vector<FrequentItemset>& itemsets,
                        const TransactionSet& tx) {
    out << "items;support_count;support\n";
    for (const auto& fi : itemsets)
        out << csv_escape(tx.format_itemset(fi.items), ';') << ';' << fi.support_count << ';'
            << format_number(fi.support) << '\n';
}

}  // namespace dmkit
