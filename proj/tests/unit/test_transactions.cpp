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

#include <gtest/gtest.h>

#include <dmkit/dataset.hpp>
#include <dmkit/errors.hpp>
#include <dmkit/transactions.hpp>

using namespace dmkit;

namespace {

Dataset two_by_two() {
    const auto schema = parse_schema("p|nominal|x,y\nq|nominal|u,v\n");
    return Dataset(schema, {{0.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}, {1.0, 1.0}}, 1);
}

}  // namespace

TEST(Transactions, OneItemPerOccurringCategory) {
    const auto tx = to_transactions(two_by_two());
    EXPECT_EQ(tx.n_items(), 4u);
    EXPECT_EQ(tx.n_transactions(), 4u);
    EXPECT_EQ(tx.item(0).token(), "p=x");
    EXPECT_EQ(tx.item(3).token(), "q=v");
    EXPECT_EQ(tx.find("q", "u"), ItemId{2});
    EXPECT_FALSE(tx.find("q", "w"));
}

TEST(Transactions, UnusedCategoryHasNoItem) {
    const auto schema = parse_schema("p|nominal|x,y,z\nq|nominal|u\n");
    const auto tx = to_transactions(Dataset(schema, {{0.0, 0.0}, {2.0, 0.0}}, 1));
    EXPECT_EQ(tx.n_items(), 3u);
    EXPECT_FALSE(tx.find("p", "y"));
}

TEST(Transactions, MissingCellSkipped) {
    const auto schema = parse_schema("a|nominal|x\nb|nominal|x\nc|nominal|x\n");
    const auto tx = to_transactions(Dataset(schema, {{0.0, Cell{}, 0.0}, {0.0, 0.0, 0.0}}, 2));
    EXPECT_EQ(tx.transaction(0).count(), 2u);
    EXPECT_EQ(tx.transaction(1).count(), 3u);
}

TEST(Transactions, NumericColumnRejectedByName) {
    const auto schema = parse_schema("age|numeric\nq|nominal|u\n");
    try {
        to_transactions(Dataset(schema, {{1.0, 0.0}}, 1));
        FAIL();
    } catch (const PreconditionError& e) {
        EXPECT_NE(std::string(e.what()).find("age"), std::string::npos);
    }
}

TEST(Transactions, EveryBitMapsBackToItsCell) {
    const auto schema = parse_schema("a|nominal|p,q\nb|nominal|r,s,t\nc|ordinal|lo,hi\n");
    const std::vector<std::vector<Cell>> rows{
        {0.0, 2.0, 1.0}, {1.0, 0.0, Cell{}}, {0.0, 1.0, 0.0}, {Cell{}, 2.0, 1.0}, {1.0, 1.0, 0.0}};
    const Dataset ds(schema, rows, 2);
    const auto tx = to_transactions(ds);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        std::size_t observed = 0;
        for (std::size_t c = 0; c < 3; ++c) observed += rows[r][c] ? 1 : 0;
        EXPECT_EQ(tx.transaction(r).count(), observed);
        for (auto id : tx.transaction(r).indices()) {
            const auto& item = tx.item(id);
            ASSERT_TRUE(rows[r][item.column]);
            EXPECT_EQ(static_cast<std::size_t>(*rows[r][item.column]), item.category);
            EXPECT_EQ(ds.column(item.column).categories[item.category], item.label);
            EXPECT_TRUE(tx.tidset(id).test(r));
        }
    }
}

TEST(Transactions, SameColumnTwiceRejected) {
    std::vector<Item> items{{0, "a", 0, "x"}, {0, "a", 1, "y"}};
    EXPECT_THROW(TransactionSet(items, {{0, 1}}), PreconditionError);
}

TEST(Transactions, CountAndCover) {
    const auto tx = TransactionSet::from_item_lists({"a", "b", "c"},
                                                    {{0, 1, 2}, {0, 1}, {0, 2}, {1, 2}, {0, 1, 2}});
    EXPECT_EQ(tx.count({}), 5u);
    EXPECT_EQ(tx.count({0}), 4u);
    EXPECT_EQ(tx.count({0, 1}), 3u);
    EXPECT_EQ(tx.count({0, 1, 2}), 2u);
    EXPECT_EQ(tx.cover({0, 1, 2}).indices(), (std::vector<std::size_t>{0, 4}));
    EXPECT_EQ(tx.format_itemset({0, 2}), "a=1 c=1");
}

TEST(Bitset, ComplementKeepsPaddingClear) {
    Bitset b(70);
    b.set(3);
    b.set(69);
    const auto c = b.complement();
    EXPECT_EQ(c.count(), 68u);
    EXPECT_FALSE(c.test(69));
    EXPECT_EQ(b.count_and(c), 0u);
    Bitset all(70);
    all.set_all();
    EXPECT_EQ(all.count(), 70u);
    all.reset(0);
    EXPECT_EQ(all.indices().front(), 1u);
}
