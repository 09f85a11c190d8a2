#include <sstream>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "reclab/rulemine.hpp"

namespace {

reclab::TransactionDB make_db(const oracle::Transactions& tx, int n_items) {
  reclab::TransactionDB db;
  db.transactions = tx;
  db.n_items = n_items;
  return db;
}

// a = 0, b = 1, c = 2
const oracle::Transactions kSmall{{0, 1}, {0, 1, 2}, {0, 2}};

TEST(MineFrequent, SmallExample) {
  const auto f = reclab::mine_frequent(make_db(kSmall, 3), 0.5, 2);
  ASSERT_EQ(f.itemsets.size(), 5u);
  EXPECT_EQ(*f.support_of(std::vector<int>{0}), 1.0);
  EXPECT_EQ(*f.support_of(std::vector<int>{1}), 2.0 / 3.0);
  EXPECT_EQ(*f.support_of(std::vector<int>{2}), 2.0 / 3.0);
  EXPECT_EQ(*f.support_of(std::vector<int>{0, 1}), 2.0 / 3.0);
  EXPECT_EQ(*f.support_of(std::vector<int>{0, 2}), 2.0 / 3.0);
  EXPECT_FALSE(f.support_of(std::vector<int>{1, 2}).has_value());
}

TEST(MineFrequent, Thresholds) {
  EXPECT_TRUE(reclab::mine_frequent(make_db(kSmall, 3), 1.0, 3).itemsets.empty());
  const auto singles = reclab::mine_frequent(make_db(kSmall, 3), 0.5, 1);
  EXPECT_EQ(singles.itemsets.size(), 3u);
  EXPECT_THROW(reclab::mine_frequent(make_db({}, 3), 0.5, 2), reclab::EmptyInput);
}

TEST(InduceRules, SmallExample) {
  const auto f = reclab::mine_frequent(make_db(kSmall, 3), 0.5, 2);
  const auto rs = reclab::induce_rules(f, 0.6);
  ASSERT_EQ(rs.rules.size(), 4u);
  for (const auto& r : rs.rules) {
    const double lhs_support = *f.support_of(r.lhs);
    EXPECT_NEAR(r.support, r.confidence * lhs_support, 1e-12);
    if (r.lhs == std::vector<int>{0}) EXPECT_DOUBLE_EQ(r.confidence, 2.0 / 3.0);
    else EXPECT_DOUBLE_EQ(r.confidence, 1.0);
  }
  EXPECT_TRUE(reclab::induce_rules(f, 1.0).rules.empty());
}

TEST(InduceRules, MatchesExhaustiveEnumeration) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const int n_items = 4 + static_cast<int>(seed % 9);
    const int n_tx = 8 + static_cast<int>((seed * 7) % 57);
    const auto tx = oracle::random_transactions(n_items, n_tx, 0.3, seed);
    const double s = 0.05 + 0.05 * static_cast<double>(seed % 4);
    const double c = 0.3 + 0.1 * static_cast<double>(seed % 5);
    const int max_len = 2 + static_cast<int>(seed % 3);
    const auto f = reclab::mine_frequent(make_db(tx, n_items), s, max_len);
    const auto expect_f = oracle::frequent_itemsets(tx, n_items, s, max_len);
    ASSERT_EQ(f.itemsets.size(), expect_f.size()) << "seed " << seed;
    for (const auto& is : f.itemsets) {
      ASSERT_TRUE(expect_f.contains(is.items));
      EXPECT_EQ(is.count, expect_f.at(is.items));
      EXPECT_EQ(is.support, static_cast<double>(is.count) / static_cast<double>(n_tx));
      for (std::size_t drop = 0; drop < is.items.size() && is.items.size() > 1; ++drop) {
        auto sub = is.items;
        sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(drop));
        EXPECT_TRUE(f.support_of(sub).has_value());
      }
    }
    const auto rs = reclab::induce_rules(f, c);
    const auto expect_r = oracle::rules(expect_f, tx.size(), c);
    ASSERT_EQ(rs.rules.size(), expect_r.size()) << "seed " << seed;
    for (const auto& r : rs.rules) {
      const auto it = expect_r.find({r.lhs, r.rhs});
      ASSERT_NE(it, expect_r.end());
      EXPECT_EQ(r.support, it->second.first);
      EXPECT_EQ(r.confidence, it->second.second);
      EXPECT_GT(r.support, s);
      EXPECT_GT(r.confidence, c);
      EXPECT_LE(static_cast<int>(r.lhs.size()) + 1, max_len);
    }
  }
}

TEST(RecommendFromRules, Basket) {
  const auto f = reclab::mine_frequent(make_db(kSmall, 3), 0.5, 2);
  const auto rs = reclab::induce_rules(f, 0.6);
  const std::vector<int> basket{0};
  const auto rec = reclab::recommend_from_rules(rs, basket, 5);
  ASSERT_EQ(rec.size(), 2u);
  EXPECT_EQ(rec[0].item, 1);
  EXPECT_EQ(rec[1].item, 2);
  EXPECT_DOUBLE_EQ(rec[0].score, 2.0 / 3.0);
  EXPECT_TRUE(reclab::recommend_from_rules(reclab::RuleSet{}, basket, 5).empty());
  const std::vector<int> everything{0, 1, 2};
  EXPECT_TRUE(reclab::recommend_from_rules(rs, everything, 5).empty());
  EXPECT_EQ(reclab::recommend_from_rules(rs, basket, 1).size(), 1u);
}

TEST(RecommendFromRules, NeverReturnsBasketItems) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto tx = oracle::random_transactions(8, 40, 0.35, seed);
    const auto rs = reclab::induce_rules(reclab::mine_frequent(make_db(tx, 8), 0.05, 3), 0.2);
    for (const auto& basket : tx) {
      const auto rec = reclab::recommend_from_rules(rs, basket, 8);
      for (std::size_t k = 0; k < rec.size(); ++k) {
        EXPECT_FALSE(std::ranges::binary_search(basket, static_cast<int>(rec[k].item)));
        if (k > 0) EXPECT_LE(rec[k].score, rec[k - 1].score);
      }
    }
  }
}

TEST(WriteRulesCsv, Format) {
  const auto rs = reclab::induce_rules(reclab::mine_frequent(make_db(kSmall, 3), 0.5, 2), 0.9);
  std::ostringstream out;
  reclab::write_rules_csv(out, rs);
  EXPECT_NE(out.str().find("lhs;rhs;support;confidence"), std::string::npos);
  EXPECT_NE(out.str().find("1;0;"), std::string::npos);
}

}  // namespace
