#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "reclab/rating_matrix.hpp"
#include "reclab/topn.hpp"

namespace reclab {

/// Each user is a transaction holding the items with a 1 in their row.
struct TransactionDB {
  std::vector<std::vector<int>> transactions;  ///< sorted, unique item indices
  Index n_items = 0;

  static TransactionDB from_matrix(const BinaryRatingMatrix& m);
  Index size() const noexcept { return static_cast<Index>(transactions.size()); }
};

struct Itemset {
  std::vector<int> items;  ///< sorted
  Index count = 0;         ///< number of transactions containing all items
  double support = 0.0;    ///< count / |D|

  friend bool operator==(const Itemset&, const Itemset&) = default;
};

struct FrequentItemsets {
  std::vector<Itemset> itemsets;  ///< by size, then lexicographic
  Index n_transactions = 0;
  double min_support = 0.0;
  Index max_len = 0;

  std::optional<double> support_of(std::span<const int> items) const;
};

/// Level-wise Apriori: every itemset with support > min_support (strict) and
/// at most `max_len` items.
FrequentItemsets mine_frequent(const TransactionDB& db, double min_support, Index max_len);

struct Rule {
  std::vector<int> lhs;  ///< non-empty, sorted, never contains rhs
  int rhs = 0;
  double support = 0.0;     ///< support(lhs u {rhs})
  double confidence = 0.0;  ///< support(lhs u {rhs}) / support(lhs)

  friend bool operator==(const Rule&, const Rule&) = default;
};

struct RuleSet {
  std::vector<Rule> rules;
  double min_support = 0.0;
  double min_confidence = 0.0;
  Index max_len = 0;
};

/// All single-consequent rules X -> y with X u {y} frequent and
/// confidence > min_confidence (strict).
RuleSet induce_rules(const FrequentItemsets& frequent, double min_confidence);

/// Right-hand sides of rules whose left-hand side is contained in `basket`,
/// excluding basket items. An item scores the highest confidence among its
/// matching rules; ties by higher support, then ascending index.
std::vector<ScoredItem> recommend_from_rules(const RuleSet& rules, std::span<const int> basket,
                                             Index n);

/// `lhs;rhs;support;confidence`, lhs items joined with `|`. Item labels are
/// used when given, indices otherwise.
void write_rules_csv(std::ostream& out, const RuleSet& rules, const LabelSet* items = nullptr);

}  // namespace reclab
