#include "reclab/rulemine.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <ostream>
#include <string>

#include "reclab/io.hpp"

namespace reclab {

namespace {

using Bits = std::vector<std::uint64_t>;

Index popcount(const Bits& b) {
  Index n = 0;
  for (const auto w : b) n += std::popcount(w);
  return n;
}

Bits intersect(const Bits& a, const Bits& b) {
  Bits out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] & b[k];
  return out;
}

struct Level {
  std::vector<std::vector<int>> sets;
  std::vector<Bits> tids;
};

}  // namespace

TransactionDB TransactionDB::from_matrix(const BinaryRatingMatrix& m) {
  TransactionDB db;
  db.n_items = m.n_items();
  db.transactions.reserve(static_cast<std::size_t>(m.n_users()));
  for (Index u = 0; u < m.n_users(); ++u) {
    const auto r = m.row(u);
    db.transactions.emplace_back(r.begin(), r.end());
  }
  return db;
}

std::optional<double> FrequentItemsets::support_of(std::span<const int> items) const {
  const auto it = std::ranges::find_if(itemsets, [&](const Itemset& s) {
    return std::ranges::equal(s.items, items);
  });
  if (it == itemsets.end()) return std::nullopt;
  return it->support;
}

FrequentItemsets mine_frequent(const TransactionDB& db, double min_support, Index max_len) {
  if (db.transactions.empty()) throw EmptyInput("transaction database is empty");
  if (!(min_support > 0.0 && min_support <= 1.0))
    throw InvalidArgument("min_support must be in (0, 1]");
  if (max_len < 1) throw InvalidArgument("max_len must be at least 1");

  const auto n_tx = static_cast<double>(db.size());
  const std::size_t words = (static_cast<std::size_t>(db.size()) + 63) / 64;
  FrequentItemsets out{{}, db.size(), min_support, max_len};

  std::vector<Bits> item_tids(static_cast<std::size_t>(db.n_items), Bits(words, 0));
  for (std::size_t t = 0; t < db.transactions.size(); ++t)
    for (const int i : db.transactions[t]) {
      if (i < 0 || i >= db.n_items) throw InvalidArgument("transaction item out of range");
      item_tids[static_cast<std::size_t>(i)][t / 64] |= std::uint64_t{1} << (t % 64);
    }

  const auto accept = [&](std::vector<int> items, Bits tids, Level& level) {
    const Index count = popcount(tids);
    const double support = static_cast<double>(count) / n_tx;
    if (!(support > min_support)) return;
    out.itemsets.push_back({items, count, support});
    level.sets.push_back(std::move(items));
    level.tids.push_back(std::move(tids));
  };

  Level current;
  for (int i = 0; i < db.n_items; ++i)
    accept({i}, item_tids[static_cast<std::size_t>(i)], current);

  for (Index len = 2; len <= max_len && current.sets.size() >= 2; ++len) {
    // Candidate lookup for the subset-pruning step.
    std::map<std::vector<int>, std::size_t> previous;
    for (std::size_t k = 0; k < current.sets.size(); ++k) previous.emplace(current.sets[k], k);

    Level next;
    for (std::size_t a = 0; a < current.sets.size(); ++a) {
      const auto& sa = current.sets[a];
      for (std::size_t b = a + 1; b < current.sets.size(); ++b) {
        const auto& sb = current.sets[b];
        // Join sets sharing all but the last item; sets are lexicographically sorted.
        if (!std::equal(sa.begin(), sa.end() - 1, sb.begin())) break;
        std::vector<int> candidate = sa;
        candidate.push_back(sb.back());
        bool all_frequent = true;
        for (std::size_t drop = 0; drop + 2 < candidate.size() && all_frequent; ++drop) {
          std::vector<int> subset;
          subset.reserve(candidate.size() - 1);
          for (std::size_t k = 0; k < candidate.size(); ++k)
            if (k != drop) subset.push_back(candidate[k]);
          all_frequent = previous.contains(subset);
        }
        if (!all_frequent) continue;
        accept(std::move(candidate),
               intersect(current.tids[a], item_tids[static_cast<std::size_t>(sb.back())]), next);
      }
    }
    current = std::move(next);
  }
  return out;
}

RuleSet induce_rules(const FrequentItemsets& frequent, double min_confidence) {
  RuleSet out{{}, frequent.min_support, min_confidence, frequent.max_len};
  std::map<std::vector<int>, double> support;
  for (const auto& s : frequent.itemsets) support.emplace(s.items, s.support);

  for (const auto& z : frequent.itemsets) {
    if (z.items.size() < 2) continue;
    for (std::size_t drop = 0; drop < z.items.size(); ++drop) {
      std::vector<int> lhs;
      lhs.reserve(z.items.size() - 1);
      for (std::size_t k = 0; k < z.items.size(); ++k)
        if (k != drop) lhs.push_back(z.items[k]);
      const auto it = support.find(lhs);
      if (it == support.end()) continue;
      const double confidence = z.support / it->second;
      if (confidence > min_confidence)
        out.rules.push_back({std::move(lhs), z.items[drop], z.support, confidence});
    }
  }
  return out;
}

std::vector<ScoredItem> recommend_from_rules(const RuleSet& rules, std::span<const int> basket,
                                             Index n) {
  struct Best {
    double confidence;
    double support;
  };
  std::map<int, Best> best;
  for (const auto& rule : rules.rules) {
    if (std::ranges::binary_search(basket, rule.rhs)) continue;
    if (!std::includes(basket.begin(), basket.end(), rule.lhs.begin(), rule.lhs.end())) continue;
    auto [it, inserted] = best.try_emplace(rule.rhs, Best{rule.confidence, rule.support});
    if (!inserted && (rule.confidence > it->second.confidence ||
                      (rule.confidence == it->second.confidence && rule.support > it->second.support)))
      it->second = {rule.confidence, rule.support};
  }
  std::vector<std::pair<int, Best>> ranked(best.begin(), best.end());
  std::ranges::sort(ranked, [](const auto& a, const auto& b) {
    if (a.second.confidence != b.second.confidence) return a.second.confidence > b.second.confidence;
    if (a.second.support != b.second.support) return a.second.support > b.second.support;
    return a.first < b.first;
  });
  std::vector<ScoredItem> out;
  for (const auto& [item, b] : ranked) {
    if (static_cast<Index>(out.size()) >= n) break;
    out.push_back({item, b.confidence});
  }
  return out;
}

void write_rules_csv(std::ostream& out, const RuleSet& rules, const LabelSet* items) {
  const auto name = [&](int i) { return items ? (*items)[i] : std::to_string(i); };
  out << "lhs;rhs;support;confidence\n";
  for (const auto& r : rules.rules) {
    for (std::size_t k = 0; k < r.lhs.size(); ++k) out << (k ? "|" : "") << name(r.lhs[k]);
    out << ';' << name(r.rhs) << ';' << format_number(r.support) << ';'
        << format_number(r.confidence) << '\n';
  }
}

}  // namespace reclab
