#include "reclab/topn.hpp"

#include <algorithm>
#include <cmath>

#include "reclab/errors.hpp"

namespace reclab {

TopNList best_n(const TopNList& l, Index n) {
  if (n < 1) throw InvalidParam("n must be at least 1");
  TopNList out{l.users, l.items, std::min(n, l.n), {}};
  out.lists.reserve(l.lists.size());
  for (const auto& list : l.lists) {
    const auto keep = std::min<std::size_t>(list.size(), static_cast<std::size_t>(n));
    out.lists.emplace_back(list.begin(), list.begin() + static_cast<std::ptrdiff_t>(keep));
  }
  return out;
}

std::vector<ScoredItem> top_n_from_scores(const Eigen::Ref<const Eigen::VectorXd>& scores,
                                          std::span<const int> excluded, Index n) {
  std::vector<ScoredItem> candidates;
  candidates.reserve(static_cast<std::size_t>(scores.size()));
  std::size_t e = 0;
  for (Index i = 0; i < scores.size(); ++i) {
    while (e < excluded.size() && excluded[e] < i) ++e;
    if (e < excluded.size() && excluded[e] == i) continue;
    if (std::isnan(scores(i))) continue;
    candidates.push_back({i, scores(i)});
  }
  const auto order = [](const ScoredItem& a, const ScoredItem& b) {
    return a.score > b.score || (a.score == b.score && a.item < b.item);
  };
  const auto keep = std::min<std::size_t>(candidates.size(), static_cast<std::size_t>(std::max<Index>(n, 0)));
  std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(keep),
                    candidates.end(), order);
  candidates.resize(keep);
  return candidates;
}

}  // namespace reclab
