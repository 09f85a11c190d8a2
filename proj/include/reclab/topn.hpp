#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "reclab/labels.hpp"

namespace reclab {

struct ScoredItem {
  Index item;
  double score;

  friend bool operator==(const ScoredItem&, const ScoredItem&) = default;
};

/// Ordered top-N recommendation lists, one per active user.
///
/// Each list holds at most `n` items sorted by score descending (ties by
/// ascending item index); lists can be shorter when fewer candidates exist.
struct TopNList {
  LabelSet users;
  LabelSet items;
  Index n = 0;
  std::vector<std::vector<ScoredItem>> lists;

  Index n_users() const noexcept { return static_cast<Index>(lists.size()); }
};

/// First `n` entries of every list.
TopNList best_n(const TopNList& l, Index n);

/// Best `n` items by score. NaN scores and items in `excluded` (sorted) are
/// never listed.
std::vector<ScoredItem> top_n_from_scores(const Eigen::Ref<const Eigen::VectorXd>& scores,
                                          std::span<const int> excluded, Index n);

}  // namespace reclab
