#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "reclab/ratings.hpp"

namespace reclab {

enum class SplitMethod { split, cross, bootstrap };

/// "split", "cross" (also "cross-validation"), "bootstrap".
SplitMethod parse_split_method(std::string_view text);
std::string_view to_string(SplitMethod method);

struct SchemeOptions {
  SplitMethod method = SplitMethod::split;
  /// Training fraction for split; size of the training draw for bootstrap.
  double train = 0.9;
  /// Number of folds for cross; cross always runs once per fold.
  Index k = 10;
  /// Repetitions for split and bootstrap.
  Index runs = 1;
  /// > 0: Given-x, the test user reveals `given` items. < 0: All-but-|given|.
  Index given = 3;
  /// Relevance threshold (>=) for real data; ignored for 0-1 data.
  std::optional<double> good_rating;
  std::uint64_t seed = 0;
};

/// Train/test partitions of the users of a dataset, with the test users'
/// ratings divided into a known part (input to the recommender) and an
/// unknown part (withheld ground truth).
///
/// Users with too few ratings for the protocol are dropped before any
/// partitioning; `excluded_users()` reports how many.
class EvaluationScheme {
 public:
  enum class Part { train, known, unknown };

  static EvaluationScheme make(const Dataset& data, const SchemeOptions& options);

  const SchemeOptions& options() const noexcept { return options_; }
  DataKind data_kind() const noexcept { return kind_of(data_); }
  /// The eligible users only.
  const Dataset& data() const noexcept { return data_; }
  Index excluded_users() const noexcept { return excluded_; }
  Index runs() const noexcept { return static_cast<Index>(runs_.size()); }

  /// Indices into `data()`. Training users are unique and ascending.
  const std::vector<Index>& train_users(Index run) const;
  /// The raw training draw; bootstrap draws may repeat users.
  const std::vector<Index>& train_draw(Index run) const;
  const std::vector<Index>& test_users(Index run) const;

  Dataset get_data(Index run, Part part) const;

 private:
  struct Run {
    std::vector<Index> draw;
    std::vector<Index> train;
    std::vector<Index> test;
    Dataset known;
    Dataset unknown;
  };

  const Run& run_at(Index run) const;

  SchemeOptions options_;
  Dataset data_;
  Index excluded_ = 0;
  std::vector<Run> runs_;
};

/// Items to reveal per test user under the protocol, or nullopt if the user
/// has too few ratings.
std::optional<Index> known_count(Index n_rated, Index given);

}  // namespace reclab
