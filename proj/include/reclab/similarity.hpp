#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "reclab/rating_matrix.hpp"

namespace reclab {

enum class Measure { pearson, cosine, jaccard };

/// Case-insensitive: "pearson", "cosine", "jaccard".
Measure parse_measure(std::string_view text);
std::string_view to_string(Measure measure);

struct SimilarityParams {
  Measure measure = Measure::cosine;
  /// Minimum number of co-rated dimensions (matching ones for Jaccard).
  Index min_matching = 0;
};

enum class Axis { users, items };

namespace detail {

/// Calls `f(x, y)` for every index present in both rows, in index order.
template <typename Scalar, typename F>
void for_each_corated(const SparseRow<Scalar>& a, const SparseRow<Scalar>& b, F&& f) {
  std::size_t i = 0, j = 0;
  while (i < a.items.size() && j < b.items.size()) {
    if (a.items[i] < b.items[j]) {
      ++i;
    } else if (b.items[j] < a.items[i]) {
      ++j;
    } else {
      f(a.values[i], b.values[j]);
      ++i;
      ++j;
    }
  }
}

Index intersection_size(std::span<const int> a, std::span<const int> b);

}  // namespace detail

/// Pearson or cosine similarity over the dimensions rated in both rows.
///
/// Undefined (nullopt) when fewer than max(min_matching, 2) dimensions are
/// co-rated for Pearson, fewer than max(min_matching, 1) for cosine, or when
/// a denominator vanishes. Jaccard is rejected with InvalidMeasure: it needs
/// 0-1 data.
template <typename Scalar>
std::optional<Scalar> similarity(const SparseRow<Scalar>& a, const SparseRow<Scalar>& b,
                                 const SimilarityParams& params) {
  if (params.measure == Measure::jaccard)
    throw InvalidMeasure("jaccard similarity requires binary data");

  Index n = 0;
  Scalar sum_x = 0, sum_y = 0;
  detail::for_each_corated(a, b, [&](Scalar x, Scalar y) {
    ++n;
    sum_x += x;
    sum_y += y;
  });

  if (params.measure == Measure::cosine) {
    if (n < std::max<Index>(params.min_matching, 1)) return std::nullopt;
    Scalar xy = 0, xx = 0, yy = 0;
    detail::for_each_corated(a, b, [&](Scalar x, Scalar y) {
      xy += x * y;
      xx += x * x;
      yy += y * y;
    });
    const Scalar denom = std::sqrt(xx * yy);
    if (!(denom > 0)) return std::nullopt;
    return xy / denom;
  }

  if (n < std::max<Index>(params.min_matching, 2)) return std::nullopt;
  const Scalar mean_x = sum_x / static_cast<Scalar>(n);
  const Scalar mean_y = sum_y / static_cast<Scalar>(n);
  Scalar sxy = 0, sxx = 0, syy = 0;
  detail::for_each_corated(a, b, [&](Scalar x, Scalar y) {
    sxy += (x - mean_x) * (y - mean_y);
    sxx += (x - mean_x) * (x - mean_x);
    syy += (y - mean_y) * (y - mean_y);
  });
  const Scalar denom = std::sqrt(sxx * syy);
  if (!(denom > 0)) return std::nullopt;
  return sxy / denom;
}

/// Jaccard index |X n Y| / |X u Y| of two sorted item sets. Undefined for an
/// empty union or fewer than `min_matching` common items; any other measure
/// throws InvalidMeasure.
std::optional<double> similarity(std::span<const int> a, std::span<const int> b,
                                 const SimilarityParams& params);

/// Similarities between `query` and every row of `m`; NaN marks undefined.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> similarity_to_rows(const SparseRow<Scalar>& query,
                                                            const BasicRatingMatrix<Scalar>& m,
                                                            const SimilarityParams& params) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out(m.n_users());
  for (Index r = 0; r < m.n_users(); ++r)
    out(r) = similarity(query, m.row(r), params).value_or(std::numeric_limits<Scalar>::quiet_NaN());
  return out;
}

Eigen::VectorXd similarity_to_rows(std::span<const int> query, const BinaryRatingMatrix& m,
                                   const SimilarityParams& params);

/// Symmetric matrix of pairwise similarities between users (rows) or items
/// (columns). NaN marks an undefined similarity; it is never 0.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> similarity_matrix(
    const BasicRatingMatrix<Scalar>& m, Axis axis, const SimilarityParams& params) {
  if (params.measure == Measure::jaccard)
    throw InvalidMeasure("jaccard similarity requires binary data");
  const BasicRatingMatrix<Scalar> rows = axis == Axis::users ? m : m.transposed();
  const Index n = rows.n_users();
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> s(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j) {
      const Scalar v = similarity(rows.row(i), rows.row(j), params)
                           .value_or(std::numeric_limits<Scalar>::quiet_NaN());
      s(i, j) = v;
      s(j, i) = v;
    }
  }
  return s;
}

Eigen::MatrixXd similarity_matrix(const BinaryRatingMatrix& m, Axis axis,
                                  const SimilarityParams& params);

inline bool is_defined(double similarity) { return !std::isnan(similarity); }

// --- neighborhoods -----------------------------------------------------------

struct Neighbor {
  Index index;
  double similarity;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// Either the k most similar candidates or every candidate at or above a
/// similarity threshold.
class NeighborhoodMode {
 public:
  static NeighborhoodMode knn(Index k) { return NeighborhoodMode(Kind::knn, k, 0.0); }
  static NeighborhoodMode threshold(double t) { return NeighborhoodMode(Kind::threshold, 0, t); }

  bool is_knn() const noexcept { return kind_ == Kind::knn; }
  Index k() const noexcept { return k_; }
  double min_similarity() const noexcept { return threshold_; }

 private:
  enum class Kind { knn, threshold };
  NeighborhoodMode(Kind kind, Index k, double t) : kind_(kind), k_(k), threshold_(t) {}

  Kind kind_;
  Index k_;
  double threshold_;
};

/// Members sorted by similarity descending, ties by ascending index.
using Neighborhood = std::vector<Neighbor>;

/// Neighborhood from a vector of candidate similarities. Undefined (NaN)
/// entries and `exclude` (if any) never become members; fewer than k
/// defined candidates are all returned.
Neighborhood select_neighborhood(const Eigen::Ref<const Eigen::VectorXd>& similarities,
                                 std::optional<Index> exclude, const NeighborhoodMode& mode);

/// Neighborhood of row `target` of a similarity matrix, excluding the target.
Neighborhood select_neighborhood(const Eigen::MatrixXd& s, Index target,
                                 const NeighborhoodMode& mode);

/// Per row, the k largest defined off-diagonal similarities (ties by
/// ascending index): the k-truncated similarity model.
std::vector<Neighborhood> truncate_similarities(const Eigen::MatrixXd& s, Index k);

}  // namespace reclab
