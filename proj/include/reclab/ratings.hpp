#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <variant>

#include "reclab/rating_matrix.hpp"

namespace reclab {

enum class DataKind { real, binary };

/// Either kind of rating data; algorithms dispatch on the alternative.
using Dataset = std::variant<RatingMatrix, BinaryRatingMatrix>;

inline DataKind kind_of(const Dataset& d) {
  return std::holds_alternative<RatingMatrix>(d) ? DataKind::real : DataKind::binary;
}

/// Accepts "real"/"binary" and the long forms "realRatingMatrix"/"binaryRatingMatrix".
DataKind parse_data_kind(std::string_view text);
std::string_view to_string(DataKind kind);
std::string_view matrix_class_name(DataKind kind);

Index n_users(const Dataset& d);
Index n_items(const Dataset& d);
Index n_ratings(const Dataset& d);
const LabelSet& user_labels(const Dataset& d);
const LabelSet& item_labels(const Dataset& d);
Index row_count(const Dataset& d, Index user);
/// Items present in a user's row, ascending.
std::span<const int> row_items(const Dataset& d, Index user);
Dataset select_users(const Dataset& d, std::span<const Index> users);

// --- descriptive statistics ------------------------------------------------

/// Per-row or per-column counts, sums and means. `means[i]` is NaN when
/// `counts[i] == 0`; use `has_mean`.
struct MarginStats {
  Eigen::Matrix<Index, Eigen::Dynamic, 1> counts;
  Eigen::VectorXd sums;
  Eigen::VectorXd means;

  bool has_mean(Index i) const { return counts(i) > 0; }
};

template <typename Scalar>
MarginStats row_stats(const BasicRatingMatrix<Scalar>& m) {
  MarginStats s{Eigen::Matrix<Index, Eigen::Dynamic, 1>::Zero(m.n_users()),
                Eigen::VectorXd::Zero(m.n_users()),
                Eigen::VectorXd::Constant(m.n_users(), std::numeric_limits<double>::quiet_NaN())};
  for (Index u = 0; u < m.n_users(); ++u) {
    const auto r = m.row(u);
    s.counts(u) = r.size();
    for (const Scalar v : r.values) s.sums(u) += static_cast<double>(v);
    if (r.size() > 0) s.means(u) = s.sums(u) / static_cast<double>(r.size());
  }
  return s;
}

template <typename Scalar>
MarginStats col_stats(const BasicRatingMatrix<Scalar>& m) {
  return row_stats(m.transposed());
}

/// For 0-1 data nothing is missing: sums count the ones and means are the
/// fraction of ones over the full row (or column).
MarginStats row_stats(const BinaryRatingMatrix& m);
MarginStats col_stats(const BinaryRatingMatrix& m);

// --- normalization ---------------------------------------------------------

enum class NormalizationMethod { center, z_score };

NormalizationMethod parse_normalization(std::string_view text);
std::string_view to_string(NormalizationMethod method);

/// Per-user location and scale used by a normalization, enough to invert it.
/// `row_sds` is empty for centering. Users without ratings carry a NaN mean.
struct NormalizationInfo {
  NormalizationMethod method = NormalizationMethod::center;
  LabelSet users;
  Eigen::VectorXd row_means;
  Eigen::VectorXd row_sds;

  double scale(Index user) const { return row_sds.size() == 0 ? 1.0 : row_sds(user); }
};

/// Mean and scale of one row. The scale is the sample standard deviation for
/// z-score, or 1 for centering, rows with fewer than two ratings and
/// constant rows.
template <typename Scalar>
std::pair<double, double> row_location_scale(std::span<const Scalar> values,
                                             NormalizationMethod method) {
  if (values.empty()) return {std::numeric_limits<double>::quiet_NaN(), 1.0};
  double sum = 0.0;
  for (const Scalar v : values) sum += static_cast<double>(v);
  const double mean = sum / static_cast<double>(values.size());
  if (method == NormalizationMethod::center || values.size() < 2) return {mean, 1.0};
  double ss = 0.0;
  for (const Scalar v : values) ss += (static_cast<double>(v) - mean) * (static_cast<double>(v) - mean);
  const double sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
  return {mean, sd > 0.0 ? sd : 1.0};
}

template <typename Scalar>
std::pair<BasicRatingMatrix<Scalar>, NormalizationInfo> normalize(
    const BasicRatingMatrix<Scalar>& m, NormalizationMethod method = NormalizationMethod::center) {
  NormalizationInfo info{method, m.user_labels(), Eigen::VectorXd(m.n_users()),
                         method == NormalizationMethod::z_score ? Eigen::VectorXd(m.n_users())
                                                                : Eigen::VectorXd()};
  auto out = m.map_rows([&](Index u, const auto& row, std::span<Scalar> dst) {
    const auto [mean, sd] = row_location_scale(row.values, method);
    info.row_means(u) = mean;
    if (method == NormalizationMethod::z_score) info.row_sds(u) = sd;
    for (std::size_t k = 0; k < dst.size(); ++k)
      dst[k] = static_cast<Scalar>((static_cast<double>(row.values[k]) - mean) / sd);
  });
  return {std::move(out), std::move(info)};
}

template <typename Scalar>
BasicRatingMatrix<Scalar> denormalize(const BasicRatingMatrix<Scalar>& m,
                                      const NormalizationInfo& info) {
  if (!(m.user_labels() == info.users))
    throw ShapeMismatch("normalization info belongs to a different user set");
  return m.map_rows([&](Index u, const auto& row, std::span<Scalar> dst) {
    const double mean = info.row_means(u);
    const double sd = info.scale(u);
    for (std::size_t k = 0; k < dst.size(); ++k)
      dst[k] = static_cast<Scalar>(static_cast<double>(row.values[k]) * sd + mean);
  });
}

// --- binarization and sampling -----------------------------------------------

/// A cell becomes 1 iff it is rated and its rating is >= min_rating.
template <typename Scalar>
BinaryRatingMatrix binarize(const BasicRatingMatrix<Scalar>& m, Scalar min_rating) {
  std::vector<int> outer{0}, inner;
  for (Index u = 0; u < m.n_users(); ++u) {
    const auto r = m.row(u);
    for (std::size_t k = 0; k < r.items.size(); ++k)
      if (r.values[k] >= min_rating) inner.push_back(r.items[k]);
    outer.push_back(static_cast<int>(inner.size()));
  }
  return BinaryRatingMatrix(m.user_labels(), m.item_labels(), std::move(outer), std::move(inner));
}

/// `k` distinct positions out of `n`, uniformly without replacement, in random order.
std::vector<Index> sample_without_replacement(Index n, Index k, std::uint64_t seed);

/// `k` distinct users chosen uniformly without replacement; the row order of
/// the result is the (random) draw order.
template <typename Matrix>
Matrix sample_users(const Matrix& m, Index k, std::uint64_t seed) {
  if (k <= 0) throw InvalidArgument("sample size must be positive");
  if (k > m.n_users()) throw InvalidArgument("sample size exceeds the number of users");
  const auto picked = sample_without_replacement(m.n_users(), k, seed);
  return m.select_users(picked);
}

/// Users with at least `min_count` ratings, original order preserved.
Dataset filter_users(const Dataset& d, Index min_count);

}  // namespace reclab
