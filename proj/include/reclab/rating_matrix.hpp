#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "reclab/errors.hpp"
#include "reclab/labels.hpp"

namespace reclab {

/// Non-owning view of one sparse row: ascending indices and their values.
template <typename Scalar>
struct SparseRow {
  std::span<const int> items;
  std::span<const Scalar> values;

  Index size() const noexcept { return static_cast<Index>(items.size()); }
  bool empty() const noexcept { return items.empty(); }
};

template <typename Scalar>
struct BasicRatingTuple {
  std::string user;
  std::string item;
  Scalar rating;

  friend bool operator==(const BasicRatingTuple&, const BasicRatingTuple&) = default;
};

/// Sparse user x item matrix of real ratings.
///
/// Entry presence means "rated"; absence means missing. A stored 0 is a real
/// rating. Rows are kept in compressed row-major form with strictly increasing
/// item indices, so a row can be handed out as a pair of spans.
template <typename Scalar>
class BasicRatingMatrix {
 public:
  using Storage = Eigen::SparseMatrix<Scalar, Eigen::RowMajor, int>;
  using Tuple = BasicRatingTuple<Scalar>;
  using Dense = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  using Row = SparseRow<Scalar>;

  BasicRatingMatrix() = default;
  BasicRatingMatrix(Storage ratings, LabelSet users, LabelSet items);

  /// Builds from raw CSR arrays; `outer` has n_users + 1 entries.
  static BasicRatingMatrix from_csr(LabelSet users, LabelSet items, std::vector<int> outer,
                                    std::vector<int> inner, std::vector<Scalar> values);

  /// Labels are taken in order of first appearance.
  static BasicRatingMatrix from_tuples(std::span<const Tuple> tuples);
  /// Fixed label sets; tuples must only reference known labels.
  static BasicRatingMatrix from_tuples(std::span<const Tuple> tuples, LabelSet users,
                                       LabelSet items);

  std::vector<Tuple> to_tuples() const;

  Index n_users() const noexcept { return ratings_.rows(); }
  Index n_items() const noexcept { return ratings_.cols(); }
  Index n_ratings() const noexcept { return ratings_.nonZeros(); }

  const LabelSet& user_labels() const noexcept { return users_; }
  const LabelSet& item_labels() const noexcept { return items_; }
  const Storage& storage() const noexcept { return ratings_; }

  Row row(Index user) const {
    const int* outer = ratings_.outerIndexPtr();
    const auto begin = static_cast<std::size_t>(outer[user]);
    const auto count = static_cast<std::size_t>(outer[user + 1] - outer[user]);
    return {std::span<const int>(ratings_.innerIndexPtr() + begin, count),
            std::span<const Scalar>(ratings_.valuePtr() + begin, count)};
  }

  std::optional<Scalar> rating(Index user, Index item) const;

  /// Dense copy with `missing` in unrated cells.
  Dense to_dense(Scalar missing = std::numeric_limits<Scalar>::quiet_NaN()) const;

  /// Rows at the given positions, in the given order.
  BasicRatingMatrix select_users(std::span<const Index> users) const;

  /// Item x user view of the same ratings.
  BasicRatingMatrix transposed() const;

  /// Same sparsity pattern, values replaced row by row.
  /// `f(user, row, out)` writes `row.size()` values into `out`.
  template <typename F>
  BasicRatingMatrix map_rows(F&& f) const;

  friend bool operator==(const BasicRatingMatrix& a, const BasicRatingMatrix& b) {
    if (!(a.users_ == b.users_) || !(a.items_ == b.items_) || a.n_ratings() != b.n_ratings())
      return false;
    for (Index u = 0; u < a.n_users(); ++u) {
      const auto ra = a.row(u), rb = b.row(u);
      if (!std::ranges::equal(ra.items, rb.items) || !std::ranges::equal(ra.values, rb.values))
        return false;
    }
    return true;
  }

 private:
  Storage ratings_;
  LabelSet users_;
  LabelSet items_;
};

using RatingMatrix = BasicRatingMatrix<double>;
using RatingTuple = BasicRatingTuple<double>;

/// Sparse 0-1 user x item matrix storing only the ones.
class BinaryRatingMatrix {
 public:
  BinaryRatingMatrix() = default;
  BinaryRatingMatrix(LabelSet users, LabelSet items, std::vector<int> outer,
                     std::vector<int> inner);
  BinaryRatingMatrix(LabelSet users, LabelSet items, const std::vector<std::vector<int>>& rows);

  Index n_users() const noexcept { return users_.size(); }
  Index n_items() const noexcept { return items_.size(); }
  Index n_ratings() const noexcept { return static_cast<Index>(inner_.size()); }

  const LabelSet& user_labels() const noexcept { return users_; }
  const LabelSet& item_labels() const noexcept { return items_; }

  std::span<const int> row(Index user) const {
    const auto begin = static_cast<std::size_t>(outer_[static_cast<std::size_t>(user)]);
    const auto end = static_cast<std::size_t>(outer_[static_cast<std::size_t>(user) + 1]);
    return std::span<const int>(inner_).subspan(begin, end - begin);
  }

  bool contains(Index user, Index item) const;

  BinaryRatingMatrix select_users(std::span<const Index> users) const;
  BinaryRatingMatrix transposed() const;

  /// Ones become stored ratings of 1.0.
  RatingMatrix to_real() const;

  friend bool operator==(const BinaryRatingMatrix&, const BinaryRatingMatrix&) = default;

 private:
  LabelSet users_;
  LabelSet items_;
  std::vector<int> outer_{0};
  std::vector<int> inner_;
};

// ---------------------------------------------------------------------------

namespace detail {

template <typename Scalar>
typename BasicRatingMatrix<Scalar>::Storage make_csr(Index rows, Index cols,
                                                    const std::vector<int>& outer,
                                                    const std::vector<int>& inner,
                                                    const std::vector<Scalar>& values) {
  using Storage = typename BasicRatingMatrix<Scalar>::Storage;
  if (static_cast<Index>(outer.size()) != rows + 1 || inner.size() != values.size() ||
      outer.front() != 0 || static_cast<std::size_t>(outer.back()) != inner.size())
    throw ShapeMismatch("inconsistent CSR arrays");
  Eigen::Map<const Storage> view(rows, cols, static_cast<Index>(inner.size()), outer.data(),
                                 inner.data(), values.data());
  return Storage(view);
}

void validate_csr(Index rows, Index cols, std::span<const int> outer, std::span<const int> inner);

}  // namespace detail

template <typename Scalar>
BasicRatingMatrix<Scalar>::BasicRatingMatrix(Storage ratings, LabelSet users, LabelSet items)
    : ratings_(std::move(ratings)), users_(std::move(users)), items_(std::move(items)) {
  if (ratings_.rows() != users_.size() || ratings_.cols() != items_.size())
    throw ShapeMismatch("rating storage does not match label sets");
  ratings_.makeCompressed();
  detail::validate_csr(
      ratings_.rows(), ratings_.cols(),
      std::span<const int>(ratings_.outerIndexPtr(), static_cast<std::size_t>(ratings_.rows()) + 1),
      std::span<const int>(ratings_.innerIndexPtr(), static_cast<std::size_t>(ratings_.nonZeros())));
}

template <typename Scalar>
BasicRatingMatrix<Scalar> BasicRatingMatrix<Scalar>::from_csr(LabelSet users, LabelSet items,
                                                              std::vector<int> outer,
                                                              std::vector<int> inner,
                                                              std::vector<Scalar> values) {
  auto storage = detail::make_csr<Scalar>(users.size(), items.size(), outer, inner, values);
  return BasicRatingMatrix(std::move(storage), std::move(users), std::move(items));
}

template <typename Scalar>
BasicRatingMatrix<Scalar> BasicRatingMatrix<Scalar>::from_tuples(std::span<const Tuple> tuples) {
  if (tuples.empty()) throw EmptyInput("a rating matrix needs at least one rating");
  std::vector<std::string> users, items;
  std::unordered_map<std::string, Index> seen_users, seen_items;
  for (const auto& t : tuples) {
    if (seen_users.emplace(t.user, static_cast<Index>(users.size())).second) users.push_back(t.user);
    if (seen_items.emplace(t.item, static_cast<Index>(items.size())).second) items.push_back(t.item);
  }
  return from_tuples(tuples, LabelSet(std::move(users)), LabelSet(std::move(items)));
}

template <typename Scalar>
BasicRatingMatrix<Scalar> BasicRatingMatrix<Scalar>::from_tuples(std::span<const Tuple> tuples,
                                                                 LabelSet users, LabelSet items) {
  if (tuples.empty()) throw EmptyInput("a rating matrix needs at least one rating");
  std::vector<Eigen::Triplet<Scalar, int>> triplets;
  triplets.reserve(tuples.size());
  for (const auto& t : tuples) {
    if (!std::isfinite(static_cast<double>(t.rating)))
      throw InvalidRating("non-finite rating for (" + t.user + ", " + t.item + ")");
    const auto u = users.find(t.user);
    const auto i = items.find(t.item);
    if (!u) throw InvalidArgument("unknown user label '" + t.user + "'");
    if (!i) throw InvalidArgument("unknown item label '" + t.item + "'");
    triplets.emplace_back(static_cast<int>(*u), static_cast<int>(*i), t.rating);
  }
  std::ranges::sort(triplets, [](const auto& a, const auto& b) {
    return std::pair(a.row(), a.col()) < std::pair(b.row(), b.col());
  });
  for (std::size_t k = 1; k < triplets.size(); ++k) {
    if (triplets[k].row() == triplets[k - 1].row() && triplets[k].col() == triplets[k - 1].col())
      throw DuplicateEntry("duplicate rating for (" + users[triplets[k].row()] + ", " +
                           items[triplets[k].col()] + ")");
  }
  Storage storage(users.size(), items.size());
  storage.setFromTriplets(triplets.begin(), triplets.end());
  return BasicRatingMatrix(std::move(storage), std::move(users), std::move(items));
}

template <typename Scalar>
std::vector<typename BasicRatingMatrix<Scalar>::Tuple> BasicRatingMatrix<Scalar>::to_tuples()
    const {
  std::vector<Tuple> out;
  out.reserve(static_cast<std::size_t>(n_ratings()));
  for (Index u = 0; u < n_users(); ++u) {
    const auto r = row(u);
    for (std::size_t k = 0; k < r.items.size(); ++k)
      out.push_back({users_[u], items_[r.items[k]], r.values[k]});
  }
  return out;
}

template <typename Scalar>
std::optional<Scalar> BasicRatingMatrix<Scalar>::rating(Index user, Index item) const {
  const auto r = row(user);
  const auto it = std::ranges::lower_bound(r.items, static_cast<int>(item));
  if (it == r.items.end() || *it != item) return std::nullopt;
  return r.values[static_cast<std::size_t>(it - r.items.begin())];
}

template <typename Scalar>
typename BasicRatingMatrix<Scalar>::Dense BasicRatingMatrix<Scalar>::to_dense(Scalar missing) const {
  Dense out = Dense::Constant(n_users(), n_items(), missing);
  for (Index u = 0; u < n_users(); ++u) {
    const auto r = row(u);
    for (std::size_t k = 0; k < r.items.size(); ++k) out(u, r.items[k]) = r.values[k];
  }
  return out;
}

template <typename Scalar>
BasicRatingMatrix<Scalar> BasicRatingMatrix<Scalar>::select_users(
    std::span<const Index> users) const {
  std::vector<int> outer{0}, inner;
  std::vector<Scalar> values;
  for (const Index u : users) {
    if (u < 0 || u >= n_users()) throw InvalidArgument("user index out of range");
    const auto r = row(u);
    inner.insert(inner.end(), r.items.begin(), r.items.end());
    values.insert(values.end(), r.values.begin(), r.values.end());
    outer.push_back(static_cast<int>(inner.size()));
  }
  return from_csr(users_.subset(users), items_, std::move(outer), std::move(inner),
                  std::move(values));
}

template <typename Scalar>
BasicRatingMatrix<Scalar> BasicRatingMatrix<Scalar>::transposed() const {
  Storage t = ratings_.transpose();
  return BasicRatingMatrix(std::move(t), items_, users_);
}

template <typename Scalar>
template <typename F>
BasicRatingMatrix<Scalar> BasicRatingMatrix<Scalar>::map_rows(F&& f) const {
  Storage out = ratings_;
  for (Index u = 0; u < n_users(); ++u) {
    const auto r = row(u);
    const auto begin = static_cast<std::size_t>(out.outerIndexPtr()[u]);
    f(u, r, std::span<Scalar>(out.valuePtr() + begin, r.items.size()));
  }
  return BasicRatingMatrix(std::move(out), users_, items_);
}

}  // namespace reclab
