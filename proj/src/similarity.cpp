#include "reclab/similarity.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace reclab {

Measure parse_measure(std::string_view text) {
  std::string t(text);
  std::ranges::transform(t, t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "pearson") return Measure::pearson;
  if (t == "cosine") return Measure::cosine;
  if (t == "jaccard") return Measure::jaccard;
  throw InvalidMeasure("unknown similarity measure '" + std::string(text) + "'");
}

std::string_view to_string(Measure measure) {
  switch (measure) {
    case Measure::pearson: return "pearson";
    case Measure::cosine: return "cosine";
    case Measure::jaccard: return "jaccard";
  }
  return "?";
}

namespace detail {

Index intersection_size(std::span<const int> a, std::span<const int> b) {
  Index n = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

}  // namespace detail

std::optional<double> similarity(std::span<const int> a, std::span<const int> b,
                                  const SimilarityParams& params) {
  if (params.measure != Measure::jaccard)
    throw InvalidMeasure(std::string(to_string(params.measure)) +
                         " similarity is not defined for 0-1 data; use jaccard");
  const Index common = detail::intersection_size(a, b);
  const Index uni = static_cast<Index>(a.size() + b.size()) - common;
  if (uni == 0 || common < params.min_matching) return std::nullopt;
  return static_cast<double>(common) / static_cast<double>(uni);
}

Eigen::VectorXd similarity_to_rows(std::span<const int> query, const BinaryRatingMatrix& m,
                                   const SimilarityParams& params) {
  Eigen::VectorXd out(m.n_users());
  for (Index r = 0; r < m.n_users(); ++r)
    out(r) = similarity(query, m.row(r), params).value_or(std::numeric_limits<double>::quiet_NaN());
  return out;
}

Eigen::MatrixXd similarity_matrix(const BinaryRatingMatrix& m, Axis axis,
                                  const SimilarityParams& params) {
  if (params.measure != Measure::jaccard)
    throw InvalidMeasure(std::string(to_string(params.measure)) +
                         " similarity is not defined for 0-1 data; use jaccard");
  const BinaryRatingMatrix rows = axis == Axis::users ? m : m.transposed();
  const Index n = rows.n_users();
  Eigen::MatrixXd s(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j) {
      const double v =
          similarity(rows.row(i), rows.row(j), params).value_or(std::numeric_limits<double>::quiet_NaN());
      s(i, j) = v;
      s(j, i) = v;
    }
  }
  return s;
}

Neighborhood select_neighborhood(const Eigen::Ref<const Eigen::VectorXd>& similarities,
                                 std::optional<Index> exclude, const NeighborhoodMode& mode) {
  Neighborhood candidates;
  for (Index i = 0; i < similarities.size(); ++i) {
    const double s = similarities(i);
    if (!is_defined(s) || (exclude && *exclude == i)) continue;
    if (!mode.is_knn() && s < mode.min_similarity()) continue;
    candidates.push_back({i, s});
  }
  const auto order = [](const Neighbor& a, const Neighbor& b) {
    return a.similarity > b.similarity || (a.similarity == b.similarity && a.index < b.index);
  };
  if (mode.is_knn() && static_cast<Index>(candidates.size()) > mode.k()) {
    const auto k = static_cast<std::ptrdiff_t>(std::max<Index>(mode.k(), 0));
    std::partial_sort(candidates.begin(), candidates.begin() + k, candidates.end(), order);
    candidates.resize(static_cast<std::size_t>(k));
  } else {
    std::ranges::sort(candidates, order);
  }
  return candidates;
}

Neighborhood select_neighborhood(const Eigen::MatrixXd& s, Index target,
                                 const NeighborhoodMode& mode) {
  if (target < 0 || target >= s.rows()) throw InvalidArgument("target index out of range");
  const Eigen::VectorXd row = s.row(target).transpose();
  return select_neighborhood(row, std::optional<Index>(target), mode);
}

std::vector<Neighborhood> truncate_similarities(const Eigen::MatrixXd& s, Index k) {
  if (k < 1) throw InvalidArgument("k must be at least 1");
  std::vector<Neighborhood> rows;
  rows.reserve(static_cast<std::size_t>(s.rows()));
  for (Index i = 0; i < s.rows(); ++i) rows.push_back(select_neighborhood(s, i, NeighborhoodMode::knn(k)));
  return rows;
}

}  // namespace reclab
