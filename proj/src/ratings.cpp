#include "reclab/ratings.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace reclab {

namespace {

std::string lowercase(std::string_view text) {
  std::string out(text);
  std::ranges::transform(out, out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

}  // namespace

DataKind parse_data_kind(std::string_view text) {
  const auto t = lowercase(text);
  if (t == "real" || t == "realratingmatrix") return DataKind::real;
  if (t == "binary" || t == "binaryratingmatrix") return DataKind::binary;
  throw InvalidArgument("unknown data kind '" + std::string(text) + "'");
}

std::string_view to_string(DataKind kind) { return kind == DataKind::real ? "real" : "binary"; }

std::string_view matrix_class_name(DataKind kind) {
  return kind == DataKind::real ? "realRatingMatrix" : "binaryRatingMatrix";
}

Index n_users(const Dataset& d) {
  return std::visit([](const auto& m) { return m.n_users(); }, d);
}

Index n_items(const Dataset& d) {
  return std::visit([](const auto& m) { return m.n_items(); }, d);
}

Index n_ratings(const Dataset& d) {
  return std::visit([](const auto& m) { return m.n_ratings(); }, d);
}

const LabelSet& user_labels(const Dataset& d) {
  return std::visit([](const auto& m) -> const LabelSet& { return m.user_labels(); }, d);
}

const LabelSet& item_labels(const Dataset& d) {
  return std::visit([](const auto& m) -> const LabelSet& { return m.item_labels(); }, d);
}

std::span<const int> row_items(const Dataset& d, Index user) {
  if (const auto* real = std::get_if<RatingMatrix>(&d)) return real->row(user).items;
  return std::get<BinaryRatingMatrix>(d).row(user);
}

Index row_count(const Dataset& d, Index user) {
  return static_cast<Index>(row_items(d, user).size());
}

Dataset select_users(const Dataset& d, std::span<const Index> users) {
  return std::visit([&](const auto& m) -> Dataset { return m.select_users(users); }, d);
}

MarginStats row_stats(const BinaryRatingMatrix& m) {
  MarginStats s{Eigen::Matrix<Index, Eigen::Dynamic, 1>(m.n_users()), Eigen::VectorXd(m.n_users()),
                Eigen::VectorXd(m.n_users())};
  for (Index u = 0; u < m.n_users(); ++u) {
    const auto c = static_cast<Index>(m.row(u).size());
    s.counts(u) = c;
    s.sums(u) = static_cast<double>(c);
    s.means(u) = m.n_items() > 0 ? static_cast<double>(c) / static_cast<double>(m.n_items())
                                 : std::numeric_limits<double>::quiet_NaN();
  }
  return s;
}

MarginStats col_stats(const BinaryRatingMatrix& m) { return row_stats(m.transposed()); }

NormalizationMethod parse_normalization(std::string_view text) {
  const auto t = lowercase(text);
  if (t == "center") return NormalizationMethod::center;
  if (t == "z-score" || t == "zscore" || t == "z_score") return NormalizationMethod::z_score;
  throw InvalidArgument("unknown normalization '" + std::string(text) + "'");
}

std::string_view to_string(NormalizationMethod method) {
  return method == NormalizationMethod::center ? "center" : "z-score";
}

std::vector<Index> sample_without_replacement(Index n, Index k, std::uint64_t seed) {
  std::vector<Index> positions(static_cast<std::size_t>(n));
  std::iota(positions.begin(), positions.end(), Index{0});
  std::mt19937_64 rng(seed);
  // Partial Fisher-Yates: only the first k slots are needed.
  for (Index i = 0; i < k; ++i) {
    std::uniform_int_distribution<Index> pick(i, n - 1);
    std::swap(positions[static_cast<std::size_t>(i)], positions[static_cast<std::size_t>(pick(rng))]);
  }
  positions.resize(static_cast<std::size_t>(k));
  return positions;
}

Dataset filter_users(const Dataset& d, Index min_count) {
  std::vector<Index> keep;
  for (Index u = 0; u < n_users(d); ++u)
    if (row_count(d, u) >= min_count) keep.push_back(u);
  return select_users(d, keep);
}

}  // namespace reclab
