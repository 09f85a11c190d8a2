#include "reclab/rating_matrix.hpp"

#include <unordered_map>

namespace reclab {

struct LabelSet::Impl {
  std::vector<std::string> labels;
  std::unordered_map<std::string, Index> index;
};

LabelSet::LabelSet() {
  static const auto empty = std::make_shared<const Impl>();
  impl_ = empty;
}

LabelSet::LabelSet(std::vector<std::string> labels) {
  auto impl = std::make_shared<Impl>();
  impl->index.reserve(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i].empty()) throw InvalidArgument("labels must be non-empty strings");
    if (!impl->index.emplace(labels[i], static_cast<Index>(i)).second)
      throw InvalidArgument("duplicate label '" + labels[i] + "'");
  }
  impl->labels = std::move(labels);
  impl_ = std::move(impl);
}

LabelSet LabelSet::numbered(std::string_view prefix, Index n) {
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(n));
  for (Index i = 1; i <= n; ++i) labels.push_back(std::string(prefix) + std::to_string(i));
  return LabelSet(std::move(labels));
}

Index LabelSet::size() const noexcept { return static_cast<Index>(impl_->labels.size()); }

const std::string& LabelSet::operator[](Index i) const {
  return impl_->labels[static_cast<std::size_t>(i)];
}

const std::vector<std::string>& LabelSet::labels() const noexcept { return impl_->labels; }

std::optional<Index> LabelSet::find(std::string_view label) const {
  const auto it = impl_->index.find(std::string(label));
  if (it == impl_->index.end()) return std::nullopt;
  return it->second;
}

LabelSet LabelSet::subset(std::span<const Index> positions) const {
  std::vector<std::string> out;
  out.reserve(positions.size());
  for (const Index p : positions) {
    if (p < 0 || p >= size()) throw InvalidArgument("label position out of range");
    out.push_back(impl_->labels[static_cast<std::size_t>(p)]);
  }
  return LabelSet(std::move(out));
}

bool operator==(const LabelSet& a, const LabelSet& b) {
  return a.impl_ == b.impl_ || a.impl_->labels == b.impl_->labels;
}

namespace detail {

void validate_csr(Index rows, Index cols, std::span<const int> outer, std::span<const int> inner) {
  if (static_cast<Index>(outer.size()) != rows + 1) throw ShapeMismatch("bad row pointer length");
  for (Index r = 0; r < rows; ++r) {
    const auto begin = outer[static_cast<std::size_t>(r)];
    const auto end = outer[static_cast<std::size_t>(r) + 1];
    if (end < begin) throw ShapeMismatch("row pointers must be non-decreasing");
    for (int k = begin; k < end; ++k) {
      const int c = inner[static_cast<std::size_t>(k)];
      if (c < 0 || c >= cols) throw ShapeMismatch("column index out of range");
      if (k > begin && c <= inner[static_cast<std::size_t>(k) - 1])
        throw DuplicateEntry("column indices must be strictly increasing within a row");
    }
  }
}

}  // namespace detail

BinaryRatingMatrix::BinaryRatingMatrix(LabelSet users, LabelSet items, std::vector<int> outer,
                                       std::vector<int> inner)
    : users_(std::move(users)),
      items_(std::move(items)),
      outer_(std::move(outer)),
      inner_(std::move(inner)) {
  if (outer_.empty() || outer_.front() != 0 ||
      static_cast<std::size_t>(outer_.back()) != inner_.size())
    throw ShapeMismatch("inconsistent CSR arrays");
  detail::validate_csr(users_.size(), items_.size(), outer_, inner_);
}

BinaryRatingMatrix::BinaryRatingMatrix(LabelSet users, LabelSet items,
                                       const std::vector<std::vector<int>>& rows)
    : users_(std::move(users)), items_(std::move(items)) {
  if (static_cast<Index>(rows.size()) != users_.size())
    throw ShapeMismatch("row count does not match user labels");
  for (const auto& r : rows) {
    inner_.insert(inner_.end(), r.begin(), r.end());
    outer_.push_back(static_cast<int>(inner_.size()));
  }
  detail::validate_csr(users_.size(), items_.size(), outer_, inner_);
}

bool BinaryRatingMatrix::contains(Index user, Index item) const {
  return std::ranges::binary_search(row(user), static_cast<int>(item));
}

BinaryRatingMatrix BinaryRatingMatrix::select_users(std::span<const Index> users) const {
  std::vector<int> outer{0}, inner;
  for (const Index u : users) {
    if (u < 0 || u >= n_users()) throw InvalidArgument("user index out of range");
    const auto r = row(u);
    inner.insert(inner.end(), r.begin(), r.end());
    outer.push_back(static_cast<int>(inner.size()));
  }
  return BinaryRatingMatrix(users_.subset(users), items_, std::move(outer), std::move(inner));
}

BinaryRatingMatrix BinaryRatingMatrix::transposed() const {
  std::vector<int> counts(static_cast<std::size_t>(n_items()) + 1, 0);
  for (const int i : inner_) ++counts[static_cast<std::size_t>(i) + 1];
  std::partial_sum(counts.begin(), counts.end(), counts.begin());
  std::vector<int> inner(inner_.size());
  std::vector<int> fill(counts.begin(), counts.end() - 1);
  for (Index u = 0; u < n_users(); ++u)
    for (const int i : row(u)) inner[static_cast<std::size_t>(fill[static_cast<std::size_t>(i)]++)] = static_cast<int>(u);
  return BinaryRatingMatrix(items_, users_, std::move(counts), std::move(inner));
}

RatingMatrix BinaryRatingMatrix::to_real() const {
  return RatingMatrix::from_csr(users_, items_, outer_, inner_,
                                std::vector<double>(inner_.size(), 1.0));
}

}  // namespace reclab
