#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace reclab {

using Index = std::ptrdiff_t;

/// Ordered set of unique labels with constant-time reverse lookup.
///
/// Instances are immutable and share their storage, so copying a LabelSet is
/// cheap. Throws InvalidArgument on duplicate or empty labels.
class LabelSet {
 public:
  LabelSet();
  explicit LabelSet(std::vector<std::string> labels);

  /// Labels "<prefix>1" .. "<prefix>n".
  static LabelSet numbered(std::string_view prefix, Index n);

  Index size() const noexcept;
  bool empty() const noexcept { return size() == 0; }
  const std::string& operator[](Index i) const;
  const std::vector<std::string>& labels() const noexcept;
  std::optional<Index> find(std::string_view label) const;

  /// Labels at the given positions, in the given order.
  LabelSet subset(std::span<const Index> positions) const;

  friend bool operator==(const LabelSet& a, const LabelSet& b);

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

}  // namespace reclab
