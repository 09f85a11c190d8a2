#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "reclab/recommender.hpp"

namespace reclab {

struct AlgorithmSpec {
  std::string name;
  DataKind data_kind = DataKind::real;
  std::string description;
  Params default_params = Params::object();
};

/// Builds fitted state from training data and fully resolved parameters.
using ModelFactory =
    std::function<std::shared_ptr<const Model>(const Dataset& train, const Params& params)>;

/// Named recommender algorithms keyed by (name, data kind).
class Registry {
 public:
  Registry() = default;
  Registry(const Registry&) = delete;
  Registry& operator=(const Registry&) = delete;

  /// Process-wide registry preloaded with the built-in algorithms.
  static Registry& global();

  /// Throws AlreadyRegistered if (name, kind) is taken.
  void add(AlgorithmSpec spec, ModelFactory factory);

  /// Entries for one data kind, in registration order.
  std::vector<AlgorithmSpec> entries(DataKind kind) const;
  std::vector<AlgorithmSpec> entries() const;

  std::optional<AlgorithmSpec> find(std::string_view name, DataKind kind) const;
  /// True if `name` is registered for any kind.
  bool knows(std::string_view name) const;

  RecommenderModel fit(std::string_view name, const Dataset& data,
                       const Params& params = Params::object()) const;

 private:
  struct Entry {
    AlgorithmSpec spec;
    ModelFactory factory;
  };

  mutable std::mutex mutex_;
  std::vector<Entry> entries_;
};

/// Defaults overlaid with `user`. Keys absent from the defaults and values
/// whose JSON type disagrees with a non-null default raise InvalidParam.
Params resolve_params(const AlgorithmSpec& spec, const Params& user);

void register_builtin_algorithms(Registry& registry);

}  // namespace reclab
