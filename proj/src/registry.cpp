#include "reclab/registry.hpp"

#include <algorithm>

#include "algorithms/algorithms.hpp"

namespace reclab {

Registry& Registry::global() {
  static Registry* registry = [] {
    auto* r = new Registry();
    register_builtin_algorithms(*r);
    return r;
  }();
  return *registry;
}

void Registry::add(AlgorithmSpec spec, ModelFactory factory) {
  if (spec.name.empty()) throw InvalidArgument("algorithm name must not be empty");
  if (!factory) throw InvalidArgument("algorithm factory must be callable");
  if (!spec.default_params.is_object()) throw InvalidArgument("default parameters must be an object");
  std::lock_guard lock(mutex_);
  const bool taken = std::ranges::any_of(entries_, [&](const Entry& e) {
    return e.spec.name == spec.name && e.spec.data_kind == spec.data_kind;
  });
  if (taken)
    throw AlreadyRegistered("algorithm '" + spec.name + "' is already registered for " +
                            std::string(matrix_class_name(spec.data_kind)));
  entries_.push_back({std::move(spec), std::move(factory)});
}

std::vector<AlgorithmSpec> Registry::entries(DataKind kind) const {
  std::lock_guard lock(mutex_);
  std::vector<AlgorithmSpec> out;
  for (const auto& e : entries_)
    if (e.spec.data_kind == kind) out.push_back(e.spec);
  return out;
}

std::vector<AlgorithmSpec> Registry::entries() const {
  std::lock_guard lock(mutex_);
  std::vector<AlgorithmSpec> out;
  for (const auto& e : entries_) out.push_back(e.spec);
  return out;
}

std::optional<AlgorithmSpec> Registry::find(std::string_view name, DataKind kind) const {
  std::lock_guard lock(mutex_);
  for (const auto& e : entries_)
    if (e.spec.name == name && e.spec.data_kind == kind) return e.spec;
  return std::nullopt;
}

bool Registry::knows(std::string_view name) const {
  std::lock_guard lock(mutex_);
  return std::ranges::any_of(entries_, [&](const Entry& e) { return e.spec.name == name; });
}

RecommenderModel Registry::fit(std::string_view name, const Dataset& data,
                               const Params& params) const {
  const DataKind kind = kind_of(data);
  AlgorithmSpec spec;
  ModelFactory factory;
  {
    std::lock_guard lock(mutex_);
    const auto it = std::ranges::find_if(entries_, [&](const Entry& e) {
      return e.spec.name == name && e.spec.data_kind == kind;
    });
    if (it == entries_.end()) {
      const bool other_kind =
          std::ranges::any_of(entries_, [&](const Entry& e) { return e.spec.name == name; });
      throw UnknownAlgorithm(other_kind ? std::string(name) + " does not implement a method for " +
                                              std::string(matrix_class_name(kind))
                                        : "unknown algorithm '" + std::string(name) + "'");
    }
    spec = it->spec;
    factory = it->factory;
  }
  Params resolved = resolve_params(spec, params);
  auto state = factory(data, resolved);
  return RecommenderModel(spec.name, kind, std::move(resolved), n_users(data), item_labels(data),
                          std::move(state));
}

Params resolve_params(const AlgorithmSpec& spec, const Params& user) {
  Params out = spec.default_params;
  if (user.is_null()) return out;
  if (!user.is_object()) throw InvalidParam("parameters must be a JSON object");
  for (const auto& [key, value] : user.items()) {
    if (!spec.default_params.contains(key))
      throw InvalidParam("unknown parameter '" + key + "' for " + spec.name);
    const auto& def = spec.default_params.at(key);
    const bool compatible = def.is_null() || value.is_null() ||
                            (def.is_number() && value.is_number()) ||
                            (def.is_boolean() && value.is_boolean()) ||
                            (def.is_string() && value.is_string()) ||
                            (def.is_array() && value.is_array()) ||
                            (def.is_object() && value.is_object());
    if (!compatible)
      throw InvalidParam("parameter '" + key + "' of " + spec.name + " expects " + def.type_name() +
                         ", got " + value.type_name());
    out[key] = value;
  }
  return out;
}

void register_builtin_algorithms(Registry& registry) {
  algorithms::register_association_rules(registry);
  algorithms::register_hybrid(registry);
  algorithms::register_ibcf(registry);
  algorithms::register_popular(registry);
  algorithms::register_random(registry);
  algorithms::register_rerecommend(registry);
  algorithms::register_svd(registry);
  algorithms::register_ubcf(registry);
}

}  // namespace reclab
