#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>

#include "reclab/registry.hpp"

namespace reclab::algorithms {

void register_association_rules(Registry& registry);
void register_hybrid(Registry& registry);
void register_ibcf(Registry& registry);
void register_popular(Registry& registry);
void register_random(Registry& registry);
void register_rerecommend(Registry& registry);
void register_svd(Registry& registry);
void register_ubcf(Registry& registry);

// --- parameter access (params are already resolved against defaults) --------

double number_param(const Params& p, const std::string& key);
std::optional<double> optional_number_param(const Params& p, const std::string& key);
/// Integer-valued parameter >= `min`.
Index count_param(const Params& p, const std::string& key, Index min);
bool flag_param(const Params& p, const std::string& key);
std::string text_param(const Params& p, const std::string& key);
std::uint64_t seed_param(const Params& p);
/// "normalize": "center" | "z-score" | null (no normalization).
std::optional<NormalizationMethod> normalization_param(const Params& p);

/// Per-user location and scale under an optional normalization; identity
/// (0, 1) when no normalization is requested.
std::pair<double, double> location_scale(std::span<const double> values,
                                         const std::optional<NormalizationMethod>& method);

/// Row-normalizes a matrix, or returns it unchanged for no normalization.
RatingMatrix normalized(const RatingMatrix& m, const std::optional<NormalizationMethod>& method);

/// Normalized rows together with the per-user location and scale to invert them.
struct NormalizedRows {
  RatingMatrix data;
  Eigen::VectorXd means;
  Eigen::VectorXd sds;
};

NormalizedRows normalize_rows(const RatingMatrix& m,
                              const std::optional<NormalizationMethod>& method);

const RatingMatrix& real_data(const Dataset& d);
const BinaryRatingMatrix& binary_data(const Dataset& d);

}  // namespace reclab::algorithms
