#pragma once

#include <cstdint>

#include "reclab/rating_matrix.hpp"

namespace reclab {

/// Parameters of the synthetic rating generator.
///
/// Each user rates a near-equal share of round(density * users * items)
/// items, drawn without replacement with probability proportional to
/// popularity rank^-skew. A rating is
///   mean + user bias + item bias + <user factors, item factors> + noise,
/// rounded to `decimals` places and clamped to [lo, hi]. Item biases
/// correlate with popularity by `popularity_bias`.
struct SyntheticSpec {
  Index n_users = 1000;
  Index n_items = 100;
  double density = 0.3;
  double mean = 0.5;
  double user_bias_sd = 1.5;
  double item_bias_sd = 2.0;
  /// In [-1, 1]: correlation between item bias and log popularity.
  double popularity_bias = 0.5;
  double skew = 1.0;
  Index factors = 3;
  double factor_sd = 1.4;
  double noise_sd = 1.5;
  double lo = -10.0;
  double hi = 10.0;
  int decimals = 2;
  std::uint64_t seed = 0;
};

/// Throws InvalidArgument for an inconsistent spec.
void validate(const SyntheticSpec& spec);

/// Users u1.., items i1...
RatingMatrix generate_ratings(const SyntheticSpec& spec);

}  // namespace reclab
