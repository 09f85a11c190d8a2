#include "reclab/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace reclab {

void validate(const SyntheticSpec& spec) {
  if (spec.n_users < 1 || spec.n_items < 1) throw InvalidArgument("users and items must be positive");
  if (!(spec.density > 0.0 && spec.density < 1.0)) throw InvalidArgument("density must lie in (0, 1)");
  if (!(spec.lo < spec.hi)) throw InvalidArgument("rating scale needs lo < hi");
  if (!(spec.skew >= 0.0)) throw InvalidArgument("skew must be >= 0");
  if (!(spec.popularity_bias >= -1.0 && spec.popularity_bias <= 1.0))
    throw InvalidArgument("popularity_bias must lie in [-1, 1]");
  if (spec.factors < 0) throw InvalidArgument("factors must be >= 0");
  if (spec.decimals < 0 || spec.decimals > 12) throw InvalidArgument("decimals must lie in [0, 12]");
  for (const double sd : {spec.user_bias_sd, spec.item_bias_sd, spec.factor_sd, spec.noise_sd})
    if (!(sd >= 0.0)) throw InvalidArgument("standard deviations must be >= 0");
  const double total = std::round(spec.density * static_cast<double>(spec.n_users) *
                                  static_cast<double>(spec.n_items));
  if (total < 1.0) throw InvalidArgument("density yields no ratings");
}

RatingMatrix generate_ratings(const SyntheticSpec& spec) {
  validate(spec);
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto n_users = static_cast<std::size_t>(spec.n_users);
  const auto n_items = static_cast<std::size_t>(spec.n_items);

  // Popularity ranks are a random permutation of the items.
  std::vector<Index> rank(n_items);
  std::iota(rank.begin(), rank.end(), Index{1});
  std::shuffle(rank.begin(), rank.end(), rng);
  std::vector<double> log_weight(n_items);
  for (std::size_t i = 0; i < n_items; ++i)
    log_weight[i] = -spec.skew * std::log(static_cast<double>(rank[i]));

  // Item bias = rho * standardized log popularity + sqrt(1 - rho^2) * noise.
  const double lw_mean = std::accumulate(log_weight.begin(), log_weight.end(), 0.0) /
                         static_cast<double>(n_items);
  double lw_ss = 0.0;
  for (const double w : log_weight) lw_ss += (w - lw_mean) * (w - lw_mean);
  const double lw_sd = std::sqrt(lw_ss / static_cast<double>(n_items));
  const double rho = spec.popularity_bias;
  std::vector<double> item_bias(n_items);
  for (std::size_t i = 0; i < n_items; ++i) {
    const double z = lw_sd > 0.0 ? (log_weight[i] - lw_mean) / lw_sd : 0.0;
    item_bias[i] = spec.item_bias_sd * (rho * z + std::sqrt(1.0 - rho * rho) * normal(rng));
  }
  const auto n_factors = static_cast<Index>(spec.factors);
  // Factor scale chosen so the dot product has standard deviation factor_sd.
  const double factor_scale =
      n_factors > 0 ? std::sqrt(spec.factor_sd / std::sqrt(static_cast<double>(n_factors))) : 0.0;
  Eigen::MatrixXd item_factors(n_factors, spec.n_items);
  for (Index i = 0; i < spec.n_items; ++i)
    for (Index f = 0; f < n_factors; ++f) item_factors(f, i) = factor_scale * normal(rng);

  const auto total = static_cast<Index>(std::llround(spec.density * static_cast<double>(spec.n_users) *
                                                     static_cast<double>(spec.n_items)));
  const Index per_user = total / spec.n_users;
  const Index extra = total % spec.n_users;
  const double scale = std::pow(10.0, spec.decimals);

  std::vector<int> outer{0}, inner;
  std::vector<double> values;
  inner.reserve(static_cast<std::size_t>(total));
  values.reserve(static_cast<std::size_t>(total));
  std::vector<std::pair<double, int>> keys(n_items);
  Eigen::VectorXd user_factors(n_factors);
  for (std::size_t u = 0; u < n_users; ++u) {
    const double user_bias = spec.user_bias_sd * normal(rng);
    for (Index f = 0; f < n_factors; ++f) user_factors(f) = factor_scale * normal(rng);
    const Index count =
        std::min<Index>(per_user + (static_cast<Index>(u) < extra ? 1 : 0), spec.n_items);

    // Weighted sampling without replacement: the `count` largest keys
    // log(U) / w, computed in log space as log(-log U) - log w ascending.
    for (std::size_t i = 0; i < n_items; ++i)
      keys[i] = {std::log(-std::log(1.0 - unit(rng))) - log_weight[i], static_cast<int>(i)};
    std::partial_sort(keys.begin(), keys.begin() + count, keys.end());
    std::vector<int> chosen;
    for (Index k = 0; k < count; ++k) chosen.push_back(keys[static_cast<std::size_t>(k)].second);
    std::ranges::sort(chosen);

    for (const int i : chosen) {
      double r = spec.mean + user_bias + item_bias[static_cast<std::size_t>(i)] +
                 (n_factors > 0 ? user_factors.dot(item_factors.col(i)) : 0.0) +
                 spec.noise_sd * normal(rng);
      r = std::round(r * scale) / scale;
      inner.push_back(i);
      values.push_back(std::clamp(r, spec.lo, spec.hi) + 0.0);  // no negative zero
    }
    outer.push_back(static_cast<int>(inner.size()));
  }
  return RatingMatrix::from_csr(LabelSet::numbered("u", spec.n_users),
                                LabelSet::numbered("i", spec.n_items), std::move(outer),
                                std::move(inner), std::move(values));
}

}  // namespace reclab
