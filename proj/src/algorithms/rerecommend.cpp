#include <limits>
#include <random>

#include "algorithms.hpp"

namespace reclab::algorithms {

namespace {

/// Re-recommends the user's own highly rated items. This is the one
/// algorithm whose lists deliberately contain known items.
class RerecommendModel final : public Model {
 public:
  RerecommendModel(double randomize, std::optional<double> min_rating, std::uint64_t seed)
      : randomize_(randomize), min_rating_(min_rating), seed_(seed) {}

  Eigen::MatrixXd predict_ratings(const Dataset& newdata) const override {
    return Eigen::MatrixXd::Constant(n_users(newdata), n_items(newdata),
                                     std::numeric_limits<double>::quiet_NaN());
  }

  Eigen::MatrixXd rank_scores(const Dataset& newdata) const override {
    const auto& m = real_data(newdata);
    Eigen::MatrixXd out = predict_ratings(newdata);
    std::mt19937_64 rng(seed_);
    std::uniform_real_distribution<double> jitter(0.0, 1.0);
    for (Index u = 0; u < m.n_users(); ++u) {
      const auto row = m.row(u);
      for (std::size_t k = 0; k < row.items.size(); ++k) {
        const double noise = randomize_ > 0.0 ? randomize_ * jitter(rng) : 0.0;
        if (min_rating_ && row.values[k] < *min_rating_) continue;
        out(u, row.items[k]) = row.values[k] + noise;
      }
    }
    return out;
  }

  bool excludes_known_items() const override { return false; }

 private:
  double randomize_;
  std::optional<double> min_rating_;
  std::uint64_t seed_;
};

}  // namespace

void register_rerecommend(Registry& registry) {
  registry.add({"RERECOMMEND", DataKind::real, "Re-recommends highly rated items (real ratings).",
                Params{{"randomize", 1}, {"minRating", nullptr}, {"seed", 0}}},
               [](const Dataset&, const Params& p) -> std::shared_ptr<const Model> {
                 const double randomize = number_param(p, "randomize");
                 if (randomize < 0.0) throw InvalidParam("randomize must be >= 0");
                 return std::make_shared<RerecommendModel>(
                     randomize, optional_number_param(p, "minRating"), seed_param(p));
               });
}

}  // namespace reclab::algorithms
