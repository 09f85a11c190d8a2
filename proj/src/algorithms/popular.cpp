#include <cmath>

#include "algorithms.hpp"

namespace reclab::algorithms {

namespace {

/// Ranks by rating count. Real-valued predictions are the user's own mean
/// plus the item's mean on the normalized scale (scaled back by the user's sd
/// for z-score).
class PopularModel final : public Model {
 public:
  PopularModel(Eigen::VectorXd popularity, Eigen::VectorXd item_offsets,
               std::optional<NormalizationMethod> method, double n_train)
      : popularity_(std::move(popularity)),
        item_offsets_(std::move(item_offsets)),
        method_(method),
        n_train_(n_train) {}

  Eigen::MatrixXd predict_ratings(const Dataset& newdata) const override {
    const auto* real = std::get_if<RatingMatrix>(&newdata);
    if (!real) {
      // 0-1 data: the fraction of training users holding the item.
      return (popularity_ / n_train_).transpose().replicate(n_users(newdata), 1);
    }
    Eigen::MatrixXd out(real->n_users(), real->n_items());
    for (Index u = 0; u < real->n_users(); ++u) {
      const auto row = real->row(u);
      const auto [mean, sd] = location_scale(row.values, method_);
      out.row(u) = (item_offsets_ * sd).array() + mean;
    }
    return out;
  }

  Eigen::MatrixXd rank_scores(const Dataset& newdata) const override {
    return popularity_.transpose().replicate(n_users(newdata), 1);
  }

 private:
  Eigen::VectorXd popularity_;
  Eigen::VectorXd item_offsets_;
  std::optional<NormalizationMethod> method_;
  double n_train_;
};

}  // namespace

void register_popular(Registry& registry) {
  registry.add(
      {"POPULAR", DataKind::real, "Recommender based on item popularity.",
       Params{{"normalize", "center"}}},
      [](const Dataset& train, const Params& p) -> std::shared_ptr<const Model> {
        const auto& m = real_data(train);
        const auto method = normalization_param(p);
        const auto cols = col_stats(normalized(m, method));
        Eigen::VectorXd offsets = cols.means;
        for (Index i = 0; i < offsets.size(); ++i)
          if (!cols.has_mean(i)) offsets(i) = 0.0;
        return std::make_shared<PopularModel>(cols.counts.cast<double>(), std::move(offsets), method,
                                              static_cast<double>(m.n_users()));
      });
  registry.add({"POPULAR", DataKind::binary, "Recommender based on item popularity.",
                Params::object()},
               [](const Dataset& train, const Params&) -> std::shared_ptr<const Model> {
                 const auto& m = binary_data(train);
                 const auto cols = col_stats(m);
                 return std::make_shared<PopularModel>(
                     cols.counts.cast<double>(), Eigen::VectorXd::Zero(m.n_items()), std::nullopt,
                     static_cast<double>(std::max<Index>(m.n_users(), 1)));
               });
}

}  // namespace reclab::algorithms
