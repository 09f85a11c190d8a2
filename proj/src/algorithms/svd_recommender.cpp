#include <limits>

#include "algorithms.hpp"
#include "reclab/svd.hpp"

namespace reclab::algorithms {

namespace {

/// Dense normalized rows with missing cells replaced by the item means of
/// the normalized training data.
Eigen::MatrixXd impute(const RatingMatrix& normalized_rows, const Eigen::VectorXd& item_means) {
  Eigen::MatrixXd x = item_means.transpose().replicate(normalized_rows.n_users(), 1);
  for (Index u = 0; u < normalized_rows.n_users(); ++u) {
    const auto row = normalized_rows.row(u);
    for (std::size_t k = 0; k < row.items.size(); ++k) x(u, row.items[k]) = row.values[k];
  }
  return x;
}

/// Projects each user's imputed row onto the span of the leading right
/// singular vectors.
class SvdModel final : public Model {
 public:
  SvdModel(Eigen::VectorXd item_means, Eigen::MatrixXd v,
           std::optional<NormalizationMethod> normalize)
      : item_means_(std::move(item_means)), v_(std::move(v)), normalize_(normalize) {}

  Eigen::MatrixXd predict_ratings(const Dataset& newdata) const override {
    const auto active = normalize_rows(real_data(newdata), normalize_);
    const Eigen::MatrixXd x = impute(active.data, item_means_);
    Eigen::MatrixXd out = (x * v_) * v_.transpose();
    out.array().colwise() *= active.sds.array();
    out.colwise() += active.means;
    return out;
  }

 private:
  Eigen::VectorXd item_means_;
  Eigen::MatrixXd v_;
  std::optional<NormalizationMethod> normalize_;
};

}  // namespace

void register_svd(Registry& registry) {
  registry.add(
      {"SVD", DataKind::real, "Recommender based on SVD approximation with column-mean imputation.",
       Params{{"k", 10}, {"maxiter", 100}, {"normalize", "center"}, {"seed", 0}}},
      [](const Dataset& train, const Params& p) -> std::shared_ptr<const Model> {
        const auto method = normalization_param(p);
        const RatingMatrix data = normalized(real_data(train), method);
        const Index k = count_param(p, "k", 1);
        const Index max_iter = count_param(p, "maxiter", 1);
        if (k > std::min(data.n_users(), data.n_items()))
          throw InvalidParam("k = " + std::to_string(k) +
                             " exceeds the smaller dimension of the training data");
        const auto cols = col_stats(data);
        Eigen::VectorXd item_means = cols.means;
        for (Index i = 0; i < item_means.size(); ++i)
          if (!cols.has_mean(i)) item_means(i) = 0.0;
        auto svd = truncated_svd(impute(data, item_means), k, max_iter, 1e-9, seed_param(p));
        return std::make_shared<SvdModel>(std::move(item_means), std::move(svd.v), method);
      });
}

}  // namespace reclab::algorithms
