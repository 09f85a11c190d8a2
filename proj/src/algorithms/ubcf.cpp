#include <cmath>
#include <limits>

#include "algorithms.hpp"
#include "reclab/similarity.hpp"

namespace reclab::algorithms {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct UbcfOptions {
  SimilarityParams similarity;
  NeighborhoodMode mode = NeighborhoodMode::knn(25);
  bool weighted = true;
  bool drop_nonpositive = true;
  Index min_predictive = 0;
  std::optional<NormalizationMethod> normalize;
};

UbcfOptions parse_options(const Params& p, DataKind kind) {
  UbcfOptions o;
  try {
    o.similarity.measure = parse_measure(text_param(p, "method"));
  } catch (const InvalidArgument& e) {
    throw InvalidParam(e.what());
  }
  if (kind == DataKind::real && o.similarity.measure == Measure::jaccard)
    throw InvalidMeasure("jaccard similarity requires binary data");
  if (kind == DataKind::binary && o.similarity.measure != Measure::jaccard)
    throw InvalidMeasure("binary data supports jaccard similarity only");
  o.similarity.min_matching = count_param(p, "min_matching_items", 0);
  o.min_predictive = count_param(p, "min_predictive_items", 0);
  if (const auto t = optional_number_param(p, "threshold"))
    o.mode = NeighborhoodMode::threshold(*t);
  else
    o.mode = NeighborhoodMode::knn(count_param(p, "nn", 1));
  o.weighted = flag_param(p, "weighted");
  if (kind == DataKind::real) {
    o.drop_nonpositive = flag_param(p, "drop_nonpositive");
    o.normalize = normalization_param(p);
  }
  return o;
}

/// Keeps the (normalized) training rows; all work happens at prediction.
class UbcfModel final : public Model {
 public:
  UbcfModel(RatingMatrix train, UbcfOptions options)
      : train_(std::move(train)), options_(std::move(options)) {}

  Eigen::MatrixXd predict_ratings(const Dataset& newdata) const override {
    const auto active = normalize_rows(real_data(newdata), options_.normalize);
    const Index n_items = train_.n_items();
    Eigen::MatrixXd out(active.data.n_users(), n_items);
    Eigen::VectorXd num(n_items), den(n_items);
    Eigen::Matrix<Index, Eigen::Dynamic, 1> count(n_items);

    for (Index a = 0; a < active.data.n_users(); ++a) {
      const auto sims = similarity_to_rows(active.data.row(a), train_, options_.similarity);
      const auto neighbors = select_neighborhood(sims, std::nullopt, options_.mode);
      num.setZero();
      den.setZero();
      count.setZero();
      for (const auto& nb : neighbors) {
        double w = 1.0;
        if (options_.weighted) {
          if (options_.drop_nonpositive && nb.similarity <= 0.0) continue;
          w = nb.similarity;
        }
        const auto row = train_.row(nb.index);
        for (std::size_t k = 0; k < row.items.size(); ++k) {
          num(row.items[k]) += w * row.values[k];
          den(row.items[k]) += w;
          ++count(row.items[k]);
        }
      }
      const double mean = active.means(a), sd = active.sds(a);
      for (Index j = 0; j < n_items; ++j) {
        const bool defined = count(j) > 0 && count(j) >= options_.min_predictive &&
                             (!options_.weighted || den(j) > 0.0);
        out(a, j) = defined ? num(j) / den(j) * sd + mean : kNaN;
      }
    }
    return out;
  }

 private:
  RatingMatrix train_;
  UbcfOptions options_;
};

/// 0-1 data: an item's score is the share of total neighbor similarity held
/// by neighbors that have the item.
class BinaryUbcfModel final : public Model {
 public:
  BinaryUbcfModel(BinaryRatingMatrix train, UbcfOptions options)
      : train_(std::move(train)), options_(std::move(options)) {}

  Eigen::MatrixXd predict_ratings(const Dataset& newdata) const override {
    const auto& m = binary_data(newdata);
    const Index n_items = train_.n_items();
    Eigen::MatrixXd out(m.n_users(), n_items);
    Eigen::VectorXd held(n_items);
    Eigen::Matrix<Index, Eigen::Dynamic, 1> count(n_items);

    for (Index a = 0; a < m.n_users(); ++a) {
      const auto sims = similarity_to_rows(m.row(a), train_, options_.similarity);
      const auto neighbors = select_neighborhood(sims, std::nullopt, options_.mode);
      held.setZero();
      count.setZero();
      double total = 0.0;
      for (const auto& nb : neighbors) {
        const double w = options_.weighted ? nb.similarity : 1.0;
        total += w;
        for (const int j : train_.row(nb.index)) {
          held(j) += w;
          ++count(j);
        }
      }
      for (Index j = 0; j < n_items; ++j) {
        const bool defined = count(j) > 0 && count(j) >= options_.min_predictive && total > 0.0;
        out(a, j) = defined ? held(j) / total : kNaN;
      }
    }
    return out;
  }

 private:
  BinaryRatingMatrix train_;
  UbcfOptions options_;
};

}  // namespace

void register_ubcf(Registry& registry) {
  registry.add({"UBCF", DataKind::real, "Recommender based on user-based collaborative filtering.",
                Params{{"method", "cosine"},
                       {"nn", 25},
                       {"weighted", true},
                       {"normalize", "center"},
                       {"min_matching_items", 0},
                       {"min_predictive_items", 0},
                       {"drop_nonpositive", true},
                       {"threshold", nullptr}}},
               [](const Dataset& train, const Params& p) -> std::shared_ptr<const Model> {
                 auto options = parse_options(p, DataKind::real);
                 auto data = normalized(real_data(train), options.normalize);
                 return std::make_shared<UbcfModel>(std::move(data), std::move(options));
               });
  registry.add({"UBCF", DataKind::binary,
                "Recommender based on user-based collaborative filtering.",
                Params{{"method", "jaccard"},
                       {"nn", 25},
                       {"weighted", true},
                       {"min_matching_items", 0},
                       {"min_predictive_items", 0},
                       {"threshold", nullptr}}},
               [](const Dataset& train, const Params& p) -> std::shared_ptr<const Model> {
                 return std::make_shared<BinaryUbcfModel>(binary_data(train),
                                                          parse_options(p, DataKind::binary));
               });
}

}  // namespace reclab::algorithms
