#include <cmath>
#include <limits>

#include "algorithms.hpp"

namespace reclab::algorithms {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Child {
  std::shared_ptr<const Model> model;
  double weight;
};

/// Weighted mean over the children that have a value in a cell; NaN if none do.
Eigen::MatrixXd weighted_mean(const std::vector<Eigen::MatrixXd>& parts,
                              const std::vector<Child>& children) {
  Eigen::MatrixXd num = Eigen::MatrixXd::Zero(parts.front().rows(), parts.front().cols());
  Eigen::MatrixXd den = num;
  for (std::size_t c = 0; c < parts.size(); ++c) {
    const auto defined = (parts[c].array() == parts[c].array()).cast<double>();
    num.array() += defined * parts[c].array().isNaN().select(0.0, parts[c].array()) *
                   children[c].weight;
    den.array() += defined * children[c].weight;
  }
  return (den.array() > 0.0).select(num.array() / den.array(), kNaN);
}

/// Min-max scales each row over its candidate cells (defined and, if the
/// child skips known items, unknown). Constant rows map to 1.
void scale_rows(Eigen::MatrixXd& scores, const Dataset& newdata, bool skip_known) {
  for (Index u = 0; u < scores.rows(); ++u) {
    if (skip_known)
      for (const int j : row_items(newdata, u)) scores(u, j) = kNaN;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (Index j = 0; j < scores.cols(); ++j) {
      if (std::isnan(scores(u, j))) continue;
      lo = std::min(lo, scores(u, j));
      hi = std::max(hi, scores(u, j));
    }
    for (Index j = 0; j < scores.cols(); ++j) {
      if (std::isnan(scores(u, j))) continue;
      scores(u, j) = hi > lo ? (scores(u, j) - lo) / (hi - lo) : 1.0;
    }
  }
}

class HybridModel final : public Model {
 public:
  explicit HybridModel(std::vector<Child> children) : children_(std::move(children)) {}

  Eigen::MatrixXd predict_ratings(const Dataset& newdata) const override {
    std::vector<Eigen::MatrixXd> parts;
    for (const auto& c : children_) parts.push_back(c.model->predict_ratings(newdata));
    return weighted_mean(parts, children_);
  }

  Eigen::MatrixXd rank_scores(const Dataset& newdata) const override {
    std::vector<Eigen::MatrixXd> parts;
    for (const auto& c : children_) {
      parts.push_back(c.model->rank_scores(newdata));
      scale_rows(parts.back(), newdata, c.model->excludes_known_items());
    }
    return weighted_mean(parts, children_);
  }

  bool excludes_known_items() const override {
    return std::ranges::all_of(children_, [](const Child& c) { return c.model->excludes_known_items(); });
  }

 private:
  std::vector<Child> children_;
};

}  // namespace

void register_hybrid(Registry& registry) {
  for (const DataKind kind : {DataKind::real, DataKind::binary}) {
    registry.add(
        {"HYBRID", kind,
         "Hybrid recommender that aggregates several recommendation strategies using weighted "
         "averages.",
         Params{{"recommenders", nullptr}, {"weights", nullptr}, {"aggregation_type", "sum"}}},
        [&registry](const Dataset& train, const Params& p) -> std::shared_ptr<const Model> {
          if (text_param(p, "aggregation_type") != "sum")
            throw InvalidParam("aggregation_type must be \"sum\"");
          const auto& recs = p.at("recommenders");
          if (!recs.is_array() || recs.empty())
            throw InvalidParam("recommenders must be a non-empty list of {name, params}");
          const auto& weights = p.at("weights");
          if (!weights.is_null() && (!weights.is_array() || weights.size() != recs.size()))
            throw InvalidParam("weights must list one number per recommender");

          std::vector<Child> children;
          for (std::size_t c = 0; c < recs.size(); ++c) {
            const auto& r = recs[c];
            if (!r.is_object() || !r.contains("name") || !r.at("name").is_string())
              throw InvalidParam("each recommender needs a string \"name\"");
            const Params child_params = r.contains("params") ? r.at("params") : Params::object();
            double w = 1.0;
            if (!weights.is_null()) {
              if (!weights[c].is_number() || !(weights[c].get<double>() >= 0.0))
                throw InvalidParam("weights must be non-negative numbers");
              w = weights[c].get<double>();
            }
            const auto fitted = registry.fit(r.at("name").get<std::string>(), train, child_params);
            children.push_back({fitted.shared_state(), w});
          }
          return std::make_shared<HybridModel>(std::move(children));
        });
  }
}

}  // namespace reclab::algorithms
