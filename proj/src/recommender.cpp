#include "reclab/recommender.hpp"

#include <cmath>

#include "reclab/registry.hpp"

namespace reclab {

std::vector<std::vector<ScoredItem>> Model::top_n(const Dataset& newdata, Index n) const {
  const Eigen::MatrixXd scores = rank_scores(newdata);
  std::vector<std::vector<ScoredItem>> lists;
  lists.reserve(static_cast<std::size_t>(n_users(newdata)));
  for (Index u = 0; u < n_users(newdata); ++u) {
    const auto known = excludes_known_items() ? row_items(newdata, u) : std::span<const int>{};
    lists.push_back(top_n_from_scores(scores.row(u).transpose(), known, n));
  }
  return lists;
}

RecommenderModel::RecommenderModel(std::string algorithm, DataKind kind, Params params,
                                   Index n_training_users, LabelSet items,
                                   std::shared_ptr<const Model> state)
    : algorithm_(std::move(algorithm)),
      kind_(kind),
      params_(std::move(params)),
      n_training_users_(n_training_users),
      items_(std::move(items)),
      state_(std::move(state)) {
  if (!state_) throw InvalidArgument("model state must not be null");
}

std::string RecommenderModel::describe() const {
  return "Recommender of type '" + algorithm_ + "' for '" + std::string(matrix_class_name(kind_)) +
         "' learned using " + std::to_string(n_training_users_) + " users.";
}

RecommenderModel fit(std::string_view name, const Dataset& data, const Params& params) {
  return Registry::global().fit(name, data, params);
}

PredictType parse_predict_type(std::string_view text) {
  if (text == "topNList") return PredictType::top_n_list;
  if (text == "ratings") return PredictType::ratings;
  if (text == "ratingMatrix") return PredictType::rating_matrix;
  throw InvalidParam("unknown prediction type '" + std::string(text) + "'");
}

namespace {

void check_newdata(const RecommenderModel& model, const Dataset& newdata) {
  if (kind_of(newdata) != model.data_kind())
    throw InvalidArgument("newdata is a " + std::string(matrix_class_name(kind_of(newdata))) +
                          " but the model was fitted on a " +
                          std::string(matrix_class_name(model.data_kind())));
  if (!(item_labels(newdata) == model.items()))
    throw ShapeMismatch("newdata items do not match the training items");
}

}  // namespace

TopNList predict_top_n(const RecommenderModel& model, const Dataset& newdata, Index n) {
  if (n < 1) throw InvalidParam("n must be at least 1");
  check_newdata(model, newdata);
  return TopNList{user_labels(newdata), model.items(), n, model.state().top_n(newdata, n)};
}

RatingMatrix predict_ratings(const RecommenderModel& model, const Dataset& newdata,
                             bool include_known) {
  check_newdata(model, newdata);
  const Eigen::MatrixXd pred = model.state().predict_ratings(newdata);
  const auto* real = std::get_if<RatingMatrix>(&newdata);
  std::vector<int> outer{0}, inner;
  std::vector<double> values;
  for (Index u = 0; u < n_users(newdata); ++u) {
    const auto known = row_items(newdata, u);
    std::size_t k = 0;
    for (Index i = 0; i < n_items(newdata); ++i) {
      const bool is_known = k < known.size() && known[k] == i;
      if (is_known) {
        if (include_known) {
          inner.push_back(static_cast<int>(i));
          values.push_back(real ? real->row(u).values[k] : 1.0);
        }
        ++k;
        continue;
      }
      if (std::isnan(pred(u, i))) continue;
      inner.push_back(static_cast<int>(i));
      values.push_back(pred(u, i));
    }
    outer.push_back(static_cast<int>(inner.size()));
  }
  return RatingMatrix::from_csr(user_labels(newdata), model.items(), std::move(outer),
                                std::move(inner), std::move(values));
}

Prediction predict(const RecommenderModel& model, const Dataset& newdata, PredictType type,
                   Index n) {
  switch (type) {
    case PredictType::top_n_list: return predict_top_n(model, newdata, n);
    case PredictType::ratings: return predict_ratings(model, newdata, false);
    case PredictType::rating_matrix: return predict_ratings(model, newdata, true);
  }
  throw InvalidParam("unknown prediction type");
}

}  // namespace reclab
