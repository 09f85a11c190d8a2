#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"
#include "reclab/ratings.hpp"
#include "reclab/topn.hpp"

namespace reclab {

/// Algorithm parameters: a JSON object of name -> value.
using Params = nlohmann::json;

/// Fitted state of one algorithm.
///
/// Score matrices are (new users) x (items) with NaN where the algorithm has
/// no prediction. Cells the active user already rated may hold anything; the
/// prediction front end masks them.
class Model {
 public:
  virtual ~Model() = default;

  /// Predicted ratings on the training rating scale.
  virtual Eigen::MatrixXd predict_ratings(const Dataset& newdata) const = 0;

  /// Scores used to rank candidates for top-N lists.
  virtual Eigen::MatrixXd rank_scores(const Dataset& newdata) const {
    return predict_ratings(newdata);
  }

  /// Top-N lists for every user of `newdata`. The default ranks
  /// `rank_scores`, skipping each user's known items when
  /// `excludes_known_items()`.
  virtual std::vector<std::vector<ScoredItem>> top_n(const Dataset& newdata, Index n) const;

  virtual bool excludes_known_items() const { return true; }
};

/// A fitted recommender: algorithm identity, resolved parameters and state.
class RecommenderModel {
 public:
  RecommenderModel(std::string algorithm, DataKind kind, Params params, Index n_training_users,
                   LabelSet items, std::shared_ptr<const Model> state);

  const std::string& algorithm() const noexcept { return algorithm_; }
  DataKind data_kind() const noexcept { return kind_; }
  const Params& params() const noexcept { return params_; }
  Index n_training_users() const noexcept { return n_training_users_; }
  const LabelSet& items() const noexcept { return items_; }
  const Model& state() const noexcept { return *state_; }
  const std::shared_ptr<const Model>& shared_state() const noexcept { return state_; }

  /// e.g. "Recommender of type 'POPULAR' for 'realRatingMatrix' learned using 1000 users."
  std::string describe() const;

 private:
  std::string algorithm_;
  DataKind kind_;
  Params params_;
  Index n_training_users_;
  LabelSet items_;
  std::shared_ptr<const Model> state_;
};

class Registry;

/// Fits `name` on `data` through the global registry. Unknown parameters or
/// values of the wrong type raise InvalidParam; unknown names UnknownAlgorithm.
RecommenderModel fit(std::string_view name, const Dataset& data,
                     const Params& params = Params::object());

enum class PredictType { top_n_list, ratings, rating_matrix };

/// "topNList", "ratings", "ratingMatrix".
PredictType parse_predict_type(std::string_view text);

TopNList predict_top_n(const RecommenderModel& model, const Dataset& newdata, Index n);

/// With `include_known == false` the cells rated in `newdata` are missing
/// ("ratings"); otherwise they carry the user's own ratings ("ratingMatrix").
/// Cells without a prediction are missing either way.
RatingMatrix predict_ratings(const RecommenderModel& model, const Dataset& newdata,
                             bool include_known = false);

using Prediction = std::variant<TopNList, RatingMatrix>;

Prediction predict(const RecommenderModel& model, const Dataset& newdata, PredictType type,
                   Index n = 10);

}  // namespace reclab
