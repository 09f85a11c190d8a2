#pragma once

#include <optional>
#include <span>
#include <vector>

#include "reclab/rating_matrix.hpp"

namespace reclab {

/// One user's 2x2 confusion matrix for a top-N list. `universe` is the number
/// of items the user could have been recommended: n_items - |known|.
struct Confusion {
  Index tp = 0;
  Index fp = 0;
  Index fn = 0;
  Index tn = 0;
  Index universe = 0;

  friend bool operator==(const Confusion&, const Confusion&) = default;
};

/// `list`, `known` and `relevant` hold item indices; `known` and `relevant`
/// must be sorted. The list must not contain known items.
Confusion confusion_for_user(std::span<const int> list, std::span<const int> known,
                             std::span<const int> relevant, Index n_items);

/// Ratios of one confusion matrix; nullopt where a denominator is 0.
struct DerivedMetrics {
  std::optional<double> precision;
  std::optional<double> recall;  ///< = TPR
  std::optional<double> fpr;
  std::optional<double> accuracy;
  std::optional<double> mae01;
};

DerivedMetrics derived_metrics(const Confusion& c);

/// 1 / (alpha / P + (1 - alpha) / R); 0 when P or R is 0.
double e_measure(double alpha, double precision, double recall);
/// Harmonic mean of precision and recall; 0 when both are 0.
double f_measure(double precision, double recall);

/// Per-user averages at one list length.
struct ConfusionRow {
  Index n = 0;
  double tp = 0, fp = 0, fn = 0, tn = 0, universe = 0;
  double precision = 0, recall = 0, tpr = 0, fpr = 0;
};

/// Macro-averages per-user confusion matrices.
///
/// Counts average over all users. An empty list contributes precision 0;
/// users without relevant withheld items are left out of recall/TPR, and
/// users with FP + TN = 0 out of FPR. A ratio nobody contributes to is NaN.
class ConfusionAccumulator {
 public:
  void add(const Confusion& c);
  Index users() const noexcept { return users_; }
  ConfusionRow row(Index n) const;

 private:
  Index users_ = 0;
  double tp_ = 0, fp_ = 0, fn_ = 0, tn_ = 0, universe_ = 0;
  double precision_ = 0, recall_ = 0, fpr_ = 0;
  Index recall_users_ = 0, fpr_users_ = 0;
};

struct ErrorMetrics {
  double rmse = 0;
  double mse = 0;
  double mae = 0;
};

/// Errors over the cells present in both matrices (labels must align).
/// Throws UndefinedMetric if there are none.
ErrorMetrics prediction_accuracy(const RatingMatrix& predicted, const RatingMatrix& truth);

}  // namespace reclab
