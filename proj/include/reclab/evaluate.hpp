#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "reclab/metrics.hpp"
#include "reclab/recommender.hpp"
#include "reclab/scheme.hpp"

namespace reclab {

enum class EvaluationMode { top_n, ratings };

/// "topNList" or "ratings".
EvaluationMode parse_evaluation_mode(std::string_view text);
std::string_view to_string(EvaluationMode mode);

/// An algorithm to evaluate; `label` names it in the output.
struct AlgorithmEntry {
  std::string label;
  std::string name;
  Params params = Params::object();
};

struct RunTiming {
  double model_seconds = 0;
  double predict_seconds = 0;
};

struct EvaluationResult {
  std::string label;
  std::string algorithm;
  EvaluationMode mode = EvaluationMode::top_n;
  /// Top-N mode: per run, one row per list length (ascending n).
  std::vector<std::vector<ConfusionRow>> confusion;
  /// Ratings mode: per run.
  std::vector<ErrorMetrics> errors;
  std::vector<RunTiming> timings;

  Index runs() const noexcept { return static_cast<Index>(timings.size()); }
  /// Element-wise mean over runs. Throws WrongMode in ratings mode.
  std::vector<ConfusionRow> avg_confusion() const;
  /// Mean over runs. Throws WrongMode in top-N mode.
  ErrorMetrics avg_errors() const;
};

struct EvaluationOutput {
  std::vector<EvaluationResult> results;
  /// Algorithms skipped because they do not support the data kind.
  std::vector<std::string> notices;
};

/// Fits every algorithm on each run's training users, predicts from the
/// known part and scores against the unknown part. In top-N mode one
/// prediction pass of length max(n_values) serves every n; lists that
/// contain known items are filtered first. Relevant items are unknown items
/// rated >= good_rating (all unknown items for 0-1 data).
EvaluationOutput evaluate(const EvaluationScheme& scheme, std::span<const AlgorithmEntry> algorithms,
                          EvaluationMode mode, std::span<const Index> n_values);

enum class CurveKind { roc, prec_rec };

struct CurvePoint {
  Index n = 0;
  double x = 0;  ///< FPR or recall
  double y = 0;  ///< TPR or precision
};

/// Points of the run-averaged table in ascending n. Throws WrongMode for a
/// ratings-mode result.
std::vector<CurvePoint> curve_points(const EvaluationResult& result, CurveKind kind);

/// Trapezoidal area under an ROC polyline closed with (0,0) and (1,1).
/// Points with an undefined coordinate are skipped.
double auc(std::span<const CurvePoint> roc);

}  // namespace reclab
