#pragma once

#include <span>
#include <string>

#include "reclab/evaluate.hpp"

namespace reclab {

// CSV tables for evaluation results. Numbers use the shortest round-trip
// form so identical results give identical bytes.

/// `algorithm,run,n,TP,FP,FN,TN,N,precision,recall,TPR,FPR`; runs are
/// numbered from 1. With `average` the rows are the run means, run = "avg".
std::string confusion_csv(std::span<const EvaluationResult> results, bool average);

/// `algorithm,run,RMSE,MSE,MAE`, per run or averaged (run = "avg").
std::string errors_csv(std::span<const EvaluationResult> results, bool average);

/// `algorithm,metric,mean,sd,min,max` over runs, for error bars.
std::string error_summary_csv(std::span<const EvaluationResult> results);

/// `algorithm,n,FPR,TPR` or `algorithm,n,recall,precision`.
std::string curve_csv(std::span<const EvaluationResult> results, CurveKind kind);

/// Standalone SVG line chart of the run-averaged ROC curves.
std::string roc_svg(std::span<const EvaluationResult> results);

}  // namespace reclab
