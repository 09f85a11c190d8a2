#include "reclab/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "reclab/similarity.hpp"

namespace reclab {

Confusion confusion_for_user(std::span<const int> list, std::span<const int> known,
                             std::span<const int> relevant, Index n_items) {
  Confusion c;
  for (const int item : list)
    if (std::ranges::binary_search(relevant, item)) ++c.tp;
  c.fp = static_cast<Index>(list.size()) - c.tp;
  c.fn = static_cast<Index>(relevant.size()) - c.tp;
  c.universe = n_items - static_cast<Index>(known.size());
  c.tn = c.universe - c.tp - c.fp - c.fn;
  return c;
}

DerivedMetrics derived_metrics(const Confusion& c) {
  const auto ratio = [](Index num, Index den) -> std::optional<double> {
    if (den == 0) return std::nullopt;
    return static_cast<double>(num) / static_cast<double>(den);
  };
  const Index total = c.tp + c.fp + c.fn + c.tn;
  return {ratio(c.tp, c.tp + c.fp), ratio(c.tp, c.tp + c.fn), ratio(c.fp, c.fp + c.tn),
          ratio(c.tn + c.tp, total), ratio(c.fp + c.fn, total)};
}

double e_measure(double alpha, double precision, double recall) {
  if (precision == 0.0 || recall == 0.0) return 0.0;
  return 1.0 / (alpha / precision + (1.0 - alpha) / recall);
}

double f_measure(double precision, double recall) {
  if (precision + recall == 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

void ConfusionAccumulator::add(const Confusion& c) {
  ++users_;
  tp_ += static_cast<double>(c.tp);
  fp_ += static_cast<double>(c.fp);
  fn_ += static_cast<double>(c.fn);
  tn_ += static_cast<double>(c.tn);
  universe_ += static_cast<double>(c.universe);
  const auto m = derived_metrics(c);
  precision_ += m.precision.value_or(0.0);
  if (m.recall) {
    recall_ += *m.recall;
    ++recall_users_;
  }
  if (m.fpr) {
    fpr_ += *m.fpr;
    ++fpr_users_;
  }
}

ConfusionRow ConfusionAccumulator::row(Index n) const {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  const auto mean = [](double sum, Index count) {
    return count > 0 ? sum / static_cast<double>(count) : nan;
  };
  ConfusionRow r;
  r.n = n;
  r.tp = mean(tp_, users_);
  r.fp = mean(fp_, users_);
  r.fn = mean(fn_, users_);
  r.tn = mean(tn_, users_);
  r.universe = mean(universe_, users_);
  r.precision = mean(precision_, users_);
  r.recall = mean(recall_, recall_users_);
  r.tpr = r.recall;
  r.fpr = mean(fpr_, fpr_users_);
  return r;
}

ErrorMetrics prediction_accuracy(const RatingMatrix& predicted, const RatingMatrix& truth) {
  if (!(predicted.user_labels() == truth.user_labels()) ||
      !(predicted.item_labels() == truth.item_labels()))
    throw ShapeMismatch("predicted and true ratings have different labels");
  double abs_sum = 0.0, sq_sum = 0.0;
  Index count = 0;
  for (Index u = 0; u < truth.n_users(); ++u) {
    detail::for_each_corated(predicted.row(u), truth.row(u), [&](double p, double t) {
      abs_sum += std::abs(t - p);
      sq_sum += (t - p) * (t - p);
      ++count;
    });
  }
  if (count == 0) throw UndefinedMetric("no cell is both predicted and rated");
  const double n = static_cast<double>(count);
  return {std::sqrt(sq_sum / n), sq_sum / n, abs_sum / n};
}

}  // namespace reclab
