#include "reclab/evaluate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "reclab/registry.hpp"

namespace reclab {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

/// Sorted unknown items of user `u` that count as relevant.
std::vector<int> relevant_items(const Dataset& unknown, Index u, std::optional<double> good_rating) {
  if (const auto* real = std::get_if<RatingMatrix>(&unknown)) {
    const auto row = real->row(u);
    std::vector<int> out;
    for (std::size_t k = 0; k < row.items.size(); ++k)
      if (row.values[k] >= *good_rating) out.push_back(row.items[k]);
    return out;
  }
  const auto row = std::get<BinaryRatingMatrix>(unknown).row(u);
  return {row.begin(), row.end()};
}

std::vector<ConfusionRow> score_top_n(const RecommenderModel& model, const Dataset& known,
                                      const Dataset& unknown, std::span<const Index> n_values,
                                      std::optional<double> good_rating) {
  const Index max_n = *std::ranges::max_element(n_values);
  const Model& state = model.state();
  // A list that may contain known items is drawn at full length and filtered.
  const bool filter = !state.excludes_known_items();
  const auto lists = state.top_n(known, filter ? n_items(known) : max_n);

  std::vector<ConfusionAccumulator> acc(n_values.size());
  for (Index u = 0; u < n_users(known); ++u) {
    const auto known_items = row_items(known, u);
    const auto relevant = relevant_items(unknown, u, good_rating);
    std::vector<int> list;
    for (const auto& s : lists[static_cast<std::size_t>(u)]) {
      if (filter && std::ranges::binary_search(known_items, static_cast<int>(s.item))) continue;
      list.push_back(static_cast<int>(s.item));
      if (static_cast<Index>(list.size()) == max_n) break;
    }
    for (std::size_t i = 0; i < n_values.size(); ++i) {
      const auto len = std::min<std::size_t>(list.size(), static_cast<std::size_t>(n_values[i]));
      acc[i].add(confusion_for_user(std::span(list).first(len), known_items, relevant,
                                    n_items(known)));
    }
  }
  std::vector<ConfusionRow> rows;
  for (std::size_t i = 0; i < n_values.size(); ++i) rows.push_back(acc[i].row(n_values[i]));
  return rows;
}

RatingMatrix as_real(const Dataset& d) {
  if (const auto* real = std::get_if<RatingMatrix>(&d)) return *real;
  return std::get<BinaryRatingMatrix>(d).to_real();
}

}  // namespace

EvaluationMode parse_evaluation_mode(std::string_view text) {
  if (text == "topNList") return EvaluationMode::top_n;
  if (text == "ratings") return EvaluationMode::ratings;
  throw InvalidArgument("unknown evaluation mode '" + std::string(text) + "'");
}

std::string_view to_string(EvaluationMode mode) {
  return mode == EvaluationMode::top_n ? "topNList" : "ratings";
}

std::vector<ConfusionRow> EvaluationResult::avg_confusion() const {
  if (mode != EvaluationMode::top_n) throw WrongMode("result holds rating errors, not top-N rows");
  if (confusion.empty()) return {};
  std::vector<ConfusionRow> avg(confusion.front().size());
  const double runs = static_cast<double>(confusion.size());
  for (std::size_t i = 0; i < avg.size(); ++i) {
    ConfusionRow& a = avg[i];
    a.n = confusion.front()[i].n;
    for (const auto& run : confusion) {
      const ConfusionRow& r = run[i];
      a.tp += r.tp / runs;
      a.fp += r.fp / runs;
      a.fn += r.fn / runs;
      a.tn += r.tn / runs;
      a.universe += r.universe / runs;
      a.precision += r.precision / runs;
      a.recall += r.recall / runs;
      a.tpr += r.tpr / runs;
      a.fpr += r.fpr / runs;
    }
  }
  return avg;
}

ErrorMetrics EvaluationResult::avg_errors() const {
  if (mode != EvaluationMode::ratings) throw WrongMode("result holds top-N rows, not rating errors");
  ErrorMetrics avg;
  const double runs = static_cast<double>(errors.size());
  for (const auto& e : errors) {
    avg.rmse += e.rmse / runs;
    avg.mse += e.mse / runs;
    avg.mae += e.mae / runs;
  }
  return avg;
}

EvaluationOutput evaluate(const EvaluationScheme& scheme, std::span<const AlgorithmEntry> algorithms,
                          EvaluationMode mode, std::span<const Index> n_values) {
  const DataKind kind = scheme.data_kind();
  std::vector<Index> ns(n_values.begin(), n_values.end());
  if (mode == EvaluationMode::top_n) {
    if (ns.empty()) throw InvalidArgument("top-N evaluation needs at least one list length");
    if (std::ranges::any_of(ns, [](Index n) { return n < 1; }))
      throw InvalidParam("list lengths must be at least 1");
    std::ranges::sort(ns);
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    if (kind == DataKind::real && !scheme.options().good_rating)
      throw InvalidArgument("top-N evaluation of real ratings needs good_rating");
  }

  const Registry& registry = Registry::global();
  EvaluationOutput out;
  for (const auto& entry : algorithms) {
    if (!registry.find(entry.name, kind)) {
      if (!registry.knows(entry.name))
        throw UnknownAlgorithm("unknown algorithm '" + entry.name + "'");
      out.notices.push_back(entry.name + " does not implement a method for " +
                            std::string(matrix_class_name(kind)) + "; skipping " + entry.label);
      continue;
    }
    EvaluationResult result{entry.label, entry.name, mode, {}, {}, {}};
    for (Index run = 0; run < scheme.runs(); ++run) {
      const Dataset train = scheme.get_data(run, EvaluationScheme::Part::train);
      const Dataset known = scheme.get_data(run, EvaluationScheme::Part::known);
      const Dataset unknown = scheme.get_data(run, EvaluationScheme::Part::unknown);

      auto start = Clock::now();
      const auto model = registry.fit(entry.name, train, entry.params);
      RunTiming timing{seconds_since(start), 0.0};

      start = Clock::now();
      if (mode == EvaluationMode::top_n) {
        result.confusion.push_back(
            score_top_n(model, known, unknown, ns, scheme.options().good_rating));
      } else {
        const RatingMatrix predicted = predict_ratings(model, known);
        result.errors.push_back(prediction_accuracy(predicted, as_real(unknown)));
      }
      timing.predict_seconds = seconds_since(start);
      result.timings.push_back(timing);
    }
    out.results.push_back(std::move(result));
  }
  return out;
}

std::vector<CurvePoint> curve_points(const EvaluationResult& result, CurveKind kind) {
  if (result.mode != EvaluationMode::top_n)
    throw WrongMode("curves need a top-N result, got a ratings result");
  std::vector<CurvePoint> points;
  for (const auto& r : result.avg_confusion()) {
    if (kind == CurveKind::roc)
      points.push_back({r.n, r.fpr, r.tpr});
    else
      points.push_back({r.n, r.recall, r.precision});
  }
  return points;
}

double auc(std::span<const CurvePoint> roc) {
  std::vector<std::pair<double, double>> xy{{0.0, 0.0}};
  for (const auto& p : roc)
    if (std::isfinite(p.x) && std::isfinite(p.y)) xy.emplace_back(p.x, p.y);
  xy.emplace_back(1.0, 1.0);
  double area = 0.0;
  for (std::size_t i = 1; i < xy.size(); ++i)
    area += (xy[i].first - xy[i - 1].first) * (xy[i].second + xy[i - 1].second) / 2.0;
  return area;
}

}  // namespace reclab
