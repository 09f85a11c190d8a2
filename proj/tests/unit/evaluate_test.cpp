#include <random>
#include <set>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "reclab/evaluate.hpp"
#include "reclab/report.hpp"
#include "reclab/synthetic.hpp"

namespace {

using reclab::Dataset;
using reclab::EvaluationScheme;
using reclab::Index;
using reclab::SchemeOptions;
using Part = EvaluationScheme::Part;

Dataset synthetic(Index users, Index items, double density, std::uint64_t seed) {
  reclab::SyntheticSpec spec;
  spec.n_users = users;
  spec.n_items = items;
  spec.density = density;
  spec.seed = seed;
  return reclab::generate_ratings(spec);
}

std::set<std::pair<int, int>> cells(const Dataset& d) {
  std::set<std::pair<int, int>> out;
  for (Index u = 0; u < reclab::n_users(d); ++u)
    for (const int i : reclab::row_items(d, u)) out.emplace(static_cast<int>(u), i);
  return out;
}

TEST(KnownCount, Protocols) {
  EXPECT_EQ(reclab::known_count(4, 3), 3);
  EXPECT_FALSE(reclab::known_count(3, 3).has_value());
  EXPECT_EQ(reclab::known_count(10, -5), 5);
  EXPECT_FALSE(reclab::known_count(5, -5).has_value());
}

TEST(Scheme, SplitCountsAndPartitions) {
  const Dataset data = synthetic(200, 40, 0.5, 1);
  SchemeOptions o;
  o.train = 0.9;
  o.given = 15;
  o.runs = 2;
  o.seed = 3;
  const auto s = EvaluationScheme::make(data, o);
  EXPECT_EQ(s.runs(), 2);
  for (Index r = 0; r < s.runs(); ++r) {
    EXPECT_EQ(s.train_users(r).size(), 180u);
    EXPECT_EQ(s.test_users(r).size(), 20u);
    std::set<Index> all(s.train_users(r).begin(), s.train_users(r).end());
    for (const Index u : s.test_users(r)) EXPECT_TRUE(all.insert(u).second);
    EXPECT_EQ(all.size(), 200u);
    const auto known = s.get_data(r, Part::known), unknown = s.get_data(r, Part::unknown);
    const auto test_rows = reclab::select_users(s.data(), s.test_users(r));
    auto k = cells(known);
    const auto uk = cells(unknown);
    for (Index u = 0; u < reclab::n_users(known); ++u) EXPECT_EQ(reclab::row_count(known, u), 15);
    for (const auto& c : uk) EXPECT_TRUE(k.insert(c).second);
    EXPECT_EQ(k, cells(test_rows));
    EXPECT_EQ(reclab::n_users(s.get_data(r, Part::train)), 180);
  }
  EXPECT_NE(s.test_users(0), s.test_users(1));
  EXPECT_THROW(s.get_data(2, Part::train), reclab::InvalidArgument);
}

TEST(Scheme, AllButX) {
  const Dataset data = synthetic(100, 30, 0.4, 2);
  SchemeOptions o;
  o.given = -5;
  const auto s = EvaluationScheme::make(data, o);
  const auto unknown = s.get_data(0, Part::unknown);
  for (Index u = 0; u < reclab::n_users(unknown); ++u) EXPECT_EQ(reclab::row_count(unknown, u), 5);
}

TEST(Scheme, CrossFoldsPartitionUsers) {
  const Dataset data = synthetic(103, 20, 0.5, 3);
  SchemeOptions o;
  o.method = reclab::SplitMethod::cross;
  o.k = 4;
  const auto s = EvaluationScheme::make(data, o);
  ASSERT_EQ(s.runs(), 4);
  std::set<Index> seen;
  std::size_t smallest = 1000, largest = 0;
  for (Index r = 0; r < 4; ++r) {
    const auto& t = s.test_users(r);
    smallest = std::min(smallest, t.size());
    largest = std::max(largest, t.size());
    for (const Index u : t) EXPECT_TRUE(seen.insert(u).second);
    EXPECT_EQ(s.train_users(r).size() + t.size(), 103u);
  }
  EXPECT_EQ(seen.size(), 103u);
  EXPECT_LE(largest - smallest, 1u);
}

TEST(Scheme, Bootstrap) {
  const Dataset data = synthetic(100, 20, 0.5, 4);
  SchemeOptions o;
  o.method = reclab::SplitMethod::bootstrap;
  o.train = 0.9;
  o.runs = 3;
  const auto s = EvaluationScheme::make(data, o);
  for (Index r = 0; r < 3; ++r) {
    EXPECT_EQ(s.train_draw(r).size(), 90u);
    const std::set<Index> drawn(s.train_draw(r).begin(), s.train_draw(r).end());
    EXPECT_EQ(std::vector<Index>(drawn.begin(), drawn.end()), s.train_users(r));
    EXPECT_FALSE(s.test_users(r).empty());
    EXPECT_EQ(drawn.size() + s.test_users(r).size(), 100u);
    for (const Index u : s.test_users(r)) EXPECT_FALSE(drawn.contains(u));
  }
}

TEST(Scheme, ExcludesShortProfilesAndValidates) {
  const auto dense = oracle::random_dense(30, 10, 0.5, 5, -5, 5, 1);
  const Dataset data = oracle::to_sparse(dense);
  SchemeOptions o;
  o.given = 4;
  const auto s = EvaluationScheme::make(data, o);
  Index short_rows = 0;
  for (Index u = 0; u < 30; ++u) short_rows += reclab::row_count(data, u) < 5;
  EXPECT_EQ(s.excluded_users(), short_rows);
  EXPECT_EQ(reclab::n_users(s.data()), 30 - short_rows);

  o.given = 0;
  EXPECT_THROW(EvaluationScheme::make(data, o), reclab::InvalidArgument);
  o.given = 2;
  o.train = 1.0;
  EXPECT_THROW(EvaluationScheme::make(data, o), reclab::InvalidArgument);
  o.method = reclab::SplitMethod::cross;
  o.k = 1;
  EXPECT_THROW(EvaluationScheme::make(data, o), reclab::InvalidArgument);
}

TEST(Scheme, SeedDeterminism) {
  const Dataset data = synthetic(80, 20, 0.5, 6);
  SchemeOptions o;
  o.seed = 12;
  const auto a = EvaluationScheme::make(data, o), b = EvaluationScheme::make(data, o);
  EXPECT_EQ(a.test_users(0), b.test_users(0));
  EXPECT_EQ(a.get_data(0, Part::known), b.get_data(0, Part::known));
}

TEST(Confusion, PerUserCounts) {
  const std::vector<int> list{1, 2, 3}, known{0}, relevant{2, 3, 7};
  const auto c = reclab::confusion_for_user(list, known, relevant, 10);
  EXPECT_EQ(c, (reclab::Confusion{2, 1, 1, 5, 9}));
  const auto perfect = reclab::confusion_for_user(relevant, known, relevant, 10);
  EXPECT_EQ(perfect.fp, 0);
  EXPECT_EQ(perfect.fn, 0);
  const auto none = reclab::confusion_for_user(list, known, {}, 10);
  EXPECT_EQ(none.tp, 0);
  EXPECT_EQ(none.fn, 0);
  EXPECT_EQ(none.fp, 3);
}

TEST(Confusion, DerivedMetrics) {
  const reclab::Confusion c{2, 1, 1, 5, 9};
  const auto m = reclab::derived_metrics(c);
  EXPECT_DOUBLE_EQ(*m.precision, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(*m.recall, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(*m.fpr, 1.0 / 6.0);
  EXPECT_DOUBLE_EQ(*m.accuracy, 7.0 / 9.0);
  EXPECT_DOUBLE_EQ(*m.mae01, 2.0 / 9.0);
  const auto empty = reclab::derived_metrics(reclab::Confusion{0, 0, 0, 4, 4});
  EXPECT_FALSE(empty.precision.has_value());
  EXPECT_FALSE(empty.recall.has_value());
}

TEST(Metrics, EMeasureSpecialCase) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(1e-6, 1.0);
  for (int k = 0; k < 1000; ++k) {
    const double p = u(rng), r = u(rng);
    EXPECT_NEAR(reclab::e_measure(0.5, p, r), reclab::f_measure(p, r), 1e-12);
  }
  EXPECT_DOUBLE_EQ(reclab::f_measure(0.5, 0.5), 0.5);
  EXPECT_EQ(reclab::f_measure(0, 0), 0.0);
}

TEST(Accumulator, MacroAveraging) {
  reclab::ConfusionAccumulator acc;
  acc.add({1, 0, 0, 9, 10});  // P 1, R 1
  acc.add({0, 1, 3, 6, 10});  // P 0, R 0
  acc.add({0, 0, 0, 10, 10});  // empty list, nothing relevant
  const auto row = acc.row(1);
  EXPECT_DOUBLE_EQ(row.tp, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(row.precision, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(row.recall, 0.5);
  EXPECT_DOUBLE_EQ(row.tpr, row.recall);
  EXPECT_DOUBLE_EQ(row.fpr, (0.0 + 1.0 / 7.0 + 0.0) / 3.0);
  EXPECT_TRUE(std::isnan(reclab::ConfusionAccumulator{}.row(1).precision));
}

TEST(PredictionAccuracy, Basics) {
  const auto truth = oracle::to_sparse(oracle::random_dense(4, 4, 1.0, 1));
  const auto same = reclab::prediction_accuracy(truth, truth);
  EXPECT_EQ(same.rmse, 0.0);
  EXPECT_EQ(same.mae, 0.0);
  const oracle::Dense plus_one = truth.to_dense().array() + 1.0;
  const auto off = reclab::prediction_accuracy(oracle::to_sparse(plus_one), truth);
  EXPECT_DOUBLE_EQ(off.mae, 1.0);
  EXPECT_DOUBLE_EQ(off.mse, 1.0);
  EXPECT_DOUBLE_EQ(off.rmse, 1.0);
}

TEST(PredictionAccuracy, MatchesFlatLoop) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto pred = oracle::random_dense(10, 10, 0.6, seed);
    const auto truth = oracle::random_dense(10, 10, 0.6, seed + 500);
    const auto got = reclab::prediction_accuracy(oracle::to_sparse(pred), oracle::to_sparse(truth));
    const auto expect = oracle::errors(pred, truth);
    EXPECT_NEAR(got.rmse, expect.rmse, 1e-12);
    EXPECT_NEAR(got.mse, expect.mse, 1e-12);
    EXPECT_NEAR(got.mae, expect.mae, 1e-12);
  }
  oracle::Dense a = oracle::Dense::Constant(2, 2, oracle::kNaN), b = a;
  a(0, 0) = 1;
  b(1, 1) = 1;
  EXPECT_THROW(reclab::prediction_accuracy(oracle::to_sparse(a), oracle::to_sparse(b)), reclab::UndefinedMetric);
  EXPECT_THROW(reclab::prediction_accuracy(oracle::to_sparse(a), oracle::to_sparse(oracle::random_dense(3, 2, 1, 1))),
               reclab::ShapeMismatch);
}

class EvaluateFixture : public ::testing::Test {
 protected:
  static const EvaluationScheme& cross_scheme() {
    static const EvaluationScheme s = [] {
      SchemeOptions o;
      o.method = reclab::SplitMethod::cross;
      o.k = 4;
      o.given = 3;
      o.good_rating = 2.0;
      o.seed = 5;
      return EvaluationScheme::make(synthetic(200, 50, 0.3, 9), o);
    }();
    return s;
  }
};

TEST_F(EvaluateFixture, TopNTablesAndAverages) {
  const std::vector<reclab::AlgorithmEntry> algos{{"POPULAR", "POPULAR"}, {"UBCF", "UBCF", {{"nn", 20}}}};
  const std::vector<Index> n{20, 1, 3, 5, 10, 15, 3};
  const auto out = reclab::evaluate(cross_scheme(), algos, reclab::EvaluationMode::top_n, n);
  ASSERT_EQ(out.results.size(), 2u);
  for (const auto& r : out.results) {
    ASSERT_EQ(r.confusion.size(), 4u);
    for (const auto& table : r.confusion) {
      ASSERT_EQ(table.size(), 6u);
      EXPECT_EQ(table.front().n, 1);
      EXPECT_EQ(table.back().n, 20);
    }
    const auto avg = r.avg_confusion();
    for (std::size_t k = 0; k < 6; ++k) {
      double tp = 0, prec = 0;
      for (const auto& table : r.confusion) {
        tp += table[k].tp;
        prec += table[k].precision;
      }
      EXPECT_NEAR(avg[k].tp, tp / 4, 1e-12);
      EXPECT_NEAR(avg[k].precision, prec / 4, 1e-12);
      EXPECT_NEAR(avg[k].universe, 47.0, 1e-12);
      if (k > 0) {
        EXPECT_GE(avg[k].tpr, avg[k - 1].tpr);
        EXPECT_GE(avg[k].fpr, avg[k - 1].fpr);
      }
    }
    EXPECT_THROW(r.avg_errors(), reclab::WrongMode);
    EXPECT_EQ(reclab::curve_points(r, reclab::CurveKind::roc).size(), 6u);
  }
}

TEST_F(EvaluateFixture, RatingsMode) {
  const std::vector<reclab::AlgorithmEntry> algos{{"POP", "POPULAR"}, {"R", "RANDOM"}};
  const std::vector<Index> n{1};
  const auto out = reclab::evaluate(cross_scheme(), algos, reclab::EvaluationMode::ratings, n);
  ASSERT_EQ(out.results.size(), 2u);
  const auto& pop = out.results[0];
  EXPECT_EQ(pop.errors.size(), 4u);
  for (const auto& e : pop.errors) EXPECT_DOUBLE_EQ(e.rmse, std::sqrt(e.mse));
  EXPECT_THROW(pop.avg_confusion(), reclab::WrongMode);
  EXPECT_THROW(reclab::curve_points(pop, reclab::CurveKind::roc), reclab::WrongMode);
  const auto csv = reclab::errors_csv(out.results, true);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "algorithm,run,RMSE,MSE,MAE");
}

TEST_F(EvaluateFixture, SkipsUnsupportedAndUnknown) {
  SchemeOptions o;
  o.given = 2;
  const auto binary = EvaluationScheme::make(reclab::binarize(std::get<reclab::RatingMatrix>(synthetic(60, 20, 0.4, 1)), 1.0), o);
  const std::vector<reclab::AlgorithmEntry> algos{{"SVD", "SVD"}, {"POPULAR", "POPULAR"}};
  const std::vector<Index> n{1, 5};
  const auto out = reclab::evaluate(binary, algos, reclab::EvaluationMode::top_n, n);
  ASSERT_EQ(out.results.size(), 1u);
  ASSERT_EQ(out.notices.size(), 1u);
  EXPECT_NE(out.notices[0].find("SVD does not implement a method for binaryRatingMatrix"), std::string::npos);
  const std::vector<reclab::AlgorithmEntry> bad{{"X", "NOPE"}};
  EXPECT_THROW(reclab::evaluate(binary, bad, reclab::EvaluationMode::top_n, n), reclab::UnknownAlgorithm);
}

TEST(Curves, AucAndPoints) {
  const std::vector<reclab::CurvePoint> diag{{1, 0.5, 0.5}};
  EXPECT_DOUBLE_EQ(reclab::auc(diag), 0.5);
  const std::vector<reclab::CurvePoint> good{{1, 0.0, 1.0}};
  EXPECT_DOUBLE_EQ(reclab::auc(good), 1.0);

  reclab::EvaluationResult r;
  r.label = "X";
  reclab::ConfusionRow row;
  row.n = 1;
  row.tpr = row.recall = 0.03428;
  row.fpr = 0.006685;
  row.precision = 0.453;
  r.confusion = {{row}};
  r.timings = {{}};
  const auto roc = reclab::curve_points(r, reclab::CurveKind::roc);
  ASSERT_EQ(roc.size(), 1u);
  EXPECT_EQ(roc[0].x, 0.006685);
  EXPECT_EQ(roc[0].y, 0.03428);
  const auto pr = reclab::curve_points(r, reclab::CurveKind::prec_rec);
  EXPECT_EQ(pr[0].x, 0.03428);
  EXPECT_EQ(pr[0].y, 0.453);
  const auto csv = reclab::curve_csv(std::span(&r, 1), reclab::CurveKind::roc);
  EXPECT_EQ(csv, "algorithm,n,FPR,TPR\nX,1,0.006685,0.03428\n");
}

TEST(Report, ConfusionHeader) {
  reclab::EvaluationResult r;
  r.label = "A";
  reclab::ConfusionRow row;
  row.n = 3;
  r.confusion = {{row}, {row}};
  r.timings = {{}, {}};
  const auto csv = reclab::confusion_csv(std::span(&r, 1), false);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "algorithm,run,n,TP,FP,FN,TN,N,precision,recall,TPR,FPR");
  EXPECT_NE(csv.find("\nA,2,3,"), std::string::npos);
  EXPECT_NE(reclab::confusion_csv(std::span(&r, 1), true).find("\nA,avg,3,"), std::string::npos);
  EXPECT_NE(reclab::roc_svg(std::span(&r, 1)).find("<svg"), std::string::npos);
}

TEST(Modes, Parse) {
  EXPECT_EQ(reclab::parse_evaluation_mode("topNList"), reclab::EvaluationMode::top_n);
  EXPECT_EQ(reclab::parse_evaluation_mode("ratings"), reclab::EvaluationMode::ratings);
  EXPECT_EQ(reclab::parse_split_method("cross-validation"), reclab::SplitMethod::cross);
  EXPECT_THROW(reclab::parse_split_method("holdout"), reclab::InvalidArgument);
}

}  // namespace
