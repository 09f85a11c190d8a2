// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cli_runner.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "reclab/evaluate.hpp"
#include "reclab/registry.hpp"
#include "reclab/rulemine.hpp"
#include "reclab/svd.hpp"
#include "reclab/synthetic.hpp"

namespace {

using reclab::Dataset;
using reclab::Index;
using reclab::Params;
using reclab::RatingMatrix;

struct Outcome {
  bool pass = true;
  std::string detail;
};

/// Records the first failure; later checks keep running for the detail line.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok && out_.pass) {
      out_.pass = false;
      out_.detail = what;
    }
  }
  void note(const std::string& s) {
    if (out_.pass) out_.detail = s;
  }
  Outcome result() const { return out_; }

 private:
  Outcome out_;
};

std::string fmt(double v, int digits = 4) {
  std::ostringstream s;
  s.precision(digits);
  s << v;
  return s.str();
}

// --- shared synthetic setup --------------------------------------------------

RatingMatrix skewed_dataset(std::uint64_t seed) {
  reclab::SyntheticSpec spec;  // 1000 x 100, density 0.3, popularity skew 1
  spec.seed = seed;
  return reclab::generate_ratings(spec);
}

const std::vector<reclab::AlgorithmEntry>& benchmark_algorithms() {
  static const std::vector<reclab::AlgorithmEntry> algos{
      {"RANDOM", "RANDOM"},
      {"POPULAR", "POPULAR"},
      {"UBCF", "UBCF", Params{{"nn", 50}}},
      {"IBCF", "IBCF", Params{{"k", 50}}},
      {"SVD", "SVD", Params{{"k", 50}}},
  };
  return algos;
}

const std::vector<Index> kListLengths{1, 3, 5, 10, 15, 20};

double auc_of(const reclab::EvaluationOutput& out, const std::string& label) {
  for (const auto& r : out.results)
    if (r.label == label) return reclab::auc(reclab::curve_points(r, reclab::CurveKind::roc));
  throw std::runtime_error("missing result " + label);
}

reclab::EvaluationOutput top_n_run(const Dataset& data, Index given, std::uint64_t seed,
                                   std::span<const reclab::AlgorithmEntry> algos) {
  reclab::SchemeOptions o;
  o.train = 0.9;
  o.given = given;
  o.good_rating = 5.0;
  o.seed = seed;
  const auto scheme = reclab::EvaluationScheme::make(data, o);
  return reclab::evaluate(scheme, algos, reclab::EvaluationMode::top_n, kListLengths);
}

// --- criteria --------------------------------------------------------------------

Outcome golden_normalization() {
  Check c;
  const auto m = fixtures::example_matrix();
  const auto [centered, info] = reclab::normalize(m);
  const std::vector<double> printed_u1{-1.8, -0.8, 1.2, 1.2, 0.2};
  const std::vector<double> printed_u2{-0.3333, -0.3333, 0.6667};
  for (const auto& [u, printed] : {std::pair{0, printed_u1}, std::pair{1, printed_u2}}) {
    const auto row = centered.row(u);
    const auto raw = m.row(u);
    double sum = 0;
    for (const double v : raw.values) sum += v;
    const double mean = sum / static_cast<double>(raw.size());
    c.expect(row.size() == static_cast<Index>(printed.size()), "row length");
    for (std::size_t k = 0; k < printed.size() && k < row.values.size(); ++k) {
      c.expect(std::abs(row.values[k] - printed[k]) <= 1e-3, "printed value mismatch");
      c.expect(std::abs(row.values[k] - (raw.values[k] - mean)) <= 1e-12, "exact centering mismatch");
    }
  }
  c.note("u1, u2 match printed rows (tol 1e-3) and fresh means (tol 1e-12)");
  return c.result();
}

Outcome golden_binarization() {
  Check c;
  const auto b = reclab::binarize(fixtures::example_matrix(), 4.0);
  const std::set<std::pair<int, int>> expect{{0, 3}, {0, 5}, {0, 7}, {3, 5}, {4, 0}, {4, 7}, {4, 9}};
  std::set<std::pair<int, int>> got;
  for (Index u = 0; u < b.n_users(); ++u)
    for (const int i : b.row(u)) got.emplace(static_cast<int>(u), i);
  c.expect(b.n_ratings() == 7, "expected 7 ones, got " + std::to_string(b.n_ratings()));
  c.expect(got == expect, "ones at wrong cells");
  c.note("7 ones at u1{i4,i6,i8} u4{i6} u5{i1,i8,i10}");
  return c.result();
}

Outcome scheme_counts() {
  Check c;
  const Dataset data = skewed_dataset(1);
  c.expect(reclab::n_users(data) == 1000, "dataset must have 1000 users");

  reclab::SchemeOptions split;
  split.train = 0.9;
  split.given = 15;
  const auto s = reclab::EvaluationScheme::make(data, split);
  c.expect(s.excluded_users() == 0, "no user should be excluded");
  c.expect(s.train_users(0).size() == 900 && s.test_users(0).size() == 100, "split sizes");
  const auto known = s.get_data(0, reclab::EvaluationScheme::Part::known);
  for (Index u = 0; u < reclab::n_users(known); ++u)
    c.expect(reclab::row_count(known, u) == 15, "known set size");

  reclab::SchemeOptions cross;
  cross.method = reclab::SplitMethod::cross;
  cross.k = 4;
  const auto x = reclab::EvaluationScheme::make(data, cross);
  std::set<Index> seen;
  for (Index r = 0; r < x.runs(); ++r) {
    c.expect(x.test_users(r).size() == 250, "fold size");
    for (const Index u : x.test_users(r)) c.expect(seen.insert(u).second, "folds overlap");
  }
  c.expect(x.runs() == 4 && seen.size() == 1000, "folds do not cover all users");

  reclab::SchemeOptions all_but;
  all_but.given = -5;
  const auto a = reclab::EvaluationScheme::make(data, all_but);
  const auto unknown = a.get_data(0, reclab::EvaluationScheme::Part::unknown);
  for (Index u = 0; u < reclab::n_users(unknown); ++u)
    c.expect(reclab::row_count(unknown, u) == 5, "all-but-5 unknown size");
  c.note("900/100, given 15, 4 x 250 folds, all-but-5 exact");
  return c.result();
}

Outcome oracle_equivalence() {
  Check c;
  double worst = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto train = oracle::random_dense(20, 15, 0.35, seed, -5, 5, 2);
    const auto query = oracle::random_dense(6, 15, 0.3, seed + 1000, -5, 5, 2);
    const Dataset t = oracle::to_sparse(train);
    const Dataset q = oracle::to_sparse(query);
    auto mask = [&](oracle::Dense p) {
      for (int u = 0; u < query.rows(); ++u)
        for (int i = 0; i < query.cols(); ++i)
          if (oracle::present(query(u, i))) p(u, i) = oracle::kNaN;
      return p;
    };
    for (const bool weighted : {false, true}) {
      oracle::UbcfSetup setup;
      setup.nn = 3 + static_cast<int>(seed % 7);
      setup.weighted = weighted;
      const auto model = reclab::fit("UBCF", t, Params{{"nn", setup.nn}, {"weighted", weighted}});
      const double d = oracle::max_abs_diff(reclab::predict_ratings(model, q).to_dense(),
                                            mask(oracle::ubcf(train, query, setup)));
      worst = std::max(worst, d);
    }
    const int k = 2 + static_cast<int>(seed % 10);
    const auto ibcf = reclab::fit("IBCF", t, Params{{"k", k}});
    worst = std::max(worst, oracle::max_abs_diff(reclab::predict_ratings(ibcf, q).to_dense(),
                                                 mask(oracle::ibcf(train, query, k, oracle::Sim::cosine,
                                                                   oracle::Norm::center))));
  }
  c.expect(worst < 1e-9, "max abs diff " + fmt(worst));
  c.note("UBCF plain/weighted and IBCF, 100 seeds, max abs diff " + fmt(worst, 3) + " (tol 1e-9)");
  return c.result();
}

Outcome rule_mining_oracle() {
  Check c;
  std::size_t rules = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const int n_items = 4 + static_cast<int>(seed % 9);
    const int n_tx = 8 + static_cast<int>((seed * 7) % 57);
    const auto tx = oracle::random_transactions(n_items, n_tx, 0.3, seed);
    const double s = 0.05 + 0.05 * static_cast<double>(seed % 4);
    const double conf = 0.3 + 0.1 * static_cast<double>(seed % 5);
    const int max_len = 2 + static_cast<int>(seed % 3);
    reclab::TransactionDB db;
    db.transactions = tx;
    db.n_items = n_items;
    const auto f = reclab::mine_frequent(db, s, max_len);
    const auto expect_f = oracle::frequent_itemsets(tx, n_items, s, max_len);
    c.expect(f.itemsets.size() == expect_f.size(), "itemset count, seed " + std::to_string(seed));
    for (const auto& is : f.itemsets) {
      const auto it = expect_f.find(is.items);
      c.expect(it != expect_f.end() && it->second == is.count &&
                   is.support == static_cast<double>(it->second) / static_cast<double>(n_tx),
               "itemset support, seed " + std::to_string(seed));
    }
    const auto rs = reclab::induce_rules(f, conf);
    const auto expect_r = oracle::rules(expect_f, tx.size(), conf);
    c.expect(rs.rules.size() == expect_r.size(), "rule count, seed " + std::to_string(seed));
    for (const auto& r : rs.rules) {
      const auto it = expect_r.find({r.lhs, r.rhs});
      c.expect(it != expect_r.end() && it->second.first == r.support && it->second.second == r.confidence,
               "rule measures, seed " + std::to_string(seed));
    }
    rules += rs.rules.size();
  }
  c.note("100 dbs, " + std::to_string(rules) + " rules, exact support/confidence");
  return c.result();
}

Outcome confusion_identities() {
  Check c;
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    const int n_items = 30;
    std::vector<int> perm(n_items);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto n_known = static_cast<std::size_t>(1 + trial % 5);
    std::vector<int> known(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n_known));
    std::vector<int> rest(perm.begin() + static_cast<std::ptrdiff_t>(n_known), perm.end());
    std::ranges::sort(known);
    std::vector<int> relevant;
    for (const int i : rest)
      if (rng() % 4 == 0) relevant.push_back(i);
    std::ranges::sort(relevant);
    std::shuffle(rest.begin(), rest.end(), rng);
    for (const Index n : {1, 3, 5, 10, 20}) {
      const std::vector<int> list(rest.begin(), rest.begin() + std::min<Index>(n, static_cast<Index>(rest.size())));
      const auto cm = reclab::confusion_for_user(list, known, relevant, n_items);
      c.expect(cm.tp + cm.fp <= n, "TP + FP <= n");
      c.expect(cm.tp + cm.fn == static_cast<Index>(relevant.size()), "TP + FN = |relevant|");
      c.expect(cm.tp + cm.fp + cm.fn + cm.tn == n_items - static_cast<Index>(known.size()),
               "TP + FP + FN + TN = n_items - |known|");
    }
  }

  // Full-length lists on an evaluation: averaged precision = mean TP / n.
  const Dataset data = reclab::generate_ratings([] {
    reclab::SyntheticSpec s;
    s.n_users = 400;
    s.seed = 2;
    return s;
  }());
  reclab::SchemeOptions o;
  o.method = reclab::SplitMethod::cross;
  o.k = 4;
  o.given = 3;
  o.good_rating = 5.0;
  const auto scheme = reclab::EvaluationScheme::make(data, o);
  const std::vector<reclab::AlgorithmEntry> algos{{"POPULAR", "POPULAR"}};
  const auto out = reclab::evaluate(scheme, algos, reclab::EvaluationMode::top_n, kListLengths);
  const auto avg = out.results.at(0).avg_confusion();
  bool recall_differs = false;
  for (const auto& row : avg) {
    c.expect(std::abs(row.tp + row.fp - static_cast<double>(row.n)) < 1e-12, "lists not full length");
    c.expect(std::abs(row.precision - row.tp / static_cast<double>(row.n)) < 1e-12,
             "precision != TP/n at n=" + std::to_string(row.n));
    const double pooled = row.tp / (row.tp + row.fn);
    recall_differs = recall_differs || std::abs(row.recall - pooled) > 1e-3;
  }
  const auto& first = avg.front();
  c.expect(recall_differs, "macro recall equals the pooled ratio everywhere");
  c.note("identities exact; n=1 precision " + fmt(first.precision) + " = TP " + fmt(first.tp) +
         "; recall " + fmt(first.recall) + " vs pooled " + fmt(first.tp / (first.tp + first.fn)));
  return c.result();
}

Outcome metric_algebra() {
  Check c;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0;
  for (int k = 0; k < 1000; ++k) {
    const double p = 1.0 - u(rng), r = 1.0 - u(rng);  // (0, 1]
    worst = std::max(worst, std::abs(reclab::e_measure(0.5, p, r) - reclab::f_measure(p, r)));
  }
  c.expect(worst <= 1e-12, "max diff " + fmt(worst));
  c.note("1000 pairs, max |E(0.5) - F| " + fmt(worst, 3) + " (tol 1e-12)");
  return c.result();
}

Outcome roc_monotone() {
  Check c;
  const auto out = top_n_run(skewed_dataset(3), -5, 3, benchmark_algorithms());
  c.expect(out.results.size() == 5, "expected 5 results");
  for (const auto& r : out.results) {
    const auto avg = r.avg_confusion();
    for (std::size_t k = 1; k < avg.size(); ++k) {
      c.expect(avg[k].tpr >= avg[k - 1].tpr, r.label + " TPR decreases");
      c.expect(avg[k].fpr >= avg[k - 1].fpr, r.label + " FPR decreases");
    }
  }
  c.note("TPR, FPR non-decreasing over n in {1,3,5,10,15,20} for 5 algorithms");
  return c.result();
}

Outcome qualitative_reproduction() {
  Check c;
  const Dataset data = skewed_dataset(42);
  const auto top = top_n_run(data, -5, 42, benchmark_algorithms());
  const double random = auc_of(top, "RANDOM"), popular = auc_of(top, "POPULAR"), ubcf = auc_of(top, "UBCF");
  c.expect(popular - random >= 0.05, "AUC POPULAR - RANDOM = " + fmt(popular - random));
  c.expect(ubcf - random >= 0.05, "AUC UBCF - RANDOM = " + fmt(ubcf - random));

  reclab::SchemeOptions o;
  o.train = 0.9;
  o.given = -5;
  o.good_rating = 5.0;
  o.seed = 42;
  const auto scheme = reclab::EvaluationScheme::make(data, o);
  const std::vector<reclab::AlgorithmEntry> algos{{"RANDOM", "RANDOM"}, {"POPULAR", "POPULAR"}};
  const std::vector<Index> n{1};
  const auto errors = reclab::evaluate(scheme, algos, reclab::EvaluationMode::ratings, n);
  const double rmse_random = errors.results.at(0).avg_errors().rmse;
  const double rmse_popular = errors.results.at(1).avg_errors().rmse;
  c.expect(rmse_popular < rmse_random, "RMSE POPULAR " + fmt(rmse_popular) + " >= RANDOM " + fmt(rmse_random));
  c.note("AUC RANDOM " + fmt(random) + ", POPULAR " + fmt(popular) + ", UBCF " + fmt(ubcf) + "; RMSE POPULAR " +
         fmt(rmse_popular) + " < RANDOM " + fmt(rmse_random));
  return c.result();
}

Outcome binary_degradation() {
  Check c;
  const std::vector<reclab::AlgorithmEntry> algos{{"POPULAR", "POPULAR"}, {"UBCF", "UBCF", Params{{"nn", 50}}}};
  std::string margins;
  for (const std::uint64_t seed : {11u, 12u, 13u}) {
    const RatingMatrix real = skewed_dataset(seed);
    const auto r = top_n_run(real, 3, seed, algos);
    const auto b = top_n_run(reclab::binarize(real, 5.0), 3, seed, algos);
    const double real_margin = auc_of(r, "UBCF") - auc_of(r, "POPULAR");
    const double binary_margin = auc_of(b, "UBCF") - auc_of(b, "POPULAR");
    c.expect(binary_margin < real_margin,
             "seed " + std::to_string(seed) + ": binary margin " + fmt(binary_margin) + " >= real " + fmt(real_margin));
    margins += (margins.empty() ? "" : ", ") + fmt(real_margin, 3) + " -> " + fmt(binary_margin, 3);
  }
  c.note("UBCF - POPULAR AUC margin, real -> 0-1, given 3: " + margins);
  return c.result();
}

Outcome svd_full_rank() {
  Check c;
  double worst = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    oracle::Dense a = oracle::normalize_rows(oracle::random_dense(15, 12, 0.5, seed), oracle::Norm::center);
    for (int i = 0; i < a.cols(); ++i) {
      double sum = 0;
      int n = 0;
      for (int u = 0; u < a.rows(); ++u)
        if (oracle::present(a(u, i))) {
          sum += a(u, i);
          ++n;
        }
      for (int u = 0; u < a.rows(); ++u)
        if (!oracle::present(a(u, i))) a(u, i) = n > 0 ? sum / n : 0.0;
    }
    const auto f = reclab::truncated_svd(a, 12, 100, 1e-9, seed);
    worst = std::max(worst, (f.reconstruct() - a).norm() / a.norm());
  }
  c.expect(worst < 1e-6, "relative error " + fmt(worst));
  c.note("10 matrices 15 x 12, max relative Frobenius error " + fmt(worst, 3) + " (tol 1e-6)");
  return c.result();
}

Outcome cli_end_to_end() {
  Check c;
  const auto dir = cli::scratch_dir("acceptance");
  const auto gen = cli::run("generate --users 1000 --items 100 --density 0.3 --seed 42 --out '" +
                            (dir / "synthetic.csv").string() + "'");
  c.expect(gen.exit_code == 0, "generate exit " + std::to_string(gen.exit_code) + ": " + gen.output);

  const nlohmann::json config{
      {"dataset", {{"path", "synthetic.csv"}, {"format", "tuples"}}},
      {"scheme", {{"method", "split"}, {"train", 0.9}, {"given", -5}, {"good_rating", 5}, {"seed", 42}}},
      {"algorithms",
       {{{"label", "random_items"}, {"name", "RANDOM"}},
        {{"label", "popular_items"}, {"name", "POPULAR"}},
        {{"label", "user_based_CF"}, {"name", "UBCF"}, {"params", {{"nn", 50}}}},
        {{"label", "item_based_CF"}, {"name", "IBCF"}, {"params", {{"k", 50}}}},
        {{"label", "SVD_approximation"}, {"name", "SVD"}, {"params", {{"k", 50}}}}}},
      {"mode", "topNList"},
      {"n", {1, 3, 5, 10, 15, 20}},
      {"svg", true}};
  std::ofstream(dir / "experiment.json") << config.dump(2);

  const std::vector<std::string> files{"results.csv",
                                       "avg.csv",
                                       "roc.csv",
                                       "prec_rec.csv",
                                       "roc.svg",
                                       "result_random_items.csv",
                                       "result_popular_items.csv",
                                       "result_user_based_CF.csv",
                                       "result_item_based_CF.csv",
                                       "result_SVD_approximation.csv"};
  std::vector<std::string> first;
  for (const char* out : {"run1", "run2"}) {
    const auto r = cli::run("evaluate -c '" + (dir / "experiment.json").string() + "' -o '" + (dir / out).string() + "'");
    c.expect(r.exit_code == 0, std::string(out) + " exit " + std::to_string(r.exit_code) + ": " + r.output);
    c.expect(std::filesystem::exists(dir / out / "manifest.json"), "manifest.json missing");
    for (std::size_t k = 0; k < files.size(); ++k) {
      const auto p = dir / out / files[k];
      c.expect(std::filesystem::exists(p), files[k] + " missing");
      const auto bytes = cli::slurp(p);
      if (first.size() < files.size()) first.push_back(bytes);
      else c.expect(first[k] == bytes, files[k] + " differs between runs");
    }
  }
  const auto header = first.empty() ? std::string() : first[0].substr(0, first[0].find('\n'));
  c.expect(header == "algorithm,run,n,TP,FP,FN,TN,N,precision,recall,TPR,FPR", "results.csv header: " + header);
  c.note("exit 0, " + std::to_string(files.size()) + " outputs, rerun byte-identical");
  std::filesystem::remove_all(dir);
  return c.result();
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "golden normalization", 1, golden_normalization},
      {2, "golden binarization", 1, golden_binarization},
      {3, "scheme counts", 5, scheme_counts},
      {4, "UBCF/IBCF dense oracle", 30, oracle_equivalence},
      {5, "rule mining oracle", 30, rule_mining_oracle},
      {6, "confusion identities and averaging", 10, confusion_identities},
      {7, "E-measure / F-measure", 1, metric_algebra},
      {8, "ROC monotone in n", 30, roc_monotone},
      {9, "qualitative algorithm ranking", 120, qualitative_reproduction},
      {10, "0-1 data degradation of UBCF", 120, binary_degradation},
      {11, "SVD full-rank reconstruction", 10, svd_full_rank},
      {12, "CLI generate -> evaluate", 120, cli_end_to_end},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = cr.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > cr.limit_seconds) {
      o.pass = false;
      o.detail += "; over time limit";
    }
    failed += !o.pass;
    std::printf("%s %2d %-38s %7.2fs (limit %gs)  %s\n", o.pass ? "PASS" : "FAIL", cr.id, cr.name, secs,
                cr.limit_seconds, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
