#include "reclab/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace reclab {

namespace {

// Stream tags keep the partition and withholding draws independent.
constexpr std::uint64_t kPartitionStream = 0x9e3779b97f4a7c15ULL;

template <typename Matrix>
std::pair<Matrix, Matrix> split_rows(const Matrix& test, const std::vector<std::vector<char>>& known);

template <>
std::pair<RatingMatrix, RatingMatrix> split_rows(const RatingMatrix& test,
                                                 const std::vector<std::vector<char>>& known) {
  std::vector<int> k_outer{0}, k_inner, u_outer{0}, u_inner;
  std::vector<double> k_values, u_values;
  for (Index u = 0; u < test.n_users(); ++u) {
    const auto row = test.row(u);
    for (std::size_t k = 0; k < row.items.size(); ++k) {
      if (known[static_cast<std::size_t>(u)][k]) {
        k_inner.push_back(row.items[k]);
        k_values.push_back(row.values[k]);
      } else {
        u_inner.push_back(row.items[k]);
        u_values.push_back(row.values[k]);
      }
    }
    k_outer.push_back(static_cast<int>(k_inner.size()));
    u_outer.push_back(static_cast<int>(u_inner.size()));
  }
  return {RatingMatrix::from_csr(test.user_labels(), test.item_labels(), std::move(k_outer),
                                 std::move(k_inner), std::move(k_values)),
          RatingMatrix::from_csr(test.user_labels(), test.item_labels(), std::move(u_outer),
                                 std::move(u_inner), std::move(u_values))};
}

template <>
std::pair<BinaryRatingMatrix, BinaryRatingMatrix> split_rows(
    const BinaryRatingMatrix& test, const std::vector<std::vector<char>>& known) {
  std::vector<int> k_outer{0}, k_inner, u_outer{0}, u_inner;
  for (Index u = 0; u < test.n_users(); ++u) {
    const auto row = test.row(u);
    for (std::size_t k = 0; k < row.size(); ++k)
      (known[static_cast<std::size_t>(u)][k] ? k_inner : u_inner).push_back(row[k]);
    k_outer.push_back(static_cast<int>(k_inner.size()));
    u_outer.push_back(static_cast<int>(u_inner.size()));
  }
  return {BinaryRatingMatrix(test.user_labels(), test.item_labels(), std::move(k_outer),
                             std::move(k_inner)),
          BinaryRatingMatrix(test.user_labels(), test.item_labels(), std::move(u_outer),
                             std::move(u_inner))};
}

/// Marks `known_count` uniformly chosen ratings of every test user as known.
std::vector<std::vector<char>> choose_known(const Dataset& test, Index given, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<char>> known;
  known.reserve(static_cast<std::size_t>(n_users(test)));
  for (Index u = 0; u < n_users(test); ++u) {
    const Index n = row_count(test, u);
    const Index k = *known_count(n, given);
    std::vector<char> mask(static_cast<std::size_t>(n), 0);
    std::vector<Index> positions(static_cast<std::size_t>(n));
    std::iota(positions.begin(), positions.end(), Index{0});
    for (Index i = 0; i < k; ++i) {
      std::uniform_int_distribution<Index> pick(i, n - 1);
      std::swap(positions[static_cast<std::size_t>(i)],
                positions[static_cast<std::size_t>(pick(rng))]);
      mask[static_cast<std::size_t>(positions[static_cast<std::size_t>(i)])] = 1;
    }
    known.push_back(std::move(mask));
  }
  return known;
}

std::vector<Index> complement(Index n, const std::vector<Index>& sorted_members) {
  std::vector<Index> out;
  std::size_t p = 0;
  for (Index u = 0; u < n; ++u) {
    while (p < sorted_members.size() && sorted_members[p] < u) ++p;
    if (p == sorted_members.size() || sorted_members[p] != u) out.push_back(u);
  }
  return out;
}

}  // namespace

SplitMethod parse_split_method(std::string_view text) {
  if (text == "split") return SplitMethod::split;
  if (text == "cross" || text == "cross-validation") return SplitMethod::cross;
  if (text == "bootstrap") return SplitMethod::bootstrap;
  throw InvalidArgument("unknown evaluation method '" + std::string(text) + "'");
}

std::string_view to_string(SplitMethod method) {
  switch (method) {
    case SplitMethod::split: return "split";
    case SplitMethod::cross: return "cross";
    case SplitMethod::bootstrap: return "bootstrap";
  }
  return "split";
}

std::optional<Index> known_count(Index n_rated, Index given) {
  if (given > 0) {
    if (n_rated < given + 1) return std::nullopt;
    return given;
  }
  if (n_rated < -given + 1) return std::nullopt;
  return n_rated + given;
}

EvaluationScheme EvaluationScheme::make(const Dataset& data, const SchemeOptions& options) {
  if (options.given == 0) throw InvalidArgument("given must be non-zero");
  if (options.method == SplitMethod::split && !(options.train > 0.0 && options.train < 1.0))
    throw InvalidArgument("split needs 0 < train < 1");
  if (options.method == SplitMethod::bootstrap && !(options.train > 0.0))
    throw InvalidArgument("bootstrap needs train > 0");
  if (options.method == SplitMethod::cross && options.k < 2)
    throw InvalidArgument("cross-validation needs k >= 2");
  if (options.method != SplitMethod::cross && options.runs < 1)
    throw InvalidArgument("runs must be at least 1");
  if (options.good_rating && !std::isfinite(*options.good_rating))
    throw InvalidArgument("good_rating must be finite");

  EvaluationScheme s;
  s.options_ = options;
  std::vector<Index> eligible;
  for (Index u = 0; u < n_users(data); ++u)
    if (known_count(row_count(data, u), options.given)) eligible.push_back(u);
  s.excluded_ = n_users(data) - static_cast<Index>(eligible.size());
  s.data_ = select_users(data, eligible);
  const Index n = static_cast<Index>(eligible.size());
  if (n < 2) throw InvalidArgument("fewer than two users satisfy the rating floor of the protocol");

  std::mt19937_64 partition_rng(options.seed ^ kPartitionStream);
  std::vector<std::pair<std::vector<Index>, std::vector<Index>>> parts;  // (draw, test)

  switch (options.method) {
    case SplitMethod::split: {
      const auto n_train = static_cast<Index>(std::llround(options.train * static_cast<double>(n)));
      if (n_train < 1 || n_train >= n)
        throw InvalidArgument("split leaves an empty training or test set");
      for (Index r = 0; r < options.runs; ++r) {
        std::vector<Index> order(static_cast<std::size_t>(n));
        std::iota(order.begin(), order.end(), Index{0});
        std::shuffle(order.begin(), order.end(), partition_rng);
        std::vector<Index> train(order.begin(), order.begin() + n_train);
        std::vector<Index> test(order.begin() + n_train, order.end());
        std::ranges::sort(train);
        std::ranges::sort(test);
        parts.emplace_back(std::move(train), std::move(test));
      }
      break;
    }
    case SplitMethod::cross: {
      if (options.k > n) throw InvalidArgument("more folds than eligible users");
      std::vector<Index> order(static_cast<std::size_t>(n));
      std::iota(order.begin(), order.end(), Index{0});
      std::shuffle(order.begin(), order.end(), partition_rng);
      for (Index f = 0; f < options.k; ++f) {
        std::vector<Index> test;
        for (Index p = f; p < n; p += options.k) test.push_back(order[static_cast<std::size_t>(p)]);
        std::ranges::sort(test);
        parts.emplace_back(complement(n, test), std::move(test));
      }
      break;
    }
    case SplitMethod::bootstrap: {
      const Index n_draw = options.train < 1.0
                               ? static_cast<Index>(std::llround(options.train * static_cast<double>(n)))
                               : static_cast<Index>(std::llround(options.train));
      if (n_draw < 1) throw InvalidArgument("bootstrap training draw is empty");
      std::uniform_int_distribution<Index> pick(0, n - 1);
      for (Index r = 0; r < options.runs; ++r) {
        std::vector<Index> draw(static_cast<std::size_t>(n_draw));
        for (auto& d : draw) d = pick(partition_rng);
        std::vector<Index> unique = draw;
        std::ranges::sort(unique);
        unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
        auto test = complement(n, unique);
        if (test.empty()) throw InvalidArgument("bootstrap draw left no test users");
        parts.emplace_back(std::move(draw), std::move(test));
      }
      break;
    }
  }

  for (std::size_t r = 0; r < parts.size(); ++r) {
    Run run;
    run.draw = std::move(parts[r].first);
    run.train = run.draw;
    std::ranges::sort(run.train);
    run.train.erase(std::unique(run.train.begin(), run.train.end()), run.train.end());
    run.test = std::move(parts[r].second);
    const Dataset test = select_users(s.data_, run.test);
    const auto known = choose_known(test, options.given, options.seed ^ static_cast<std::uint64_t>(r));
    std::visit(
        [&](const auto& m) {
          auto [k, u] = split_rows(m, known);
          run.known = std::move(k);
          run.unknown = std::move(u);
        },
        test);
    s.runs_.push_back(std::move(run));
  }
  return s;
}

const EvaluationScheme::Run& EvaluationScheme::run_at(Index run) const {
  if (run < 0 || run >= runs())
    throw InvalidArgument("run " + std::to_string(run) + " out of range [0, " +
                          std::to_string(runs()) + ")");
  return runs_[static_cast<std::size_t>(run)];
}

const std::vector<Index>& EvaluationScheme::train_users(Index run) const { return run_at(run).train; }
const std::vector<Index>& EvaluationScheme::train_draw(Index run) const { return run_at(run).draw; }
const std::vector<Index>& EvaluationScheme::test_users(Index run) const { return run_at(run).test; }

Dataset EvaluationScheme::get_data(Index run, Part part) const {
  const Run& r = run_at(run);
  switch (part) {
    case Part::train: return select_users(data_, r.train);
    case Part::known: return r.known;
    case Part::unknown: return r.unknown;
  }
  return r.known;
}

}  // namespace reclab
