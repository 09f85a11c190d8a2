#include <limits>

#include "algorithms.hpp"
#include "reclab/similarity.hpp"

namespace reclab::algorithms {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
/// Weights summing to at most this share of their total magnitude cancel out;
/// the prediction is left undefined.
constexpr double kMinWeightShare = 1e-6;

/// Rescales every retained row to sum to 1; rows with a non-positive sum are kept as is.
void normalize_rows_to_unit_sum(std::vector<Neighborhood>& rows) {
  for (auto& row : rows) {
    double sum = 0.0;
    for (const auto& nb : row) sum += nb.similarity;
    if (sum > 0.0)
      for (auto& nb : row) nb.similarity /= sum;
  }
}

std::vector<Neighborhood> fit_similarities(const Params& p, const Dataset& train, DataKind kind) {
  SimilarityParams sim;
  try {
    sim.measure = parse_measure(text_param(p, "method"));
  } catch (const InvalidArgument& e) {
    throw InvalidParam(e.what());
  }
  const Index k = count_param(p, "k", 1);
  Eigen::MatrixXd s =
      kind == DataKind::real
          ? similarity_matrix(normalized(real_data(train), normalization_param(p)), Axis::items, sim)
          : similarity_matrix(binary_data(train), Axis::items, sim);
  auto rows = truncate_similarities(s, k);
  if (flag_param(p, "normalize_sim_matrix")) normalize_rows_to_unit_sum(rows);
  return rows;
}

/// Item i is scored from the retained neighbors S(i) the active user has rated.
class IbcfModel final : public Model {
 public:
  IbcfModel(std::vector<Neighborhood> neighbors, std::optional<NormalizationMethod> normalize)
      : neighbors_(std::move(neighbors)), normalize_(normalize) {}

  Eigen::MatrixXd predict_ratings(const Dataset& newdata) const override {
    const auto active = normalize_rows(real_data(newdata), normalize_);
    const Index n_items = static_cast<Index>(neighbors_.size());
    Eigen::MatrixXd out(active.data.n_users(), n_items);
    Eigen::VectorXd own(n_items);
    for (Index a = 0; a < active.data.n_users(); ++a) {
      own.setConstant(kNaN);
      const auto row = active.data.row(a);
      for (std::size_t k = 0; k < row.items.size(); ++k) own(row.items[k]) = row.values[k];
      for (Index i = 0; i < n_items; ++i) {
        double num = 0.0, den = 0.0, mass = 0.0;
        for (const auto& nb : neighbors_[static_cast<std::size_t>(i)]) {
          if (std::isnan(own(nb.index))) continue;
          num += nb.similarity * own(nb.index);
          den += nb.similarity;
          mass += std::abs(nb.similarity);
        }
        out(a, i) = mass > 0.0 && den > kMinWeightShare * mass ? num / den * active.sds(a) + active.means(a) : kNaN;
      }
    }
    return out;
  }

 private:
  std::vector<Neighborhood> neighbors_;
  std::optional<NormalizationMethod> normalize_;
};

/// 0-1 data: the score of item i is the summed similarity of S(i) within the user's items.
class BinaryIbcfModel final : public Model {
 public:
  explicit BinaryIbcfModel(std::vector<Neighborhood> neighbors)
      : neighbors_(std::move(neighbors)) {}

  Eigen::MatrixXd predict_ratings(const Dataset& newdata) const override {
    const auto& m = binary_data(newdata);
    const Index n_items = static_cast<Index>(neighbors_.size());
    Eigen::MatrixXd out(m.n_users(), n_items);
    std::vector<char> held(static_cast<std::size_t>(n_items));
    for (Index a = 0; a < m.n_users(); ++a) {
      std::ranges::fill(held, 0);
      for (const int j : m.row(a)) held[static_cast<std::size_t>(j)] = 1;
      for (Index i = 0; i < n_items; ++i) {
        double score = 0.0;
        bool any = false;
        for (const auto& nb : neighbors_[static_cast<std::size_t>(i)]) {
          if (!held[static_cast<std::size_t>(nb.index)]) continue;
          score += nb.similarity;
          any = true;
        }
        out(a, i) = any ? score : kNaN;
      }
    }
    return out;
  }

 private:
  std::vector<Neighborhood> neighbors_;
};

}  // namespace

void register_ibcf(Registry& registry) {
  registry.add({"IBCF", DataKind::real, "Recommender based on item-based collaborative filtering.",
                Params{{"k", 30},
                       {"method", "Cosine"},
                       {"normalize", "center"},
                       {"normalize_sim_matrix", false}}},
               [](const Dataset& train, const Params& p) -> std::shared_ptr<const Model> {
                 return std::make_shared<IbcfModel>(fit_similarities(p, train, DataKind::real),
                                                    normalization_param(p));
               });
  registry.add({"IBCF", DataKind::binary,
                "Recommender based on item-based collaborative filtering.",
                Params{{"k", 30}, {"method", "Jaccard"}, {"normalize_sim_matrix", false}}},
               [](const Dataset& train, const Params& p) -> std::shared_ptr<const Model> {
                 return std::make_shared<BinaryIbcfModel>(
                     fit_similarities(p, train, DataKind::binary));
               });
}

}  // namespace reclab::algorithms
