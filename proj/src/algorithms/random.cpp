#include <random>

#include "algorithms.hpp"

namespace reclab::algorithms {

namespace {

/// i.i.d. uniform scores; ratings are spread over the observed training range.
class RandomModel final : public Model {
 public:
  RandomModel(double lo, double hi, std::uint64_t seed) : lo_(lo), hi_(hi), seed_(seed) {}

  Eigen::MatrixXd predict_ratings(const Dataset& newdata) const override {
    return Eigen::MatrixXd::Constant(n_users(newdata), n_items(newdata), lo_) +
           (hi_ - lo_) * rank_scores(newdata);
  }

  Eigen::MatrixXd rank_scores(const Dataset& newdata) const override {
    std::mt19937_64 rng(seed_);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Eigen::MatrixXd out(n_users(newdata), n_items(newdata));
    for (Index u = 0; u < out.rows(); ++u)
      for (Index i = 0; i < out.cols(); ++i) out(u, i) = unit(rng);
    return out;
  }

 private:
  double lo_, hi_;
  std::uint64_t seed_;
};

}  // namespace

void register_random(Registry& registry) {
  registry.add({"RANDOM", DataKind::real, "Produce random recommendations (real ratings).",
                Params{{"seed", 0}}},
               [](const Dataset& train, const Params& p) -> std::shared_ptr<const Model> {
                 const auto& values = real_data(train).storage();
                 double lo = 0.0, hi = 0.0;
                 if (values.nonZeros() > 0) {
                   const Eigen::Map<const Eigen::VectorXd> v(values.valuePtr(), values.nonZeros());
                   lo = v.minCoeff();
                   hi = v.maxCoeff();
                 }
                 return std::make_shared<RandomModel>(lo, hi, seed_param(p));
               });
  registry.add({"RANDOM", DataKind::binary, "Produce random recommendations (binary ratings).",
                Params{{"seed", 0}}},
               [](const Dataset&, const Params& p) -> std::shared_ptr<const Model> {
                 return std::make_shared<RandomModel>(0.0, 1.0, seed_param(p));
               });
}

}  // namespace reclab::algorithms
