#include <limits>

#include "algorithms.hpp"
#include "reclab/rulemine.hpp"

namespace reclab::algorithms {

namespace {

class AssociationRuleModel final : public Model {
 public:
  explicit AssociationRuleModel(RuleSet rules, Index n_items)
      : rules_(std::move(rules)), n_items_(n_items) {}

  /// Best confidence among the matching rules that recommend each item.
  Eigen::MatrixXd predict_ratings(const Dataset& newdata) const override {
    const auto& m = binary_data(newdata);
    Eigen::MatrixXd out = Eigen::MatrixXd::Constant(m.n_users(), n_items_,
                                                    std::numeric_limits<double>::quiet_NaN());
    for (Index a = 0; a < m.n_users(); ++a) {
      for (const auto& s : recommend_from_rules(rules_, m.row(a), n_items_))
        out(a, s.item) = s.score;
    }
    return out;
  }

  std::vector<std::vector<ScoredItem>> top_n(const Dataset& newdata, Index n) const override {
    const auto& m = binary_data(newdata);
    std::vector<std::vector<ScoredItem>> lists;
    lists.reserve(static_cast<std::size_t>(m.n_users()));
    for (Index a = 0; a < m.n_users(); ++a)
      lists.push_back(recommend_from_rules(rules_, m.row(a), n));
    return lists;
  }

  const RuleSet& rules() const noexcept { return rules_; }

 private:
  RuleSet rules_;
  Index n_items_;
};

}  // namespace

void register_association_rules(Registry& registry) {
  registry.add({"AR", DataKind::binary, "Recommender based on association rules.",
                Params{{"support", 0.1}, {"confidence", 0.8}, {"maxlen", 3}}},
               [](const Dataset& train, const Params& p) -> std::shared_ptr<const Model> {
                 const auto& m = binary_data(train);
                 const double support = number_param(p, "support");
                 const double confidence = number_param(p, "confidence");
                 const Index maxlen = count_param(p, "maxlen", 2);
                 if (support < 0.0 || support >= 1.0)
                   throw InvalidParam("support must lie in [0, 1)");
                 if (confidence < 0.0 || confidence >= 1.0)
                   throw InvalidParam("confidence must lie in [0, 1)");
                 const auto frequent =
                     mine_frequent(TransactionDB::from_matrix(m), support, maxlen);
                 return std::make_shared<AssociationRuleModel>(
                     induce_rules(frequent, confidence), m.n_items());
               });
}

}  // namespace reclab::algorithms
