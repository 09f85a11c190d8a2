#include <cmath>

#include "algorithms.hpp"

namespace reclab::algorithms {

double number_param(const Params& p, const std::string& key) {
  const auto& v = p.at(key);
  if (!v.is_number()) throw InvalidParam("parameter '" + key + "' must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw InvalidParam("parameter '" + key + "' must be finite");
  return x;
}

std::optional<double> optional_number_param(const Params& p, const std::string& key) {
  if (!p.contains(key) || p.at(key).is_null()) return std::nullopt;
  return number_param(p, key);
}

Index count_param(const Params& p, const std::string& key, Index min) {
  const auto& v = p.at(key);
  if (!v.is_number()) throw InvalidParam("parameter '" + key + "' must be an integer");
  const double x = v.get<double>();
  if (x != std::floor(x) || x < static_cast<double>(min))
    throw InvalidParam("parameter '" + key + "' must be an integer >= " + std::to_string(min));
  return static_cast<Index>(x);
}

bool flag_param(const Params& p, const std::string& key) {
  const auto& v = p.at(key);
  if (!v.is_boolean()) throw InvalidParam("parameter '" + key + "' must be true or false");
  return v.get<bool>();
}

std::string text_param(const Params& p, const std::string& key) {
  const auto& v = p.at(key);
  if (!v.is_string()) throw InvalidParam("parameter '" + key + "' must be a string");
  return v.get<std::string>();
}

std::uint64_t seed_param(const Params& p) {
  if (!p.contains("seed") || p.at("seed").is_null()) return 0;
  return static_cast<std::uint64_t>(count_param(p, "seed", 0));
}

std::optional<NormalizationMethod> normalization_param(const Params& p) {
  if (!p.contains("normalize") || p.at("normalize").is_null()) return std::nullopt;
  const auto text = text_param(p, "normalize");
  if (text == "none") return std::nullopt;
  try {
    return parse_normalization(text);
  } catch (const InvalidArgument& e) {
    throw InvalidParam(e.what());
  }
}

std::pair<double, double> location_scale(std::span<const double> values,
                                         const std::optional<NormalizationMethod>& method) {
  if (!method) return {0.0, 1.0};
  return row_location_scale(values, *method);
}

RatingMatrix normalized(const RatingMatrix& m, const std::optional<NormalizationMethod>& method) {
  if (!method) return m;
  return normalize(m, *method).first;
}

NormalizedRows normalize_rows(const RatingMatrix& m,
                              const std::optional<NormalizationMethod>& method) {
  NormalizedRows out{m, Eigen::VectorXd::Zero(m.n_users()), Eigen::VectorXd::Ones(m.n_users())};
  if (!method) return out;
  auto [data, info] = normalize(m, *method);
  out.data = std::move(data);
  out.means = info.row_means;
  for (Index u = 0; u < m.n_users(); ++u) out.sds(u) = info.scale(u);
  return out;
}

const RatingMatrix& real_data(const Dataset& d) { return std::get<RatingMatrix>(d); }

const BinaryRatingMatrix& binary_data(const Dataset& d) {
  return std::get<BinaryRatingMatrix>(d);
}

}  // namespace reclab::algorithms
