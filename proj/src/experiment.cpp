#include "reclab/experiment.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "reclab/registry.hpp"
#include "reclab/report.hpp"

namespace reclab {

namespace {

using nlohmann::json;

const json& member(const json& j, const char* key, const char* where) {
  if (!j.is_object() || !j.contains(key))
    throw ConfigError(std::string(where) + " needs \"" + key + "\"");
  return j.at(key);
}

double number_at(const json& j, const char* key, const char* where) {
  const auto& v = member(j, key, where);
  if (!v.is_number()) throw ConfigError(std::string(where) + "." + key + " must be a number");
  return v.get<double>();
}

Index integer_at(const json& j, const char* key, const char* where) {
  const auto& v = member(j, key, where);
  if (!v.is_number_integer()) throw ConfigError(std::string(where) + "." + key + " must be an integer");
  return v.get<Index>();
}

std::string string_at(const json& j, const char* key, const char* where) {
  const auto& v = member(j, key, where);
  if (!v.is_string()) throw ConfigError(std::string(where) + "." + key + " must be a string");
  return v.get<std::string>();
}

std::uint64_t seed_at(const json& j, const char* where, std::uint64_t fallback) {
  if (!j.contains("seed") || j.at("seed").is_null()) return fallback;
  const auto& v = j.at("seed");
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
    throw ConfigError(std::string(where) + ".seed must be a non-negative integer");
  return v.get<std::uint64_t>();
}

/// Labels end up in CSV cells and file names.
bool is_safe_label(const std::string& label) {
  return !label.empty() && std::ranges::all_of(label, [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.' || c == '+';
  });
}

template <typename F>
auto translate(F&& f) {
  try {
    return f();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
}

std::filesystem::path resolve(const std::filesystem::path& p, const std::filesystem::path& base) {
  return p.is_absolute() ? p : base / p;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const json& j, const std::filesystem::path& base_dir,
                                             std::uint64_t default_seed) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> known{"dataset", "sample", "binarize", "min_row_count", "scheme",
                                           "algorithms", "mode", "n", "output", "svg"};
  for (const auto& [key, value] : j.items())
    if (!known.contains(key)) throw ConfigError("unknown config member \"" + key + "\"");

  ExperimentConfig c;
  const auto& ds = member(j, "dataset", "config");
  c.dataset_path = resolve(string_at(ds, "path", "dataset"), base_dir);
  if (ds.contains("format"))
    c.format = translate([&] { return parse_csv_format(string_at(ds, "format", "dataset")); });
  if (ds.contains("kind"))
    c.kind = translate([&] { return parse_data_kind(string_at(ds, "kind", "dataset")); });

  if (j.contains("sample")) {
    const auto& s = j.at("sample");
    c.sample_k = integer_at(s, "k", "sample");
    if (*c.sample_k < 1) throw ConfigError("sample.k must be positive");
    c.sample_seed = seed_at(s, "sample", default_seed);
  }
  if (j.contains("binarize")) {
    if (c.kind == DataKind::binary) throw ConfigError("binarize needs a real-valued dataset");
    c.binarize_min_rating = number_at(j.at("binarize"), "min_rating", "binarize");
  }
  if (j.contains("min_row_count")) {
    c.min_row_count = integer_at(j, "min_row_count", "config");
    if (c.min_row_count < 0) throw ConfigError("min_row_count must be >= 0");
  }

  const auto& sc = member(j, "scheme", "config");
  if (sc.contains("method"))
    c.scheme.method = translate([&] { return parse_split_method(string_at(sc, "method", "scheme")); });
  if (sc.contains("train")) c.scheme.train = number_at(sc, "train", "scheme");
  if (sc.contains("k")) c.scheme.k = integer_at(sc, "k", "scheme");
  if (sc.contains("runs")) c.scheme.runs = integer_at(sc, "runs", "scheme");
  if (sc.contains("given")) c.scheme.given = integer_at(sc, "given", "scheme");
  if (sc.contains("good_rating") && !sc.at("good_rating").is_null())
    c.scheme.good_rating = number_at(sc, "good_rating", "scheme");
  c.scheme.seed = seed_at(sc, "scheme", default_seed);

  if (j.contains("mode"))
    c.mode = translate([&] { return parse_evaluation_mode(string_at(j, "mode", "config")); });
  if (j.contains("n")) {
    const auto& n = j.at("n");
    if (!n.is_array() || n.empty()) throw ConfigError("n must be a non-empty list of integers");
    c.n_values.clear();
    for (const auto& v : n) {
      if (!v.is_number_integer() || v.get<Index>() < 1)
        throw ConfigError("n must list integers >= 1");
      c.n_values.push_back(v.get<Index>());
    }
  }
  if (j.contains("output")) c.output = resolve(string_at(j, "output", "config"), base_dir);
  else c.output = base_dir / c.output;
  if (j.contains("svg")) {
    if (!j.at("svg").is_boolean()) throw ConfigError("svg must be true or false");
    c.svg = j.at("svg").get<bool>();
  }

  const DataKind effective = c.binarize_min_rating ? DataKind::binary : c.kind;
  if (c.mode == EvaluationMode::top_n && effective == DataKind::real && !c.scheme.good_rating)
    throw ConfigError("scheme.good_rating is required for top-N evaluation of real ratings");

  const auto& algos = member(j, "algorithms", "config");
  if (!algos.is_array() || algos.empty()) throw ConfigError("algorithms must be a non-empty list");
  std::set<std::string> labels;
  const Registry& registry = Registry::global();
  for (const auto& a : algos) {
    AlgorithmEntry e;
    e.name = string_at(a, "name", "algorithm");
    e.label = a.contains("label") ? string_at(a, "label", "algorithm") : e.name;
    if (!is_safe_label(e.label))
      throw ConfigError("algorithm label \"" + e.label + "\" may only use letters, digits and _-.+");
    if (!labels.insert(e.label).second) throw ConfigError("duplicate algorithm label \"" + e.label + "\"");
    if (a.contains("params")) e.params = a.at("params");
    if (!registry.knows(e.name)) throw UnknownAlgorithm("unknown algorithm '" + e.name + "'");
    if (const auto spec = registry.find(e.name, effective)) resolve_params(*spec, e.params);
    c.algorithms.push_back(std::move(e));
  }
  return c;
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& file, std::uint64_t default_seed) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open config file " + file.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(file.string() + ": " + e.what());
  }
  return from_json(j, file.parent_path().empty() ? std::filesystem::path(".") : file.parent_path(),
                   default_seed);
}

json ExperimentConfig::to_json() const {
  json j;
  j["dataset"] = {{"path", dataset_path.string()},
                  {"format", std::string(to_string(format))},
                  {"kind", std::string(to_string(kind))}};
  if (sample_k) j["sample"] = {{"k", *sample_k}, {"seed", sample_seed}};
  if (binarize_min_rating) j["binarize"] = {{"min_rating", *binarize_min_rating}};
  j["min_row_count"] = min_row_count;
  j["scheme"] = {{"method", std::string(to_string(scheme.method))},
                 {"train", scheme.train},
                 {"k", scheme.k},
                 {"runs", scheme.runs},
                 {"given", scheme.given},
                 {"good_rating", scheme.good_rating ? json(*scheme.good_rating) : json(nullptr)},
                 {"seed", scheme.seed}};
  j["algorithms"] = json::array();
  for (const auto& a : algorithms)
    j["algorithms"].push_back({{"label", a.label}, {"name", a.name}, {"params", a.params}});
  j["mode"] = std::string(to_string(mode));
  j["n"] = n_values;
  j["output"] = output.string();
  j["svg"] = svg;
  return j;
}

Dataset load_dataset(const ExperimentConfig& config) {
  const RatingMatrix raw = read_csv(config.dataset_path, config.format);
  Dataset data = raw;
  if (config.kind == DataKind::binary)
    data = binarize(raw, -std::numeric_limits<double>::infinity());
  if (config.sample_k) {
    if (*config.sample_k > n_users(data))
      throw ConfigError("sample.k exceeds the " + std::to_string(n_users(data)) + " users of the dataset");
    data = std::visit([&](const auto& m) -> Dataset { return sample_users(m, *config.sample_k, config.sample_seed); },
                      data);
  }
  if (config.binarize_min_rating) data = binarize(std::get<RatingMatrix>(data), *config.binarize_min_rating);
  if (config.min_row_count > 0) data = filter_users(data, config.min_row_count);
  return data;
}

ExperimentOutcome run_experiment(const ExperimentConfig& config) {
  const Dataset data = load_dataset(config);
  const auto scheme = translate([&] { return EvaluationScheme::make(data, config.scheme); });

  ExperimentOutcome outcome;
  outcome.excluded_users = scheme.excluded_users();
  outcome.evaluation = evaluate(scheme, config.algorithms, config.mode, config.n_values);
  const auto& results = outcome.evaluation.results;

  std::vector<std::pair<std::string, std::string>> files;
  if (config.mode == EvaluationMode::top_n) {
    files.emplace_back("results.csv", confusion_csv(results, false));
    files.emplace_back("avg.csv", confusion_csv(results, true));
    for (const auto& r : results)
      files.emplace_back("result_" + r.label + ".csv", confusion_csv(std::span(&r, 1), false));
    files.emplace_back("roc.csv", curve_csv(results, CurveKind::roc));
    files.emplace_back("prec_rec.csv", curve_csv(results, CurveKind::prec_rec));
    if (config.svg) files.emplace_back("roc.svg", roc_svg(results));
  } else {
    files.emplace_back("results.csv", errors_csv(results, false));
    files.emplace_back("avg.csv", errors_csv(results, true));
    for (const auto& r : results)
      files.emplace_back("result_" + r.label + ".csv", errors_csv(std::span(&r, 1), false));
    files.emplace_back("errors.csv", error_summary_csv(results));
  }

  json manifest;
  manifest["config"] = config.to_json();
  manifest["data"] = {{"users", n_users(data)},
                      {"items", n_items(data)},
                      {"ratings", n_ratings(data)},
                      {"kind", std::string(to_string(kind_of(data)))},
                      {"excluded_users", scheme.excluded_users()},
                      {"runs", scheme.runs()}};
  manifest["notices"] = outcome.evaluation.notices;
  manifest["timings"] = json::array();
  for (const auto& r : results) {
    json runs = json::array();
    for (const auto& t : r.timings)
      runs.push_back({{"model_seconds", t.model_seconds}, {"prediction_seconds", t.predict_seconds}});
    manifest["timings"].push_back({{"algorithm", r.label}, {"runs", runs}});
  }
  json file_list = json::array();
  for (const auto& [name, _] : files) file_list.push_back(name);
  manifest["files"] = file_list;
  files.emplace_back("manifest.json", manifest.dump(2) + "\n");

  std::error_code ec;
  std::filesystem::create_directories(config.output, ec);
  if (ec) throw IoError("cannot create output directory " + config.output.string() + ": " + ec.message());
  for (const auto& [name, contents] : files) {
    write_file_atomic(config.output / name, contents);
    outcome.files.push_back(config.output / name);
  }
  return outcome;
}

}  // namespace reclab
