// reclab: command-line front end for data inspection, synthetic data,
// recommendation and evaluation experiments.
//
// Exit codes: 0 success, 1 other failure, 2 I/O, 3 config/registry,
// 4 data reference (unknown user or item label).

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "reclab/experiment.hpp"
#include "reclab/inspect.hpp"
#include "reclab/registry.hpp"
#include "reclab/synthetic.hpp"

namespace {

using namespace reclab;

enum ExitCode { kOk = 0, kFailure = 1, kIo = 2, kConfig = 3, kDataReference = 4 };

std::uint64_t env_seed() {
  const char* text = std::getenv("RECLAB_SEED");
  if (!text || !*text) return 0;
  char* end = nullptr;
  const auto value = std::strtoull(text, &end, 10);
  if (*end != '\0') throw ConfigError("RECLAB_SEED must be a non-negative integer");
  return value;
}

Dataset read_dataset(const std::string& path, const std::string& format, const std::string& kind,
                     std::optional<double> binarize_at) {
  const RatingMatrix raw = read_csv(path, parse_csv_format(format));
  if (binarize_at) return binarize(raw, *binarize_at);
  if (parse_data_kind(kind) == DataKind::binary)
    return binarize(raw, -std::numeric_limits<double>::infinity());
  return raw;
}

void print_registry(std::ostream& out, std::optional<DataKind> kind) {
  for (const auto& spec : Registry::global().entries()) {
    if (kind && spec.data_kind != *kind) continue;
    out << spec.name << '\t' << matrix_class_name(spec.data_kind) << '\t' << spec.description << '\t'
        << spec.default_params.dump() << '\n';
  }
}

/// Re-expresses `newdata` over the training item labels.
Dataset align_items(const Dataset& newdata, const LabelSet& items) {
  if (item_labels(newdata) == items) return newdata;
  std::vector<int> remap(static_cast<std::size_t>(n_items(newdata)));
  for (Index i = 0; i < n_items(newdata); ++i) {
    const auto pos = items.find(item_labels(newdata)[i]);
    if (!pos) throw UnknownLabel("item '" + item_labels(newdata)[i] + "' is not in the training data");
    remap[static_cast<std::size_t>(i)] = static_cast<int>(*pos);
  }
  return std::visit(
      [&](const auto& m) -> Dataset {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, RatingMatrix>) {
          std::vector<RatingTuple> tuples = m.to_tuples();
          return RatingMatrix::from_tuples(tuples, m.user_labels(), items);
        } else {
          std::vector<std::vector<int>> rows;
          for (Index u = 0; u < m.n_users(); ++u) {
            std::vector<int> row;
            for (const int i : m.row(u)) row.push_back(remap[static_cast<std::size_t>(i)]);
            std::ranges::sort(row);
            rows.push_back(std::move(row));
          }
          return BinaryRatingMatrix(m.user_labels(), items, rows);
        }
      },
      newdata);
}

void print_top_n(std::ostream& out, const TopNList& lists) {
  for (Index u = 0; u < lists.n_users(); ++u) {
    out << lists.users[u] << ':';
    for (const auto& s : lists.lists[static_cast<std::size_t>(u)])
      out << ' ' << lists.items[s.item] << " (" << format_number(s.score) << ')';
    out << '\n';
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Collaborative-filtering toolkit: inspect, generate, recommend, evaluate."};
  app.require_subcommand(1);

  // inspect
  auto* inspect_cmd = app.add_subcommand("inspect", "Summarize a dataset and write rating histograms");
  std::string inspect_path, inspect_format = "tuples", inspect_kind = "real", inspect_out;
  Index bins = 20;
  inspect_cmd->add_option("dataset", inspect_path, "Rating CSV")->required();
  inspect_cmd->add_option("--format", inspect_format, "tuples | dense | jester");
  inspect_cmd->add_option("--kind", inspect_kind, "real | binary");
  inspect_cmd->add_option("--bins", bins, "Histogram bins")->check(CLI::PositiveNumber);
  inspect_cmd->add_option("--out", inspect_out, "Histogram CSV file (default: stdout)");

  // generate
  auto* generate_cmd = app.add_subcommand("generate", "Write a synthetic rating dataset as tuple CSV");
  SyntheticSpec spec;
  std::string generate_out;
  std::optional<std::uint64_t> generate_seed;
  generate_cmd->add_option("--out", generate_out, "Output CSV")->required();
  generate_cmd->add_option("--users", spec.n_users);
  generate_cmd->add_option("--items", spec.n_items);
  generate_cmd->add_option("--density", spec.density);
  generate_cmd->add_option("--mean", spec.mean);
  generate_cmd->add_option("--user-bias-sd", spec.user_bias_sd);
  generate_cmd->add_option("--item-bias-sd", spec.item_bias_sd);
  generate_cmd->add_option("--popularity-bias", spec.popularity_bias);
  generate_cmd->add_option("--skew", spec.skew, "Popularity exponent: weight = rank^-skew");
  generate_cmd->add_option("--factors", spec.factors);
  generate_cmd->add_option("--factor-sd", spec.factor_sd);
  generate_cmd->add_option("--noise-sd", spec.noise_sd);
  generate_cmd->add_option("--lo", spec.lo);
  generate_cmd->add_option("--hi", spec.hi);
  generate_cmd->add_option("--decimals", spec.decimals);
  generate_cmd->add_option("--seed", generate_seed, "Defaults to RECLAB_SEED, then 0");

  // recommend
  auto* recommend_cmd = app.add_subcommand("recommend", "Fit an algorithm and predict for users");
  std::string rec_path, rec_format = "tuples", rec_kind = "real", rec_algorithm, rec_params = "{}",
                        rec_type = "topNList", rec_newdata;
  std::optional<double> rec_binarize;
  std::vector<std::string> rec_users;
  Index rec_n = 10;
  recommend_cmd->add_option("dataset", rec_path, "Training rating CSV")->required();
  recommend_cmd->add_option("--format", rec_format, "tuples | dense | jester");
  recommend_cmd->add_option("--kind", rec_kind, "real | binary");
  recommend_cmd->add_option("--binarize", rec_binarize, "Convert to 0-1 with ratings >= this value");
  recommend_cmd->add_option("--algorithm,-a", rec_algorithm, "Registered algorithm name")->required();
  recommend_cmd->add_option("--params", rec_params, "Algorithm parameters as a JSON object");
  recommend_cmd->add_option("--users", rec_users,
                            "Users to hold out of training and predict for (comma separated)")
      ->delimiter(',');
  recommend_cmd->add_option("--newdata", rec_newdata, "Separate CSV of users to predict for");
  recommend_cmd->add_option("-n", rec_n, "List length for topNList");
  recommend_cmd->add_option("--type", rec_type, "topNList | ratings | ratingMatrix");

  // evaluate
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Run an evaluation experiment from a JSON config");
  std::string config_path, eval_output;
  std::optional<std::uint64_t> eval_seed;
  bool eval_svg = false;
  evaluate_cmd->add_option("--config,-c", config_path, "Experiment config (JSON)")->required();
  evaluate_cmd->add_option("--output,-o", eval_output, "Output directory (overrides the config)");
  evaluate_cmd->add_option("--seed", eval_seed, "Scheme seed (overrides the config)");
  evaluate_cmd->add_flag("--svg", eval_svg, "Also write roc.svg");

  // registry
  auto* registry_cmd = app.add_subcommand("registry", "List registered algorithms");
  std::string registry_kind;
  registry_cmd->add_option("--kind", registry_kind, "real | binary");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  if (*inspect_cmd) {
    const Dataset data = read_dataset(inspect_path, inspect_format, inspect_kind, std::nullopt);
    const auto report = inspect(data, bins);
    const auto csv = histograms_csv(report);
    if (inspect_out.empty()) {
      std::cout << csv;
      std::cerr << summary_line(report, kind_of(data)) << '\n';
    } else {
      write_file_atomic(inspect_out, csv);
      std::cout << summary_line(report, kind_of(data)) << '\n';
    }
    return kOk;
  }

  if (*generate_cmd) {
    spec.seed = generate_seed ? *generate_seed : env_seed();
    validate(spec);
    std::ostringstream out;
    write_tuples_csv(out, generate_ratings(spec));
    write_file_atomic(generate_out, out.str());
    return kOk;
  }

  if (*recommend_cmd) {
    nlohmann::json params;
    try {
      params = nlohmann::json::parse(rec_params);
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError(std::string("--params is not valid JSON: ") + e.what());
    }
    const auto type = parse_predict_type(rec_type);
    Dataset data = read_dataset(rec_path, rec_format, rec_kind, rec_binarize);
    Dataset train = data, newdata;
    if (!rec_newdata.empty()) {
      if (!rec_users.empty()) throw ConfigError("use either --users or --newdata, not both");
      newdata = align_items(read_dataset(rec_newdata, rec_format, rec_kind, rec_binarize), item_labels(data));
    } else {
      if (rec_users.empty()) throw ConfigError("name --users to predict for, or pass --newdata");
      std::vector<Index> held, rest;
      for (const auto& label : rec_users) {
        const auto u = user_labels(data).find(label);
        if (!u) throw UnknownLabel("user '" + label + "' is not in the dataset");
        held.push_back(*u);
      }
      for (Index u = 0; u < n_users(data); ++u)
        if (std::ranges::find(held, u) == held.end()) rest.push_back(u);
      if (rest.empty()) throw ConfigError("no users left for training");
      train = select_users(data, rest);
      newdata = select_users(data, held);
    }
    const auto model = fit(rec_algorithm, train, params);
    std::cerr << model.describe() << '\n';
    const auto prediction = predict(model, newdata, type, rec_n);
    if (const auto* lists = std::get_if<TopNList>(&prediction)) {
      print_top_n(std::cout, *lists);
    } else {
      write_dense_csv(std::cout, std::get<RatingMatrix>(prediction));
    }
    return kOk;
  }

  if (*evaluate_cmd) {
    const std::uint64_t fallback = env_seed();
    ExperimentConfig config;
    try {
      config = ExperimentConfig::load(config_path, fallback);
    } catch (const UnknownAlgorithm& e) {
      std::cerr << "reclab: " << e.what() << "\nregistered algorithms:\n";
      print_registry(std::cerr, std::nullopt);
      return kConfig;
    }
    if (!eval_output.empty()) config.output = eval_output;
    if (eval_seed) config.scheme.seed = *eval_seed;
    if (eval_svg) config.svg = true;
    const auto outcome = run_experiment(config);
    for (const auto& notice : outcome.evaluation.notices) std::cerr << "notice: " << notice << '\n';
    if (outcome.excluded_users > 0)
      std::cerr << "notice: " << outcome.excluded_users
                << " users have too few ratings for the protocol and were excluded\n";
    for (const auto& result : outcome.evaluation.results) {
      double model = 0, prediction = 0;
      for (const auto& t : result.timings) {
        model += t.model_seconds;
        prediction += t.predict_seconds;
      }
      std::ostringstream line;
      line << std::fixed << std::setprecision(3) << result.label << " run " << result.runs() << " [" << model
           << "sec/" << prediction << "sec]";
      std::cout << line.str() << '\n';
    }
    for (const auto& f : outcome.files) std::cout << "wrote " << f.string() << '\n';
    return kOk;
  }

  if (*registry_cmd) {
    std::optional<DataKind> kind;
    if (!registry_kind.empty()) kind = parse_data_kind(registry_kind);
    print_registry(std::cout, kind);
    return kOk;
  }
  return kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const reclab::IoError& e) {
    std::cerr << "reclab: " << e.what() << '\n';
    return kIo;
  } catch (const reclab::ParseError& e) {
    std::cerr << "reclab: " << e.what() << '\n';
    return kIo;
  } catch (const reclab::ConfigError& e) {
    std::cerr << "reclab: " << e.what() << '\n';
    return kConfig;
  } catch (const reclab::UnknownAlgorithm& e) {
    std::cerr << "reclab: " << e.what() << "\nregistered algorithms:\n";
    print_registry(std::cerr, std::nullopt);
    return kConfig;
  } catch (const reclab::InvalidParam& e) {
    std::cerr << "reclab: " << e.what() << '\n';
    return kConfig;
  } catch (const reclab::InvalidMeasure& e) {
    std::cerr << "reclab: " << e.what() << '\n';
    return kConfig;
  } catch (const reclab::UnknownLabel& e) {
    std::cerr << "reclab: " << e.what() << '\n';
    return kDataReference;
  } catch (const reclab::ShapeMismatch& e) {
    std::cerr << "reclab: " << e.what() << '\n';
    return kDataReference;
  } catch (const reclab::EmptyInput& e) {
    std::cerr << "reclab: " << e.what() << '\n';
    return kIo;
  } catch (const reclab::InvalidRating& e) {
    std::cerr << "reclab: " << e.what() << '\n';
    return kIo;
  } catch (const reclab::DuplicateEntry& e) {
    std::cerr << "reclab: " << e.what() << '\n';
    return kIo;
  } catch (const reclab::InvalidArgument& e) {
    std::cerr << "reclab: " << e.what() << '\n';
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "reclab: " << e.what() << '\n';
    return kFailure;
  }
}
