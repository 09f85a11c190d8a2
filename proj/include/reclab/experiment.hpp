#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "reclab/evaluate.hpp"
#include "reclab/io.hpp"

namespace reclab {

/// Declarative description of one evaluation experiment.
///
/// JSON schema (optional members marked ?):
///   dataset:    {path, format? = "tuples", kind? = "real"}
///   sample?:    {k, seed?}
///   binarize?:  {min_rating}
///   min_row_count?: integer
///   scheme:     {method? = "split", train? = 0.9, k? = 10, runs? = 1,
///                given? = 3, good_rating?, seed?}
///   algorithms: [{label?, name, params?}]
///   mode?:      "topNList" | "ratings"
///   n?:         [integers], default [1, 3, 5, 10, 15, 20]
///   output?:    directory, default "results"
///   svg?:       bool
/// Relative paths resolve against the config file's directory.
struct ExperimentConfig {
  std::filesystem::path dataset_path;
  CsvFormat format = CsvFormat::tuples;
  DataKind kind = DataKind::real;
  std::optional<Index> sample_k;
  std::uint64_t sample_seed = 0;
  std::optional<double> binarize_min_rating;
  Index min_row_count = 0;
  SchemeOptions scheme;
  std::vector<AlgorithmEntry> algorithms;
  EvaluationMode mode = EvaluationMode::top_n;
  std::vector<Index> n_values{1, 3, 5, 10, 15, 20};
  std::filesystem::path output = "results";
  bool svg = false;

  /// Throws ConfigError for malformed or inconsistent configs and
  /// UnknownAlgorithm for names missing from the registry. Missing seeds
  /// fall back to `default_seed`.
  static ExperimentConfig from_json(const nlohmann::json& j, const std::filesystem::path& base_dir,
                                    std::uint64_t default_seed = 0);
  static ExperimentConfig load(const std::filesystem::path& file, std::uint64_t default_seed = 0);

  /// Resolved configuration, as echoed into the manifest.
  nlohmann::json to_json() const;
};

/// Reads the dataset and applies sampling, binarization and the row floor.
Dataset load_dataset(const ExperimentConfig& config);

struct ExperimentOutcome {
  EvaluationOutput evaluation;
  Index excluded_users = 0;
  std::vector<std::filesystem::path> files;
};

/// Runs the experiment and writes its tables into `config.output`.
/// Per-algorithm result_<label>.csv files sit next to results.csv and
/// avg.csv; curve tables (top-N) or errors.csv (ratings) follow. Timings go
/// only to manifest.json, so every CSV is reproducible byte for byte.
ExperimentOutcome run_experiment(const ExperimentConfig& config);

}  // namespace reclab
