#pragma once

#include "xgsc/corpus.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace xgsc {

enum class Route { direct_glove, direct_tvs, spectral_L, spectral_N, spectral_R, gower_K, gower_B };

std::string_view to_string(Route route);
Route parse_route(std::string_view name);

enum class ImpactChoice { automatic, cardinality, volume };
enum class ClustererChoice { automatic, standard, spherical };

struct PipelineConfig {
  std::string name;
  std::filesystem::path corpus_path;
  std::optional<CorpusFormat> corpus_format;
  /// Absent: documents live in the term vector space.
  std::optional<std::filesystem::path> vectors_path;
  WeightScheme weight_scheme = WeightScheme::tf;
  Route route = Route::gower_K;
  std::size_t k = 2;
  /// Embedding dimension for spectral and Gower routes.
  std::optional<std::size_t> m;
  /// Base seed; restarts use seed, seed + 1, ...
  std::uint64_t seed = 0;
  std::size_t restarts = 10;
  std::size_t max_iter = 300;
  double tol = 1e-9;
  bool shift_negative = false;
  std::filesystem::path output_dir = "xgsc_output";
  ImpactChoice impact = ImpactChoice::automatic;
  ClustererChoice clusterer = ClustererChoice::automatic;
  std::size_t top_n = 50;
  std::size_t equivalence_trials = 50;
  double idf_log_base = 2.718281828459045;
  bool drop_urls = true;
  bool macro_f1 = false;
};

/// Parses a JSON config. Relative paths resolve against `base_dir`.
PipelineConfig parse_pipeline_config(const std::string& json_text,
                                     const std::filesystem::path& base_dir);
PipelineConfig load_pipeline_config(const std::filesystem::path& path);

struct RunOptions {
  /// Stop after writing the equivalence report.
  bool verify_only = false;
};

struct RunSummary {
  std::string name;
  int exit_code = 0;
  std::string error;
  Route route = Route::gower_K;
  std::string space;
  WeightScheme weight_scheme = WeightScheme::tfidf;
  std::optional<std::size_t> m;
  std::size_t k = 0;
  std::size_t documents = 0;
  std::optional<double> f_measure;
  std::optional<double> macro_f1;
  std::optional<double> error_pct;
  std::optional<double> objective;
  bool equivalence_passed = false;
};

/// Runs corpus -> embedding -> graph -> clustering -> explanation ->
/// evaluation and writes every report into config.output_dir. Exit codes:
/// 0 success, 1 input or module error, 2 equivalence check failure.
RunSummary run_pipeline(const PipelineConfig& config, const RunOptions& options = {});

/// Sorted *.json files of a directory.
std::vector<std::filesystem::path> list_config_files(const std::filesystem::path& dir);

struct GridResult {
  std::vector<RunSummary> rows;
  int exit_code = 0;
};

/// Runs every config and writes grid_table.csv and grid_table.txt into
/// `output_dir`. The exit code is the largest of the individual runs.
GridResult run_grid(const std::vector<PipelineConfig>& configs,
                    const std::filesystem::path& output_dir, const RunOptions& options = {});

}  // namespace xgsc
