#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bsc/dataset.hpp"
#include "bsc/evolution.hpp"

namespace bsc::cli {

inline constexpr const char* kManifestFormat = "bsc-manifest/1";

struct SweepGrid {
  std::vector<int> population_size;
  std::vector<std::optional<double>> mutation_rate;
  std::vector<double> crossover_rate;
  std::vector<double> mutation_bias;
  std::vector<double> elitism_fraction;
  int max_iter = 20;
  std::vector<std::uint64_t> seeds{0};
};

/// Everything a command needs, parsed from a JSON config (or the config
/// snapshot inside a manifest). Relative paths resolve against the config's
/// directory.
struct RunConfig {
  // data
  std::optional<std::filesystem::path> dataset_path;
  CsvOptions csv;
  std::optional<SyntheticSpec> synthetic;
  CostSpec costs;
  std::uint64_t split_seed = 0;

  // evaluation
  double threshold = 0.75;
  double lambda = 1.0;
  GaConfig ga;
  std::vector<std::uint64_t> seeds{0};

  // oracle and recovery
  std::uint64_t oracle_cap = 1'000'000;
  std::filesystem::path front_file = "oracle_front.csv";
  bool front_file_explicit = false;

  std::optional<double> baseline_threshold;
  SweepGrid sweep;

  /// Normalised config (absolute paths, inline costs, resolved seeds); the
  /// config hash and manifest snapshot derive from it.
  nlohmann::json normalized;

  std::string hash() const;
};

/// Reads a config or manifest file. Errors carry the file name and, for
/// JSON syntax errors, the position.
RunConfig load_config(const std::filesystem::path& path);
RunConfig parse_config(const nlohmann::json& j, const std::filesystem::path& base_dir);

/// Replaces the seed list (and the normalised snapshot).
void override_seeds(RunConfig& config, std::vector<std::uint64_t> seeds);

/// Parses "7", "1,2,3" or "1..50".
std::vector<std::uint64_t> parse_seed_list(const std::string& text);

/// Builds the costed, split dataset described by the config.
CostedDataset load_data(const RunConfig& config);

/// 16 hex digits of FNV-1a over the compact JSON dump.
std::string fnv1a_hex(const std::string& text);

} // namespace bsc::cli
