#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bsc/cli/config.hpp"
#include "bsc/error.hpp"
#include "bsc/objectives.hpp"
#include "bsc/oracle.hpp"
#include "bsc/stage_chain.hpp"

namespace bsc::cli {

/// Raised for configuration and input problems found before any output is
/// written; maps to exit code 2.
class UsageError : public ConfigError {
public:
  using ConfigError::ConfigError;
};

struct CommandOptions {
  std::filesystem::path config;
  std::optional<std::vector<std::uint64_t>> seeds;
  int threads = 0;
  std::filesystem::path out = ".";
  std::string which = "single-stage";
  std::ostream* log = nullptr;
};

/// Mean and 95% Student-t margin of error; the margin is NaN for fewer than
/// two samples.
struct MeanWithMargin {
  double mean = 0.0;
  double margin = 0.0;
};
MeanWithMargin mean_with_margin(std::span<const double> values);

struct TopSolution {
  std::uint64_t seed = 0;
  Chromosome chromosome;
  Measurement validation;
  Measurement test;
};

struct EvolveOutcome {
  int max_stages = 0;
  std::vector<TopSolution> tops;
  MeanWithMargin coverage, accuracy, raw_cost;
  std::vector<std::filesystem::path> front_files;
  std::filesystem::path aggregate_file;
  std::filesystem::path manifest_file;
};
EvolveOutcome cmd_evolve(const CommandOptions& options);

struct OracleOutcome {
  GlobalFront front;
  std::filesystem::path front_file;
  std::string report;
};
OracleOutcome cmd_oracle(const CommandOptions& options);

struct RecoveryOutcome {
  std::size_t front_size = 0;
  std::vector<std::vector<std::size_t>> per_run;
  std::vector<double> mean;
  std::filesystem::path table_file;
};
RecoveryOutcome cmd_recovery(const CommandOptions& options);

enum class BaselineKind { CostOrdered, SingleStage };
BaselineKind parse_baseline_kind(const std::string& name);

/// Cost-ordered: one stage per cost class, cheapest first (needs a
/// class-based schedule). Single-stage: all features in one stage.
StagePlan baseline_plan(const CostedDataset& data, BaselineKind kind);

struct BaselineOutcome {
  StagePlan plan;
  double threshold = 0.0;
  Measurement test;
  std::filesystem::path result_file;
};
BaselineOutcome cmd_baseline(const CommandOptions& options);

struct SweepCandidate {
  int population_size = 0;
  std::optional<double> mutation_rate;
  double crossover_rate = 0.0;
  double mutation_bias = 0.0;
  double elitism_fraction = 0.0;
  double score = 0.0;
};

/// sqrt(g1^2 + g2^2 + (1 - raw_cost / total_cost)^2)
double sweep_score(double coverage, double accuracy, double raw_cost, double total_cost);

/// Grid product in lexicographic order of the parameter tuple.
std::vector<SweepCandidate> sweep_candidates(const SweepGrid& grid);

/// Highest score; ties go to the smaller population, then to the
/// lexicographically smaller parameter tuple.
std::size_t best_candidate(std::span<const SweepCandidate> candidates);

struct SweepOutcome {
  std::vector<SweepCandidate> candidates;
  std::size_t best = 0;
  std::filesystem::path table_file;
  std::filesystem::path best_file;
};
SweepOutcome cmd_sweep(const CommandOptions& options);

/// Parses arguments and dispatches; returns 0 on success, 1 on a runtime
/// failure and 2 on a configuration or usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace bsc::cli
