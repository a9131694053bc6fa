#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "bsc/chromosome.hpp"
#include "bsc/counting.hpp"
#include "bsc/evolution.hpp"
#include "bsc/objectives.hpp"

namespace bsc {

inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

/// Walks every canonical chromosome with 1..k stages exactly once: set
/// partitions in restricted-growth-string order, each crossed with every
/// ordering of its blocks.
class SolutionEnumerator {
public:
  SolutionEnumerator(int n, int k);

  /// Writes the next chromosome into `out`; false once exhausted.
  bool next(Chromosome& out);

private:
  bool advance_partition();

  int n_;
  int k_;
  std::vector<int> rgs_;
  std::vector<int> prefix_max_;
  std::vector<int> order_;
  bool started_ = false;
  bool done_ = false;
};

/// Materialises the enumeration; throws CapExceeded when
/// search_space_size(n, k) exceeds `cap`.
std::vector<Chromosome> enumerate_solutions(int n, int k, std::uint64_t cap = kDefaultEnumerationCap);

struct FrontMember {
  Chromosome chromosome;
  Measurement measurement;
  double inverse_cost = 0.0; ///< normalised by the minimum raw cost over the whole space
};

struct GlobalFront {
  std::vector<FrontMember> solutions;
  int n = 0;
  int k = 0;
  double threshold = 0.0;
  std::string split;
  std::size_t evaluated = 0;

  bool contains(const Chromosome& c) const;
};

/// Evaluates every solution of S(n, k) and keeps the non-dominated ones
/// under (g1, g2, -raw_cost). Members are sorted by chromosome.
GlobalFront global_front(const ObjectiveSource& source, int k, double threshold,
                         const std::string& split_name, int threads = 0,
                         std::uint64_t cap = kDefaultEnumerationCap);

/// X_h: unique members of each recorded generation that lie on the front.
/// Requires a trace recorded with RunOptions::keep_members.
std::vector<std::size_t> track_recovery(const RunResult& run, const GlobalFront& front);

/// Mean over runs per generation. A run that halted early contributes its
/// final value to later generations.
std::vector<double> mean_recovery(const std::vector<std::vector<std::size_t>>& runs);

// --- front files --------------------------------------------------------------

struct FrontRecord {
  Chromosome chromosome;
  double coverage = 0.0;
  double accuracy = 0.0;
  double raw_cost = 0.0;
  double inverse_cost = 0.0;
  int rank = 0;
  double fitness = 0.0;
};

struct FrontFile {
  std::string format = "bsc-front/1";
  std::string config_hash;
  /// Free-form key=value metadata written on the third header line.
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<FrontRecord> records;
};

std::vector<FrontRecord> to_records(const GlobalFront& front);
std::vector<FrontRecord> to_records(const std::vector<Solution>& solutions);

void write_front(const std::filesystem::path& path, const FrontFile& file);
FrontFile read_front(const std::filesystem::path& path);

/// Front rebuilt from a file's records, for recovery tracking.
GlobalFront front_from_file(const FrontFile& file);

} // namespace bsc
