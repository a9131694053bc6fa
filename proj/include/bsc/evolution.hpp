#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bsc/chromosome.hpp"
#include "bsc/objectives.hpp"
#include "bsc/rng.hpp"

namespace bsc {

struct GaConfig {
  int population_size = 300;
  /// Per-gene mutation probability; unset means 1/n.
  std::optional<double> mutation_rate;
  double crossover_rate = 0.8;
  double elitism_fraction = 0.2;
  /// beta of the beta-binomial mutation law; must exceed alpha = 1.
  double mutation_bias = 2.0;
  double epsilon = 0.01;
  int inc = 0;
  int max_iter = 150;
  /// Halt once the top chromosome has not changed for this many generations.
  int stall_generations = 20;
  /// Upper bound on stage count; unset means min(round(n/2), 10).
  std::optional<int> max_stages;
  std::uint64_t rng_seed = 0;

  /// Copy with every optional filled in for n features; throws ConfigError
  /// on invalid values.
  GaConfig resolved(std::size_t n_features) const;
};

/// min(round(n/2), 10), at least 1.
int default_max_stages(std::size_t n_features);

// --- mutation ---------------------------------------------------------------

/// Beta-binomial(|Q|, 1, beta) probabilities over stage assignments 0..|Q|.
std::vector<double> mutation_pmf(int stage_count, double beta);

/// Probability that one resampled gene opens the new stage |Q|:
/// beta * Gamma(|Q|+1) Gamma(beta) / Gamma(|Q|+beta+1).
double new_stage_probability(int stage_count, double beta);

/// 1 - (1 - rate * p_new)^n.
double stage_increment_probability(int stage_count, double beta, double rate, int n_features);

/// Resamples each gene with probability `rate` from mutation_pmf(|Q|, beta)
/// without compressing. When |Q| already equals max_stages the law is
/// truncated to 0..|Q|-1 and renormalised.
Chromosome mutate_genes(const Chromosome& c, double rate, double beta, int max_stages, Rng& rng);

/// mutate_genes followed by compression.
Chromosome mutate(const Chromosome& c, double rate, double beta, int max_stages, Rng& rng);

// --- recombination ----------------------------------------------------------

/// Maps stage s of a parent with `parent_stages` stages onto a child with
/// `child_stages` stages by relative position.
int map_stage(int s, int parent_stages, int child_stages);

/// With probability 1 - crossover_rate returns a or b by a fair coin;
/// otherwise builds a child gene by gene from randomly chosen parents.
Chromosome recombine(const Chromosome& a, const Chromosome& b, double crossover_rate, Rng& rng);

// --- selection and elitism --------------------------------------------------

/// One roulette-wheel draw, P(i) = fitness[i] / sum(fitness).
std::size_t roulette_select(std::span<const double> fitness, Rng& rng);
std::pair<std::size_t, std::size_t> select_pair(std::span<const double> fitness, Rng& rng);

/// max(round(b * unique), nondominated_unique)
std::size_t elite_count(std::size_t unique_population, double elitism_fraction,
                        std::size_t nondominated_unique);

/// Population size for the next generation given this generation's elite
/// count, the current size, the initial size and the increment.
int next_population_size(std::size_t elite_size, int current, int initial, int inc);

// --- fitness ----------------------------------------------------------------

struct RankedPopulation {
  std::vector<Chromosome> members;
  std::vector<ObjectiveVector> objectives;
  std::vector<int> rank;
  std::vector<double> scalar;  ///< L2 norm of (g1, g2, g3)
  std::vector<double> fitness; ///< gamma^rank * scalar
  double lower_scalar = 0.0;
  double upper_scalar = 0.0;
  double gamma = 1.0;
  int top_rank = 0; ///< t*

  std::size_t size() const noexcept { return members.size(); }
};

/// gamma^rank * scalar with gamma = max(scalar) / min(scalar) + epsilon.
std::vector<double> fitness(std::span<const int> ranks, std::span<const double> scalar,
                            double epsilon);

/// Normalises costs, ranks (ordering cost by raw value, which is equivalent
/// to ordering by inverse cost) and scores a population.
RankedPopulation rank_population(std::vector<Chromosome> members,
                                 std::span<const Measurement> measurements, double epsilon);

/// Member indices sorted by fitness (descending), ties by gene vector.
std::vector<std::size_t> fitness_order(const RankedPopulation& pop);

/// One entry per distinct chromosome, first occurrence in fitness order.
std::vector<std::size_t> unique_in_fitness_order(const RankedPopulation& pop);

// --- initialisation and the main loop ---------------------------------------

/// Mutates [0,...,0] until the result has exactly two stages; duplicates allowed.
std::vector<Chromosome> init_population(std::size_t n_features, const GaConfig& config);

struct Solution {
  Chromosome chromosome;
  ObjectiveVector objectives;
  int rank = 0;
  double fitness = 0.0;
};

struct GenerationRecord {
  int generation = 0;
  int population_target = 0; ///< |G| in force while this generation was built
  std::size_t members = 0;
  std::size_t unique = 0;
  std::size_t nondominated_unique = 0;
  std::size_t elite_size = 0;
  Chromosome top;
  std::vector<Chromosome> unique_members; ///< filled when RunOptions::keep_members
};

enum class HaltReason { MaxIterations, Stalled, FrontFillsPopulation };

const char* to_string(HaltReason reason);

struct RunOptions {
  int threads = 1;
  bool keep_members = false;
};

struct RunResult {
  /// Unique non-dominated members of the final generation, by fitness.
  std::vector<Solution> front;
  std::vector<GenerationRecord> trace;
  HaltReason halt = HaltReason::MaxIterations;
  std::size_t evaluations = 0;
};

/// Runs the evolutionary search until a halting condition holds.
RunResult run(const GaConfig& config, const ObjectiveSource& source, const RunOptions& options = {});

} // namespace bsc
