#include "bsc/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "bsc/error.hpp"
#include "bsc/pareto.hpp"

namespace bsc {

int default_max_stages(std::size_t n_features) {
  const auto half = static_cast<int>(std::lround(static_cast<double>(n_features) / 2.0));
  return std::max(1, std::min(half, 10));
}

GaConfig GaConfig::resolved(std::size_t n_features) const {
  GaConfig c = *this;
  if (n_features < 2) throw ConfigError("evolution needs at least two features");
  if (!c.mutation_rate) c.mutation_rate = 1.0 / static_cast<double>(n_features);
  if (!c.max_stages) c.max_stages = default_max_stages(n_features);
  if (c.population_size < 1) throw ConfigError("population_size must be positive");
  if (!(*c.mutation_rate > 0.0 && *c.mutation_rate <= 1.0)) {
    throw ConfigError("mutation_rate must lie in (0, 1]");
  }
  if (!(c.crossover_rate >= 0.0 && c.crossover_rate <= 1.0)) {
    throw ConfigError("crossover_rate must lie in [0, 1]");
  }
  if (!(c.elitism_fraction >= 0.0 && c.elitism_fraction <= 1.0)) {
    throw ConfigError("elitism_fraction must lie in [0, 1]");
  }
  if (!(c.mutation_bias > 1.0)) throw ConfigError("mutation_bias must exceed 1");
  if (!(c.epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  if (c.inc < 0) throw ConfigError("inc must be non-negative");
  if (c.max_iter < 0) throw ConfigError("max_iter must be non-negative");
  if (c.stall_generations < 1) throw ConfigError("stall_generations must be positive");
  if (*c.max_stages < 2 || static_cast<std::size_t>(*c.max_stages) > n_features) {
    throw ConfigError("max_stages must lie in [2, n] for the evolutionary search");
  }
  return c;
}

// ---------------------------------------------------------------------------
// Mutation

namespace {

double log_beta(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }

double log_choose(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

} // namespace

std::vector<double> mutation_pmf(int stage_count, double beta) {
  if (stage_count < 1) throw DomainError("mutation law needs a positive stage count");
  if (!(beta > 0.0)) throw DomainError("mutation bias must be positive");
  std::vector<double> pmf;
  const double norm = log_beta(1.0, beta);
  for (int j = 0; j <= stage_count; ++j) {
    pmf.push_back(std::exp(log_choose(stage_count, j) + log_beta(j + 1.0, stage_count - j + beta) - norm));
  }
  return pmf;
}

double new_stage_probability(int stage_count, double beta) {
  return beta * std::exp(std::lgamma(stage_count + 1.0) + std::lgamma(beta) -
                         std::lgamma(stage_count + beta + 1.0));
}

double stage_increment_probability(int stage_count, double beta, double rate, int n_features) {
  return 1.0 - std::pow(1.0 - rate * new_stage_probability(stage_count, beta), n_features);
}

Chromosome mutate_genes(const Chromosome& c, double rate, double beta, int max_stages, Rng& rng) {
  const int stages = stage_count(c);
  auto pmf = mutation_pmf(stages, beta);
  if (stages >= max_stages) pmf.resize(static_cast<std::size_t>(std::max(max_stages, 1)));
  std::discrete_distribution<int> law(pmf.begin(), pmf.end());
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Gene> genes = c.genes();
  for (auto& g : genes) {
    if (unit(rng) < rate) g = law(rng);
  }
  return Chromosome(std::move(genes));
}

Chromosome mutate(const Chromosome& c, double rate, double beta, int max_stages, Rng& rng) {
  return compress(mutate_genes(c, rate, beta, max_stages, rng));
}

// ---------------------------------------------------------------------------
// Recombination

int map_stage(int s, int parent_stages, int child_stages) {
  const double relative = static_cast<double>(s + 1) / static_cast<double>(parent_stages);
  const auto mapped = static_cast<int>(std::lround(relative * child_stages)) - 1;
  return std::clamp(mapped, 0, child_stages - 1);
}

Chromosome recombine(const Chromosome& a, const Chromosome& b, double crossover_rate, Rng& rng) {
  if (a.size() != b.size()) throw InvalidChromosome("parents differ in length");
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::bernoulli_distribution coin(0.5);
  if (!(unit(rng) < crossover_rate)) return coin(rng) ? a : b;

  const int stages_a = stage_count(a);
  const int stages_b = stage_count(b);
  const int options[3] = {stages_a, stages_b,
                          static_cast<int>(std::lround((stages_a + stages_b) / 2.0))};
  const int child_stages = options[std::uniform_int_distribution<int>(0, 2)(rng)];

  std::vector<Gene> genes(a.size());
  for (std::size_t i = 0; i < genes.size(); ++i) {
    const bool from_a = coin(rng);
    const Chromosome& parent = from_a ? a : b;
    genes[i] = map_stage(parent[i], from_a ? stages_a : stages_b, child_stages);
  }
  return compress(Chromosome(std::move(genes)));
}

// ---------------------------------------------------------------------------
// Selection and elitism

std::size_t roulette_select(std::span<const double> fitness, Rng& rng) {
  if (fitness.empty()) throw DomainError("cannot select from an empty population");
  const double total = std::accumulate(fitness.begin(), fitness.end(), 0.0);
  if (!(total > 0.0)) throw DomainError("roulette selection needs positive total fitness");
  const double u = std::uniform_real_distribution<double>(0.0, total)(rng);
  double running = 0.0;
  for (std::size_t i = 0; i < fitness.size(); ++i) {
    running += fitness[i];
    if (u < running) return i;
  }
  return fitness.size() - 1;
}

std::pair<std::size_t, std::size_t> select_pair(std::span<const double> fitness, Rng& rng) {
  const auto first = roulette_select(fitness, rng);
  return {first, roulette_select(fitness, rng)};
}

std::size_t elite_count(std::size_t unique_population, double elitism_fraction,
                        std::size_t nondominated_unique) {
  const auto share = static_cast<std::size_t>(
      std::llround(elitism_fraction * static_cast<double>(unique_population)));
  return std::max(share, nondominated_unique);
}

int next_population_size(std::size_t elite_size, int current, int initial, int inc) {
  const auto elite = static_cast<long long>(elite_size);
  int size = current;
  if (elite == size) size += inc;
  if (elite < static_cast<long long>(size) - inc && size > initial) size -= inc;
  return size;
}

// ---------------------------------------------------------------------------
// Fitness

std::vector<double> fitness(std::span<const int> ranks, std::span<const double> scalar,
                            double epsilon) {
  if (ranks.size() != scalar.size()) throw DomainError("rank and scalar counts differ");
  if (scalar.empty()) return {};
  const auto [lo, hi] = std::minmax_element(scalar.begin(), scalar.end());
  if (!(*lo > 0.0)) throw Error("internal invariant violated: aggregate objective must be positive");
  const double gamma = *hi / *lo + epsilon;
  std::vector<double> f(scalar.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::pow(gamma, ranks[i]) * scalar[i];
  return f;
}

RankedPopulation rank_population(std::vector<Chromosome> members,
                                 std::span<const Measurement> measurements, double epsilon) {
  if (members.size() != measurements.size() || members.empty()) {
    throw DomainError("ranking needs one measurement per member");
  }
  RankedPopulation pop;
  pop.members = std::move(members);
  std::vector<double> raw;
  for (const auto& m : measurements) raw.push_back(m.raw_cost);
  const auto inverse = normalize_costs(raw);

  std::vector<Objectives3> points;
  for (std::size_t i = 0; i < measurements.size(); ++i) {
    const auto& m = measurements[i];
    pop.objectives.push_back({m.coverage, m.accuracy, m.raw_cost, inverse[i]});
    points.push_back({m.coverage, m.accuracy, -m.raw_cost});
    pop.scalar.push_back(std::sqrt(m.coverage * m.coverage + m.accuracy * m.accuracy +
                                   inverse[i] * inverse[i]));
  }
  pop.rank = pareto_rank(points);
  pop.top_rank = *std::max_element(pop.rank.begin(), pop.rank.end());
  pop.fitness = fitness(pop.rank, pop.scalar, epsilon);
  const auto [lo, hi] = std::minmax_element(pop.scalar.begin(), pop.scalar.end());
  pop.lower_scalar = *lo;
  pop.upper_scalar = *hi;
  pop.gamma = *hi / *lo + epsilon;
  return pop;
}

std::vector<std::size_t> fitness_order(const RankedPopulation& pop) {
  std::vector<std::size_t> order(pop.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (pop.fitness[a] != pop.fitness[b]) return pop.fitness[a] > pop.fitness[b];
    return pop.members[a] < pop.members[b];
  });
  return order;
}

std::vector<std::size_t> unique_in_fitness_order(const RankedPopulation& pop) {
  std::unordered_set<Chromosome, ChromosomeHash> seen;
  std::vector<std::size_t> out;
  for (auto i : fitness_order(pop)) {
    if (seen.insert(pop.members[i]).second) out.push_back(i);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Main loop

const char* to_string(HaltReason reason) {
  switch (reason) {
  case HaltReason::MaxIterations: return "max_iter";
  case HaltReason::Stalled: return "stalled";
  case HaltReason::FrontFillsPopulation: return "front_fills_population";
  }
  return "?";
}

std::vector<Chromosome> init_population(std::size_t n_features, const GaConfig& config) {
  const GaConfig cfg = config.resolved(n_features);
  const Chromosome base = Chromosome::one_stage(n_features);
  std::vector<Chromosome> pop;
  pop.reserve(static_cast<std::size_t>(cfg.population_size));
  for (int i = 0; i < cfg.population_size; ++i) {
    Rng rng = derive_stream(cfg.rng_seed, 0, static_cast<std::uint64_t>(i));
    Chromosome c;
    do {
      c = mutate(base, *cfg.mutation_rate, cfg.mutation_bias, *cfg.max_stages, rng);
    } while (stage_count(c) != 2);
    pop.push_back(std::move(c));
  }
  return pop;
}

RunResult run(const GaConfig& config, const ObjectiveSource& source, const RunOptions& options) {
  const std::size_t n = source.n_features();
  const GaConfig cfg = config.resolved(n);
  const double rate = *cfg.mutation_rate;
  const int max_stages = *cfg.max_stages;

  MemoizedObjectives memo(source);
  std::vector<Chromosome> population = init_population(n, cfg);
  const int initial_size = cfg.population_size;
  int target = initial_size;
  int stall = 0;
  Chromosome previous_top;
  RunResult result;

  for (int h = 0;; ++h) {
    const auto measurements = memo.evaluate_all(population, options.threads);
    const RankedPopulation ranked = rank_population(population, measurements, cfg.epsilon);
    const auto unique = unique_in_fitness_order(ranked);
    const auto nondominated = static_cast<std::size_t>(std::count_if(
        unique.begin(), unique.end(), [&](std::size_t i) { return ranked.rank[i] == ranked.top_rank; }));
    const std::size_t elite_size =
        std::min(elite_count(unique.size(), cfg.elitism_fraction, nondominated), unique.size());

    const Chromosome& top = ranked.members[unique.front()];
    stall = (h > 0 && top == previous_top) ? stall + 1 : 0;
    previous_top = top;

    GenerationRecord record;
    record.generation = h;
    record.population_target = target;
    record.members = population.size();
    record.unique = unique.size();
    record.nondominated_unique = nondominated;
    record.elite_size = elite_size;
    record.top = top;
    if (options.keep_members) {
      for (auto i : unique) record.unique_members.push_back(ranked.members[i]);
    }
    result.trace.push_back(std::move(record));

    std::optional<HaltReason> halt;
    if (h >= cfg.max_iter) {
      halt = HaltReason::MaxIterations;
    } else if (stall >= cfg.stall_generations) {
      halt = HaltReason::Stalled;
    } else if (cfg.inc == 0 && elite_size == static_cast<std::size_t>(target)) {
      halt = HaltReason::FrontFillsPopulation;
    }
    if (halt) {
      result.halt = *halt;
      for (auto i : unique) {
        if (ranked.rank[i] != ranked.top_rank) continue;
        result.front.push_back({ranked.members[i], ranked.objectives[i], ranked.rank[i], ranked.fitness[i]});
      }
      result.evaluations = memo.evaluations();
      return result;
    }

    std::vector<Chromosome> next;
    next.reserve(static_cast<std::size_t>(target + cfg.inc));
    for (std::size_t e = 0; e < elite_size; ++e) next.push_back(ranked.members[unique[e]]);
    target = next_population_size(elite_size, target, initial_size, cfg.inc);

    std::uint64_t slot = 0;
    while (next.size() < static_cast<std::size_t>(target)) {
      Rng rng = derive_stream(cfg.rng_seed, static_cast<std::uint64_t>(h) + 1, slot++);
      const auto [pa, pb] = select_pair(ranked.fitness, rng);
      Chromosome child = recombine(ranked.members[pa], ranked.members[pb], cfg.crossover_rate, rng);
      next.push_back(mutate(child, rate, cfg.mutation_bias, max_stages, rng));
    }
    population = std::move(next);
  }
}

} // namespace bsc
