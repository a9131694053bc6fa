#include "bsc/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

#include <CLI11.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "bsc/counting.hpp"
#include "bsc/error.hpp"
#include "bsc/evolution.hpp"

namespace bsc::cli {

using nlohmann::json;

namespace {

struct Prepared {
  RunConfig config;
  CostedDataset data;
  std::string hash;
};

// Everything that can fail because of the config or the input files happens
// here, before the output directory is touched.
Prepared prepare(const CommandOptions& options) {
  try {
    Prepared p{load_config(options.config), {}, {}};
    if (options.seeds) override_seeds(p.config, *options.seeds);
    p.data = load_data(p.config);
    p.hash = p.config.hash();
    return p;
  } catch (const UsageError&) {
    throw;
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

void make_out_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory " + dir.string() + ": " + ec.message());
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// console text; files keep full round-trip precision
std::string brief(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void say(const CommandOptions& o, const std::string& line) {
  if (o.log) *o.log << line << '\n';
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

void write_json(const std::filesystem::path& path, const json& j) {
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

json manifest(const Prepared& p, const std::string& command) {
  return {{"format", kManifestFormat},
          {"command", command},
          {"config_hash", p.hash},
          {"config", p.config.normalized}};
}

int oracle_stage_limit(const RunConfig& config, std::size_t n) {
  const int k = config.ga.max_stages.value_or(default_max_stages(n));
  if (k < 1 || static_cast<std::size_t>(k) > n) {
    throw UsageError("max_stages " + std::to_string(k) + " must lie in [1, " + std::to_string(n) + "]");
  }
  return k;
}

GaConfig resolved_ga(const Prepared& p) {
  try {
    return p.config.ga.resolved(p.data.n_features());
  } catch (const ConfigError& e) {
    throw UsageError(e.what());
  }
}

std::filesystem::path front_path(const RunConfig& config, const CommandOptions& options) {
  return config.front_file_explicit ? config.front_file : options.out / config.front_file;
}

json measurement_json(const Measurement& m) {
  return {{"g1", m.coverage}, {"g2", m.accuracy}, {"raw_cost", m.raw_cost}};
}

std::optional<GlobalFront> load_front_for(const Prepared& p, const CommandOptions& options, int k,
                                          bool required) {
  const auto path = front_path(p.config, options);
  if (!std::filesystem::exists(path)) {
    if (required) throw UsageError("front file not found: " + path.string() + " (run the oracle first)");
    return std::nullopt;
  }
  GlobalFront front;
  try {
    front = front_from_file(read_front(path));
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  if (front.n != static_cast<int>(p.data.n_features()) || front.k != k) {
    throw UsageError(path.string() + ": front was computed for n=" + std::to_string(front.n) +
                     ", k=" + std::to_string(front.k) + " but the config gives n=" +
                     std::to_string(p.data.n_features()) + ", k=" + std::to_string(k));
  }
  return front;
}

} // namespace

MeanWithMargin mean_with_margin(std::span<const double> values) {
  MeanWithMargin r;
  if (values.empty()) return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
  const auto m = static_cast<double>(values.size());
  for (double v : values) r.mean += v;
  r.mean /= m;
  if (values.size() < 2) {
    r.margin = std::numeric_limits<double>::quiet_NaN();
    return r;
  }
  double ss = 0.0;
  for (double v : values) ss += (v - r.mean) * (v - r.mean);
  const double sd = std::sqrt(ss / (m - 1.0));
  const boost::math::students_t dist(m - 1.0);
  r.margin = boost::math::quantile(dist, 0.975) * sd / std::sqrt(m);
  return r;
}

// ---------------------------------------------------------------------------
// evolve

EvolveOutcome cmd_evolve(const CommandOptions& options) {
  const Prepared p = prepare(options);
  const GaConfig base = resolved_ga(p);
  const auto front = load_front_for(p, options, *base.max_stages, false);
  make_out_dir(options.out);

  const EvaluatorSettings settings{p.config.threshold, p.config.lambda, SplitPart::Validation};
  const ChainEvaluator evaluator(p.data, settings);
  const ChainEvaluator tester = evaluator.with({p.config.threshold, p.config.lambda, SplitPart::Test});

  EvolveOutcome outcome;
  outcome.max_stages = *base.max_stages;
  json m = manifest(p, "evolve");
  m["max_stages"] = outcome.max_stages;
  m["runs"] = json::array();

  for (auto seed : p.config.seeds) {
    GaConfig cfg = base;
    cfg.rng_seed = seed;
    const auto start = std::chrono::steady_clock::now();
    const RunResult result = run(cfg, evaluator, {options.threads, front.has_value()});
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const auto file = options.out / ("front_seed" + std::to_string(seed) + ".csv");
    FrontFile ff;
    ff.config_hash = p.hash;
    ff.metadata = {{"n", std::to_string(p.data.n_features())},
                   {"k", std::to_string(outcome.max_stages)},
                   {"threshold", num(p.config.threshold)},
                   {"split", "validation"},
                   {"seed", std::to_string(seed)},
                   {"generations", std::to_string(result.trace.size())},
                   {"halt", to_string(result.halt)},
                   {"evaluations", std::to_string(result.evaluations)}};
    ff.records = to_records(result.front);
    write_front(file, ff);
    outcome.front_files.push_back(file);

    const auto& top = result.front.front();
    TopSolution t{seed, top.chromosome, {}, tester.evaluate(top.chromosome)};
    t.validation.coverage = top.objectives.coverage;
    t.validation.accuracy = top.objectives.accuracy;
    t.validation.raw_cost = top.objectives.raw_cost;
    outcome.tops.push_back(t);

    json r = {{"seed", seed},
              {"front_file", file.filename().string()},
              {"generations", result.trace.size()},
              {"halt", to_string(result.halt)},
              {"evaluations", result.evaluations},
              {"wall_seconds", seconds},
              {"top", {{"chromosome", top.chromosome.to_string()}, {"test", measurement_json(t.test)}}}};
    if (front) r["recovery"] = track_recovery(result, *front);
    m["runs"].push_back(std::move(r));
    say(options, "seed " + std::to_string(seed) + ": top " + top.chromosome.to_string() +
                     " test g1=" + brief(t.test.coverage) + " g2=" + brief(t.test.accuracy) +
                     " cost=" + brief(t.test.raw_cost) + " (" + to_string(result.halt) + ")");
  }

  std::vector<double> g1, g2, g3;
  for (const auto& t : outcome.tops) {
    g1.push_back(t.test.coverage);
    g2.push_back(t.test.accuracy);
    g3.push_back(t.test.raw_cost);
  }
  outcome.coverage = mean_with_margin(g1);
  outcome.accuracy = mean_with_margin(g2);
  outcome.raw_cost = mean_with_margin(g3);

  outcome.aggregate_file = options.out / "aggregate.csv";
  {
    auto out = open_out(outcome.aggregate_file);
    out << "# bsc-aggregate/1\n# config_hash=" << p.hash << "\n# split=test statistic=top-fitness solution per seed\n";
    out << "runs,mean_g1,margin_g1,mean_g2,margin_g2,mean_raw_cost,margin_raw_cost\n";
    out << outcome.tops.size() << ',' << num(outcome.coverage.mean) << ',' << num(outcome.coverage.margin)
        << ',' << num(outcome.accuracy.mean) << ',' << num(outcome.accuracy.margin) << ','
        << num(outcome.raw_cost.mean) << ',' << num(outcome.raw_cost.margin) << '\n';
  }
  {
    auto out = open_out(options.out / "top_solutions.csv");
    out << "# bsc-top/1\n# config_hash=" << p.hash << "\n";
    out << "seed,chromosome,val_g1,val_g2,val_raw_cost,test_g1,test_g2,test_raw_cost\n";
    for (const auto& t : outcome.tops) {
      out << t.seed << ',' << t.chromosome.to_string() << ',' << num(t.validation.coverage) << ','
          << num(t.validation.accuracy) << ',' << num(t.validation.raw_cost) << ','
          << num(t.test.coverage) << ',' << num(t.test.accuracy) << ',' << num(t.test.raw_cost) << '\n';
    }
  }
  m["aggregate"] = {{"runs", outcome.tops.size()},
                    {"g1", {outcome.coverage.mean, outcome.coverage.margin}},
                    {"g2", {outcome.accuracy.mean, outcome.accuracy.margin}},
                    {"raw_cost", {outcome.raw_cost.mean, outcome.raw_cost.margin}}};
  outcome.manifest_file = options.out / "manifest.json";
  write_json(outcome.manifest_file, m);
  return outcome;
}

// ---------------------------------------------------------------------------
// oracle

OracleOutcome cmd_oracle(const CommandOptions& options) {
  const Prepared p = prepare(options);
  const std::size_t n = p.data.n_features();
  const int k = oracle_stage_limit(p.config, n);
  const BigInt size = search_space_size(static_cast<int>(n), k);
  if (size > BigInt(p.config.oracle_cap)) {
    throw CapExceeded("search space for n=" + std::to_string(n) + ", k=" + std::to_string(k) +
                          " holds " + size.str() + " solutions, above the cap of " +
                          std::to_string(p.config.oracle_cap),
                      size.str());
  }
  OracleOutcome outcome;
  outcome.front_file = front_path(p.config, options);
  make_out_dir(options.out);
  if (outcome.front_file.has_parent_path()) make_out_dir(outcome.front_file.parent_path());

  const ChainEvaluator evaluator(p.data, {p.config.threshold, p.config.lambda, SplitPart::Validation});
  outcome.front = global_front(evaluator, k, p.config.threshold, "validation", options.threads,
                               p.config.oracle_cap);

  FrontFile ff;
  ff.config_hash = p.hash;
  ff.metadata = {{"n", std::to_string(n)},
                 {"k", std::to_string(k)},
                 {"threshold", num(p.config.threshold)},
                 {"split", "validation"},
                 {"evaluated", std::to_string(outcome.front.evaluated)},
                 {"front_size", std::to_string(outcome.front.solutions.size())}};
  ff.records = to_records(outcome.front);
  write_front(outcome.front_file, ff);

  outcome.report = "evaluated " + std::to_string(outcome.front.evaluated) + " solutions (n=" +
                   std::to_string(n) + ", k=" + std::to_string(k) + "); global front holds " +
                   std::to_string(outcome.front.solutions.size()) + " members";
  json m = manifest(p, "oracle");
  m["max_stages"] = k;
  m["evaluated"] = outcome.front.evaluated;
  m["front_size"] = outcome.front.solutions.size();
  m["front_file"] = outcome.front_file.string();
  write_json(options.out / "manifest.json", m);
  say(options, outcome.report);
  return outcome;
}

// ---------------------------------------------------------------------------
// recovery

RecoveryOutcome cmd_recovery(const CommandOptions& options) {
  const Prepared p = prepare(options);
  const GaConfig base = resolved_ga(p);
  const GlobalFront front = *load_front_for(p, options, *base.max_stages, true);
  make_out_dir(options.out);

  const ChainEvaluator evaluator(p.data, {p.config.threshold, p.config.lambda, SplitPart::Validation});
  RecoveryOutcome outcome;
  outcome.front_size = front.solutions.size();
  json m = manifest(p, "recovery");
  m["front_size"] = outcome.front_size;
  m["runs"] = json::array();
  for (auto seed : p.config.seeds) {
    GaConfig cfg = base;
    cfg.rng_seed = seed;
    const auto start = std::chrono::steady_clock::now();
    const RunResult result = run(cfg, evaluator, {options.threads, true});
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    outcome.per_run.push_back(track_recovery(result, front));
    m["runs"].push_back({{"seed", seed},
                         {"generations", result.trace.size()},
                         {"halt", to_string(result.halt)},
                         {"wall_seconds", seconds},
                         {"recovery", outcome.per_run.back()}});
    say(options, "seed " + std::to_string(seed) + ": recovered " +
                     std::to_string(outcome.per_run.back().back()) + " of " +
                     std::to_string(outcome.front_size));
  }
  outcome.mean = mean_recovery(outcome.per_run);

  outcome.table_file = options.out / "recovery.csv";
  auto out = open_out(outcome.table_file);
  out << "# bsc-recovery/1\n# config_hash=" << p.hash << "\n# front_size=" << outcome.front_size
      << " runs=" << outcome.per_run.size() << " halted runs repeat their final count\n";
  out << "h,mean";
  for (auto seed : p.config.seeds) out << ",seed_" << seed;
  out << '\n';
  for (std::size_t h = 0; h < outcome.mean.size(); ++h) {
    out << h << ',' << num(outcome.mean[h]);
    for (const auto& r : outcome.per_run) out << ',' << r[std::min(h, r.size() - 1)];
    out << '\n';
  }
  write_json(options.out / "manifest.json", m);
  return outcome;
}

// ---------------------------------------------------------------------------
// baseline

BaselineKind parse_baseline_kind(const std::string& name) {
  if (name == "cost-ordered" || name == "co-t") return BaselineKind::CostOrdered;
  if (name == "single-stage") return BaselineKind::SingleStage;
  throw UsageError("unknown baseline '" + name + "' (expected cost-ordered or single-stage)");
}

StagePlan baseline_plan(const CostedDataset& data, BaselineKind kind) {
  const std::size_t n = data.n_features();
  if (kind == BaselineKind::SingleStage) {
    std::vector<int> all(n);
    for (std::size_t f = 0; f < n; ++f) all[f] = static_cast<int>(f);
    return StagePlan({all}, n);
  }
  if (!data.schedule.class_based()) {
    throw UsageError("the cost-ordered baseline needs a class-based cost schedule");
  }
  std::map<int, std::vector<int>> by_class;
  const auto& classes = data.schedule.classes();
  for (std::size_t f = 0; f < n; ++f) by_class[classes[f]].push_back(static_cast<int>(f));
  std::vector<std::vector<int>> stages;
  for (auto& [cls, features] : by_class) stages.push_back(std::move(features));
  return StagePlan(std::move(stages), n);
}

BaselineOutcome cmd_baseline(const CommandOptions& options) {
  const BaselineKind kind = parse_baseline_kind(options.which);
  const Prepared p = prepare(options);
  const double threshold = p.config.baseline_threshold.value_or(p.config.threshold);
  BaselineOutcome outcome{baseline_plan(p.data, kind), threshold, {}, {}};
  make_out_dir(options.out);

  const ClassifierChain chain = train_chain(outcome.plan, p.data, p.config.lambda, threshold);
  outcome.test = measure(chain, p.data, SplitPart::Test);

  std::vector<Gene> genes(p.data.n_features());
  for (std::size_t s = 0; s < outcome.plan.size(); ++s) {
    for (int f : outcome.plan.stages()[s]) genes[static_cast<std::size_t>(f)] = static_cast<Gene>(s);
  }
  const std::string name = kind == BaselineKind::CostOrdered ? "cost-ordered" : "single-stage";
  outcome.result_file = options.out / ("baseline_" + name + ".csv");
  auto out = open_out(outcome.result_file);
  out << "# bsc-baseline/1\n# config_hash=" << p.hash << "\n# split=test\n";
  out << "baseline,chromosome,threshold,g1,g2,raw_cost\n";
  out << name << ',' << Chromosome(genes).to_string() << ',' << num(threshold) << ','
      << num(outcome.test.coverage) << ',' << num(outcome.test.accuracy) << ','
      << num(outcome.test.raw_cost) << '\n';
  const std::size_t stages = outcome.plan.size();
  say(options, name + " baseline (" + std::to_string(stages) + (stages == 1 ? " stage" : " stages") + "): test g1=" +
                   brief(outcome.test.coverage) + " g2=" + brief(outcome.test.accuracy) +
                   " cost=" + brief(outcome.test.raw_cost));
  return outcome;
}

// ---------------------------------------------------------------------------
// sweep

double sweep_score(double coverage, double accuracy, double raw_cost, double total_cost) {
  if (!(total_cost > 0.0)) throw DomainError("total feature cost must be positive");
  const double saving = 1.0 - raw_cost / total_cost;
  return std::sqrt(coverage * coverage + accuracy * accuracy + saving * saving);
}

std::vector<SweepCandidate> sweep_candidates(const SweepGrid& grid) {
  std::vector<SweepCandidate> out;
  for (int pop : grid.population_size)
    for (const auto& rate : grid.mutation_rate)
      for (double cross : grid.crossover_rate)
        for (double bias : grid.mutation_bias)
          for (double elite : grid.elitism_fraction) out.push_back({pop, rate, cross, bias, elite, 0.0});
  if (out.empty()) throw UsageError("sweep grid is empty");
  std::sort(out.begin(), out.end(), [](const SweepCandidate& a, const SweepCandidate& b) {
    return std::tie(a.population_size, a.mutation_rate, a.crossover_rate, a.mutation_bias, a.elitism_fraction) <
           std::tie(b.population_size, b.mutation_rate, b.crossover_rate, b.mutation_bias, b.elitism_fraction);
  });
  return out;
}

std::size_t best_candidate(std::span<const SweepCandidate> candidates) {
  if (candidates.empty()) throw UsageError("sweep grid is empty");
  auto key = [](const SweepCandidate& c) {
    return std::tie(c.population_size, c.mutation_rate, c.crossover_rate, c.mutation_bias, c.elitism_fraction);
  };
  std::size_t best = 0;
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const auto& c = candidates[i];
    const auto& b = candidates[best];
    if (c.score > b.score || (c.score == b.score && key(c) < key(b))) best = i;
  }
  return best;
}

SweepOutcome cmd_sweep(const CommandOptions& options) {
  const Prepared p = prepare(options);
  SweepOutcome outcome;
  outcome.candidates = sweep_candidates(p.config.sweep);
  for (const auto& c : outcome.candidates) {
    GaConfig cfg = p.config.ga;
    cfg.population_size = c.population_size;
    cfg.mutation_rate = c.mutation_rate;
    cfg.crossover_rate = c.crossover_rate;
    cfg.mutation_bias = c.mutation_bias;
    cfg.elitism_fraction = c.elitism_fraction;
    cfg.max_iter = p.config.sweep.max_iter;
    try {
      (void)cfg.resolved(p.data.n_features());
    } catch (const ConfigError& e) {
      throw UsageError(std::string("sweep grid: ") + e.what());
    }
  }
  make_out_dir(options.out);

  const ChainEvaluator evaluator(p.data, {p.config.threshold, p.config.lambda, SplitPart::Validation});
  const double total = p.data.total_cost();
  for (auto& c : outcome.candidates) {
    GaConfig cfg = p.config.ga;
    cfg.population_size = c.population_size;
    cfg.mutation_rate = c.mutation_rate;
    cfg.crossover_rate = c.crossover_rate;
    cfg.mutation_bias = c.mutation_bias;
    cfg.elitism_fraction = c.elitism_fraction;
    cfg.max_iter = p.config.sweep.max_iter;
    double sum = 0.0;
    for (auto seed : p.config.sweep.seeds) {
      cfg.rng_seed = seed;
      const RunResult result = run(cfg.resolved(p.data.n_features()), evaluator, {options.threads, false});
      const auto& top = result.front.front().objectives;
      sum += sweep_score(top.coverage, top.accuracy, top.raw_cost, total);
    }
    c.score = sum / static_cast<double>(p.config.sweep.seeds.size());
  }
  outcome.best = best_candidate(outcome.candidates);

  auto rate_text = [](const std::optional<double>& r) { return r ? num(*r) : std::string("default"); };
  outcome.table_file = options.out / "sweep.csv";
  {
    auto out = open_out(outcome.table_file);
    out << "# bsc-sweep/1\n# config_hash=" << p.hash << "\n# split=validation\n";
    out << "population_size,mutation_rate,crossover_rate,mutation_bias,elitism_fraction,score\n";
    for (const auto& c : outcome.candidates) {
      out << c.population_size << ',' << rate_text(c.mutation_rate) << ',' << num(c.crossover_rate)
          << ',' << num(c.mutation_bias) << ',' << num(c.elitism_fraction) << ',' << num(c.score) << '\n';
    }
  }
  const auto& b = outcome.candidates[outcome.best];
  outcome.best_file = options.out / "best_params.json";
  write_json(outcome.best_file,
             {{"format", "bsc-sweep/1"},
              {"config_hash", p.hash},
              {"ga",
               {{"population_size", b.population_size},
                {"mutation_rate", b.mutation_rate ? json(*b.mutation_rate) : json(nullptr)},
                {"crossover_rate", b.crossover_rate},
                {"mutation_bias", b.mutation_bias},
                {"elitism_fraction", b.elitism_fraction}}},
              {"score", b.score}});
  say(options, "best of " + std::to_string(outcome.candidates.size()) + ": |G|=" +
                   std::to_string(b.population_size) + " m=" + rate_text(b.mutation_rate) +
                   " r=" + brief(b.crossover_rate) + " beta=" + brief(b.mutation_bias) +
                   " b=" + brief(b.elitism_fraction) + " score=" + brief(b.score));
  return outcome;
}

// ---------------------------------------------------------------------------
// argument handling

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Evolves budgeted sequential classifiers with reject options", "bsc-evolve"};
  app.require_subcommand(1);

  CommandOptions options;
  options.log = &out;
  std::string seed_text;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", options.config, "JSON config or manifest")->required();
    sub->add_option("--seed", seed_text, "seed, list (1,2,3) or range (1..50); overrides the config");
    sub->add_option("--threads", options.threads, "worker cap; 1 runs the serial reference path")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--out", options.out, "output directory");
  };
  auto* evolve = app.add_subcommand("evolve", "run the evolutionary search for every seed");
  auto* oracle = app.add_subcommand("oracle", "enumerate every solution and store the global front");
  auto* recovery = app.add_subcommand("recovery", "track recovery of the global front per generation");
  auto* baseline = app.add_subcommand("baseline", "train and score a heuristic chain on the test split");
  auto* sweep = app.add_subcommand("sweep", "grid search over search parameters");
  for (auto* sub : {evolve, oracle, recovery, baseline, sweep}) add_common(sub);
  baseline->add_option("--which", options.which, "cost-ordered (alias co-t) | single-stage")
      ->check(CLI::IsMember({"cost-ordered", "co-t", "single-stage"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (!seed_text.empty()) options.seeds = parse_seed_list(seed_text);
    if (evolve->parsed()) {
      const auto r = cmd_evolve(options);
      out << "aggregate over " << r.tops.size() << " runs: g1=" << brief(r.coverage.mean) << " +/- "
          << brief(r.coverage.margin) << ", g2=" << brief(r.accuracy.mean) << " +/- " << brief(r.accuracy.margin)
          << ", cost=" << brief(r.raw_cost.mean) << " +/- " << brief(r.raw_cost.margin) << '\n';
    } else if (oracle->parsed()) {
      const auto r = cmd_oracle(options);
      out << "front written to " << r.front_file.string() << '\n';
    } else if (recovery->parsed()) {
      const auto r = cmd_recovery(options);
      out << "recovery table written to " << r.table_file.string() << '\n';
    } else if (baseline->parsed()) {
      cmd_baseline(options);
    } else if (sweep->parsed()) {
      cmd_sweep(options);
    }
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

} // namespace bsc::cli
