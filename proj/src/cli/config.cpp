#include "bsc/cli/config.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "bsc/error.hpp"

namespace bsc::cli {

using nlohmann::json;

namespace {

void only_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  const std::set<std::string> known(allowed.begin(), allowed.end());
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

template <class T>
T get(const json& j, const char* key, const std::string& where, T fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + "." + key + " has the wrong type");
  }
}

std::filesystem::path absolute_from(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  if (path.is_relative()) path = base / path;
  return path.lexically_normal();
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

SyntheticSpec parse_synthetic(const json& j) {
  const std::string where = "synthetic";
  only_keys(j, where,
            {"n_features", "n_informative", "n_records", "class_sep", "label_noise",
             "clusters_per_class", "n_classes", "class_balance", "seed"});
  SyntheticSpec s;
  s.n_features = get(j, "n_features", where, s.n_features);
  s.n_informative = get(j, "n_informative", where, s.n_informative);
  s.n_records = get(j, "n_records", where, s.n_records);
  s.class_sep = get(j, "class_sep", where, s.class_sep);
  s.label_noise_fraction = get(j, "label_noise", where, s.label_noise_fraction);
  s.clusters_per_class = get(j, "clusters_per_class", where, s.clusters_per_class);
  s.n_classes = get(j, "n_classes", where, s.n_classes);
  s.class_balance = get(j, "class_balance", where, s.class_balance);
  s.seed = get(j, "seed", where, s.seed);
  return s;
}

json synthetic_json(const SyntheticSpec& s) {
  return {{"n_features", s.n_features},     {"n_informative", s.n_informative},
          {"n_records", s.n_records},       {"class_sep", s.class_sep},
          {"label_noise", s.label_noise_fraction},
          {"clusters_per_class", s.clusters_per_class},
          {"n_classes", s.n_classes},       {"class_balance", s.class_balance},
          {"seed", s.seed}};
}

json ga_json(const GaConfig& g) {
  json j = {{"population_size", g.population_size}, {"crossover_rate", g.crossover_rate},
            {"elitism_fraction", g.elitism_fraction}, {"mutation_bias", g.mutation_bias},
            {"epsilon", g.epsilon},                 {"inc", g.inc},
            {"max_iter", g.max_iter},               {"stall_generations", g.stall_generations}};
  j["mutation_rate"] = g.mutation_rate ? json(*g.mutation_rate) : json(nullptr);
  j["max_stages"] = g.max_stages ? json(*g.max_stages) : json(nullptr);
  return j;
}

template <class T>
std::vector<T> grid_axis(const json& grid, const char* key, T fallback) {
  if (!grid.contains(key)) return {fallback};
  const auto& axis = grid.at(key);
  if (!axis.is_array()) return {axis.get<T>()};
  if (axis.empty()) throw ConfigError(std::string("sweep.grid.") + key + " is empty");
  return axis.get<std::vector<T>>();
}

} // namespace

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string RunConfig::hash() const { return fnv1a_hex(normalized.dump()); }

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  auto number = [&](const std::string& s) -> std::uint64_t {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw ConfigError("bad seed '" + s + "'");
    }
  };
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      seeds.push_back(number(item));
      continue;
    }
    const auto lo = number(item.substr(0, dots));
    const auto hi = number(item.substr(dots + 2));
    if (hi < lo) throw ConfigError("empty seed range '" + item + "'");
    for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
  }
  if (seeds.empty()) throw ConfigError("empty seed list");
  return seeds;
}

RunConfig parse_config(const json& j, const std::filesystem::path& base_dir) {
  only_keys(j, "config",
            {"dataset", "synthetic", "costs", "split_seed", "threshold", "lambda", "max_stages",
             "seeds", "seed_count", "seed_start", "ga", "oracle", "baseline", "sweep"});
  RunConfig c;
  json norm;

  if (j.contains("dataset") == j.contains("synthetic")) {
    throw ConfigError("config needs exactly one of 'dataset' and 'synthetic'");
  }
  if (j.contains("dataset")) {
    const auto& d = j.at("dataset");
    only_keys(d, "dataset", {"path", "label_column", "categorical", "missing"});
    if (!d.contains("path")) throw ConfigError("dataset.path is required");
    c.dataset_path = absolute_from(base_dir, d.at("path").get<std::string>());
    c.csv.label_column = get(d, "label_column", "dataset", c.csv.label_column);
    c.csv.categorical = get(d, "categorical", "dataset", c.csv.categorical);
    c.csv.missing_tokens = get(d, "missing", "dataset", c.csv.missing_tokens);
    norm["dataset"] = {{"path", c.dataset_path->string()},
                       {"label_column", c.csv.label_column},
                       {"categorical", c.csv.categorical},
                       {"missing", c.csv.missing_tokens}};
  } else {
    c.synthetic = parse_synthetic(j.at("synthetic"));
    norm["synthetic"] = synthetic_json(*c.synthetic);
  }

  if (!j.contains("costs")) throw ConfigError("config lacks 'costs'");
  json cost_json = j.at("costs");
  if (cost_json.is_string()) cost_json = read_json_file(absolute_from(base_dir, cost_json.get<std::string>()));
  c.costs = parse_cost_spec(cost_json.dump());
  norm["costs"] = cost_json;

  c.split_seed = get(j, "split_seed", "config", c.split_seed);
  c.threshold = get(j, "threshold", "config", c.threshold);
  c.lambda = get(j, "lambda", "config", c.lambda);
  if (!(c.threshold > 0.0 && c.threshold <= 1.0)) throw ConfigError("threshold must lie in (0, 1]");
  if (!(c.lambda >= 0.0)) throw ConfigError("lambda must be non-negative");

  if (j.contains("ga")) {
    const auto& g = j.at("ga");
    only_keys(g, "ga",
              {"population_size", "mutation_rate", "crossover_rate", "elitism_fraction",
               "mutation_bias", "epsilon", "inc", "max_iter", "stall_generations", "max_stages"});
    if (g.contains("max_stages") && !g.at("max_stages").is_null()) {
      c.ga.max_stages = get(g, "max_stages", "ga", 0);
    }
    c.ga.population_size = get(g, "population_size", "ga", c.ga.population_size);
    if (g.contains("mutation_rate") && !g.at("mutation_rate").is_null()) {
      c.ga.mutation_rate = get(g, "mutation_rate", "ga", 0.0);
    }
    c.ga.crossover_rate = get(g, "crossover_rate", "ga", c.ga.crossover_rate);
    c.ga.elitism_fraction = get(g, "elitism_fraction", "ga", c.ga.elitism_fraction);
    c.ga.mutation_bias = get(g, "mutation_bias", "ga", c.ga.mutation_bias);
    c.ga.epsilon = get(g, "epsilon", "ga", c.ga.epsilon);
    c.ga.inc = get(g, "inc", "ga", c.ga.inc);
    c.ga.max_iter = get(g, "max_iter", "ga", c.ga.max_iter);
    c.ga.stall_generations = get(g, "stall_generations", "ga", c.ga.stall_generations);
  }
  if (j.contains("max_stages") && !j.at("max_stages").is_null()) {
    c.ga.max_stages = get(j, "max_stages", "config", 0);
  }
  norm["ga"] = ga_json(c.ga);

  if (j.contains("seeds")) {
    const auto& s = j.at("seeds");
    if (s.is_string()) {
      c.seeds = parse_seed_list(s.get<std::string>());
    } else if (s.is_number_unsigned()) {
      c.seeds = {s.get<std::uint64_t>()};
    } else {
      c.seeds = get(j, "seeds", "config", c.seeds);
    }
  } else if (j.contains("seed_count")) {
    const auto count = get(j, "seed_count", "config", std::uint64_t{1});
    const auto start = get(j, "seed_start", "config", std::uint64_t{1});
    c.seeds.clear();
    for (std::uint64_t s = 0; s < count; ++s) c.seeds.push_back(start + s);
  }
  if (c.seeds.empty()) throw ConfigError("seed list is empty");

  if (j.contains("oracle")) {
    const auto& o = j.at("oracle");
    only_keys(o, "oracle", {"cap", "front_file"});
    c.oracle_cap = get(o, "cap", "oracle", c.oracle_cap);
    if (o.contains("front_file") && !o.at("front_file").is_null()) {
      c.front_file = absolute_from(base_dir, o.at("front_file").get<std::string>());
      c.front_file_explicit = true;
    }
  }
  norm["oracle"] = {{"cap", c.oracle_cap},
                    {"front_file", c.front_file_explicit ? json(c.front_file.string()) : json(nullptr)}};

  if (j.contains("baseline")) {
    const auto& b = j.at("baseline");
    only_keys(b, "baseline", {"threshold"});
    if (b.contains("threshold") && !b.at("threshold").is_null()) c.baseline_threshold = get(b, "threshold", "baseline", 0.5);
  }
  norm["baseline"] = {{"threshold", c.baseline_threshold ? json(*c.baseline_threshold) : json(nullptr)}};

  const GaConfig defaults = c.ga;
  auto& sw = c.sweep;
  json grid = json::object();
  if (j.contains("sweep")) {
    const auto& s = j.at("sweep");
    only_keys(s, "sweep", {"grid", "max_iter", "seeds"});
    sw.max_iter = get(s, "max_iter", "sweep", sw.max_iter);
    sw.seeds = get(s, "seeds", "sweep", sw.seeds);
    if (s.contains("grid")) {
      grid = s.at("grid");
      only_keys(grid, "sweep.grid",
                {"population_size", "mutation_rate", "crossover_rate", "mutation_bias",
                 "elitism_fraction"});
    }
  }
  try {
    sw.population_size = grid_axis(grid, "population_size", defaults.population_size);
    sw.crossover_rate = grid_axis(grid, "crossover_rate", defaults.crossover_rate);
    sw.mutation_bias = grid_axis(grid, "mutation_bias", defaults.mutation_bias);
    sw.elitism_fraction = grid_axis(grid, "elitism_fraction", defaults.elitism_fraction);
    if (grid.contains("mutation_rate")) {
      const auto& axis = grid.at("mutation_rate");
      const json values = axis.is_array() ? axis : json::array({axis});
      if (values.empty()) throw ConfigError("sweep.grid.mutation_rate is empty");
      for (const auto& v : values) {
        sw.mutation_rate.push_back(v.is_null() ? std::nullopt : std::optional<double>(v.get<double>()));
      }
    } else {
      sw.mutation_rate = {defaults.mutation_rate};
    }
  } catch (const json::exception&) {
    throw ConfigError("sweep.grid has a value of the wrong type");
  }
  if (sw.seeds.empty()) throw ConfigError("sweep.seeds is empty");
  json mrates = json::array();
  for (const auto& m : sw.mutation_rate) mrates.push_back(m ? json(*m) : json(nullptr));
  norm["sweep"] = {{"max_iter", sw.max_iter},
                   {"seeds", sw.seeds},
                   {"grid",
                    {{"population_size", sw.population_size},
                     {"mutation_rate", mrates},
                     {"crossover_rate", sw.crossover_rate},
                     {"mutation_bias", sw.mutation_bias},
                     {"elitism_fraction", sw.elitism_fraction}}}};

  norm["split_seed"] = c.split_seed;
  norm["threshold"] = c.threshold;
  norm["lambda"] = c.lambda;
  norm["seeds"] = c.seeds;
  c.normalized = std::move(norm);
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  json j = read_json_file(path);
  if (j.is_object() && j.contains("format")) {
    const auto format = j.at("format").get<std::string>();
    if (format != kManifestFormat) throw ConfigError(path.string() + ": unsupported format '" + format + "'");
    if (!j.contains("config")) throw ConfigError(path.string() + ": manifest lacks 'config'");
    j = j.at("config");
  }
  const auto base = std::filesystem::absolute(path).parent_path();
  try {
    return parse_config(j, base);
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

void override_seeds(RunConfig& config, std::vector<std::uint64_t> seeds) {
  if (seeds.empty()) throw ConfigError("seed list is empty");
  config.seeds = std::move(seeds);
  config.normalized["seeds"] = config.seeds;
}

CostedDataset load_data(const RunConfig& config) {
  if (config.synthetic) {
    auto data = generate_synthetic(*config.synthetic);
    attach(data, config.costs.resolve(data.feature_names), config.split_seed);
    return data;
  }
  if (!std::filesystem::exists(*config.dataset_path)) {
    throw ConfigError("dataset file not found: " + config.dataset_path->string());
  }
  return load_dataset(*config.dataset_path, config.costs, config.csv, config.split_seed);
}

} // namespace bsc::cli
