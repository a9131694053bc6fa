#include "bsc/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "bsc/error.hpp"

namespace bsc {

const char* to_string(SplitPart part) {
  switch (part) {
  case SplitPart::Train: return "train";
  case SplitPart::Validation: return "validation";
  case SplitPart::Test: return "test";
  }
  return "?";
}

const std::vector<std::size_t>& SplitIndices::part(SplitPart p) const {
  switch (p) {
  case SplitPart::Train: return train;
  case SplitPart::Validation: return validation;
  case SplitPart::Test: return test;
  }
  return test;
}

// ---------------------------------------------------------------------------
// Cost schedules

CostSchedule CostSchedule::class_linear(std::vector<int> classes, double scale) {
  if (!(scale > 0.0)) throw DomainError("class-linear cost scale must be positive");
  CostSchedule s;
  s.mode_ = Mode::ClassLinear;
  s.classes_ = std::move(classes);
  s.scale_ = scale;
  for (int t : s.classes_) {
    if (t < 1) throw DomainError("cost classes must be positive integers");
  }
  return s;
}

CostSchedule CostSchedule::class_exponential(std::vector<int> classes) {
  CostSchedule s;
  s.mode_ = Mode::ClassExponential;
  s.classes_ = std::move(classes);
  for (int t : s.classes_) {
    if (t < 1) throw DomainError("cost classes must be positive integers");
  }
  return s;
}

CostSchedule CostSchedule::explicit_costs(std::vector<double> costs) {
  CostSchedule s;
  s.mode_ = Mode::Explicit;
  s.explicit_ = std::move(costs);
  for (double c : s.explicit_) {
    if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("feature costs must be positive");
  }
  return s;
}

std::size_t CostSchedule::size() const noexcept {
  return mode_ == Mode::Explicit ? explicit_.size() : classes_.size();
}

std::vector<double> CostSchedule::costs() const {
  switch (mode_) {
  case Mode::Explicit: return explicit_;
  case Mode::ClassLinear: {
    std::vector<double> out;
    for (int t : classes_) out.push_back(scale_ * t);
    return out;
  }
  case Mode::ClassExponential: {
    std::vector<double> out;
    for (int t : classes_) out.push_back(std::pow(10.0, t));
    return out;
  }
  }
  return {};
}

CostSchedule CostSpec::resolve(const std::vector<std::string>& feature_names) const {
  std::vector<double> values(feature_names.size(), 0.0);
  if (entries.empty()) {
    if (mode != CostSchedule::Mode::Explicit) {
      throw ConfigError("class-based cost spec has no feature entries");
    }
    if (ordered_costs.size() != feature_names.size()) {
      throw ConfigError("cost list has " + std::to_string(ordered_costs.size()) +
                        " entries for " + std::to_string(feature_names.size()) + " features");
    }
    values = ordered_costs;
  } else {
    std::vector<bool> seen(feature_names.size(), false);
    for (const auto& [name, value] : entries) {
      auto it = std::find(feature_names.begin(), feature_names.end(), name);
      if (it == feature_names.end()) {
        throw ConfigError("cost spec names unknown feature '" + name + "'");
      }
      auto idx = static_cast<std::size_t>(it - feature_names.begin());
      values[idx] = value;
      seen[idx] = true;
    }
    for (std::size_t i = 0; i < seen.size(); ++i) {
      if (!seen[i]) throw ConfigError("cost spec misses feature '" + feature_names[i] + "'");
    }
  }
  if (mode == CostSchedule::Mode::Explicit) return CostSchedule::explicit_costs(values);
  std::vector<int> classes;
  for (double v : values) {
    if (v != std::floor(v)) throw ConfigError("cost classes must be integers");
    classes.push_back(static_cast<int>(v));
  }
  if (mode == CostSchedule::Mode::ClassLinear) return CostSchedule::class_linear(classes, scale);
  return CostSchedule::class_exponential(classes);
}

CostSpec parse_cost_spec(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("cost spec: ") + e.what());
  }
  CostSpec spec;
  const std::string mode = j.value("mode", "explicit");
  if (mode == "class-linear") {
    spec.mode = CostSchedule::Mode::ClassLinear;
    spec.scale = j.value("scale", 1.0);
  } else if (mode == "class-exponential") {
    spec.mode = CostSchedule::Mode::ClassExponential;
  } else if (mode == "explicit") {
    spec.mode = CostSchedule::Mode::Explicit;
  } else {
    throw ConfigError("unknown cost mode '" + mode + "'");
  }
  const char* key = spec.mode == CostSchedule::Mode::Explicit ? "costs" : "classes";
  if (!j.contains(key)) throw ConfigError(std::string("cost spec lacks '") + key + "'");
  const auto& body = j.at(key);
  if (body.is_array()) {
    if (spec.mode != CostSchedule::Mode::Explicit) {
      throw ConfigError("cost classes must be given as a name -> class object");
    }
    spec.ordered_costs = body.get<std::vector<double>>();
  } else if (body.is_object()) {
    // nlohmann::json objects iterate in key order; that is fine since
    // resolve() maps by name
    for (const auto& [name, value] : body.items()) {
      if (!value.is_number()) throw ConfigError("cost for '" + name + "' is not a number");
      spec.entries.emplace_back(name, value.get<double>());
    }
  } else {
    throw ConfigError(std::string("'") + key + "' must be an array or object");
  }
  return spec;
}

CostSpec read_cost_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open cost spec " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_cost_spec(buf.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

double CostedDataset::total_cost() const {
  return std::accumulate(costs.begin(), costs.end(), 0.0);
}

void CostedDataset::validate() const {
  const std::size_t n = n_features();
  if (labels.size() != rows()) throw DataError("label count does not match row count");
  if (feature_names.size() != n) throw DataError("feature name count does not match columns");
  if (costs.size() != n) throw DataError("cost count does not match feature count");
  for (double c : costs) {
    if (!(c > 0.0)) throw DomainError("feature costs must be positive");
  }
  for (Eigen::Index i = 0; i < features.size(); ++i) {
    if (!std::isfinite(features.data()[i])) throw DataError("non-finite feature value");
  }
  std::vector<int> owner(rows(), 0);
  for (auto p : {SplitPart::Train, SplitPart::Validation, SplitPart::Test}) {
    for (auto idx : part(p)) {
      if (idx >= rows()) throw DataError("split index out of range");
      if (owner[idx]++) throw DataError("splits overlap");
    }
  }
  if (std::count(owner.begin(), owner.end(), 1) != static_cast<std::ptrdiff_t>(rows())) {
    throw DataError("splits do not cover all rows");
  }
}

// ---------------------------------------------------------------------------
// Splitting

namespace {

void split_block(std::vector<std::size_t> rows, std::mt19937_64& rng, SplitIndices& out) {
  std::shuffle(rows.begin(), rows.end(), rng);
  const double m = static_cast<double>(rows.size());
  const auto n_train = static_cast<std::size_t>(std::round(m * 0.5));
  const auto n_val = std::min(rows.size() - n_train, static_cast<std::size_t>(std::round(m * 0.25)));
  out.train.insert(out.train.end(), rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(n_train));
  out.validation.insert(out.validation.end(), rows.begin() + static_cast<std::ptrdiff_t>(n_train),
                        rows.begin() + static_cast<std::ptrdiff_t>(n_train + n_val));
  out.test.insert(out.test.end(), rows.begin() + static_cast<std::ptrdiff_t>(n_train + n_val),
                  rows.end());
}

} // namespace

SplitIndices split_50_25_25(std::span<const int> labels, std::uint64_t seed) {
  if (labels.size() < 4) throw DomainError("50-25-25 split needs at least 4 rows");
  std::map<int, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(i);

  SplitIndices out;
  std::mt19937_64 rng(seed);
  const bool stratify = std::all_of(by_class.begin(), by_class.end(),
                                    [](const auto& kv) { return kv.second.size() >= 3; });
  if (stratify) {
    for (auto& [label, rows] : by_class) split_block(std::move(rows), rng, out);
  } else {
    std::vector<std::size_t> all(labels.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    split_block(std::move(all), rng, out);
    out.stratified = false;
  }
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.validation.begin(), out.validation.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

// ---------------------------------------------------------------------------
// CSV ingestion

namespace {

struct CsvRow {
  std::vector<std::string> cells;
  std::size_t line = 0;
};

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_csv_line(const std::string& line, const std::string& where) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cell += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cell += ch;
      }
    } else if (ch == '"') {
      quoted = true;
      was_quoted = true;
    } else if (ch == ',') {
      cells.push_back(was_quoted ? cell : trim(cell));
      cell.clear();
      was_quoted = false;
    } else {
      cell += ch;
    }
  }
  if (quoted) throw DataError(where + ": unterminated quoted field");
  cells.push_back(was_quoted ? cell : trim(cell));
  return cells;
}

std::optional<double> parse_number(const std::string& s) {
  if (s.empty()) return std::nullopt;
  double value = 0.0;
  const char* begin = s.data();
  if (*begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(value)) return std::nullopt;
  return value;
}

/// Sorted distinct values, numerically when every value is a number.
std::vector<std::string> ordered_levels(std::vector<std::string> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  const bool numeric = std::all_of(values.begin(), values.end(),
                                   [](const std::string& v) { return parse_number(v).has_value(); });
  if (numeric) {
    std::stable_sort(values.begin(), values.end(), [](const std::string& a, const std::string& b) {
      return *parse_number(a) < *parse_number(b);
    });
  }
  return values;
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size();
  return m % 2 ? v[m / 2] : 0.5 * (v[m / 2 - 1] + v[m / 2]);
}

} // namespace

CostedDataset load_dataset(const std::filesystem::path& feature_file, const CostSpec& costs,
                           const CsvOptions& options, std::uint64_t split_seed) {
  const std::string file = feature_file.string();
  std::ifstream in(feature_file);
  if (!in) throw DataError("cannot open dataset " + file);

  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) {
      header = split_csv_line(line, file + ":" + std::to_string(line_no));
      break;
    }
  }
  if (header.empty()) throw DataError(file + ": empty file");

  std::vector<CsvRow> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const std::string where = file + ":" + std::to_string(line_no);
    auto cells = split_csv_line(line, where);
    if (cells.size() != header.size()) {
      throw DataError(where + ": expected " + std::to_string(header.size()) + " fields, found " +
                      std::to_string(cells.size()));
    }
    rows.push_back({std::move(cells), line_no});
  }
  if (rows.empty()) throw DataError(file + ": no data rows");

  std::size_t label_col = header.size() - 1;
  if (!options.label_column.empty()) {
    auto it = std::find(header.begin(), header.end(), options.label_column);
    if (it == header.end()) throw DataError(file + ": no label column '" + options.label_column + "'");
    label_col = static_cast<std::size_t>(it - header.begin());
  }
  for (const auto& name : options.categorical) {
    if (std::find(header.begin(), header.end(), name) == header.end()) {
      throw ConfigError("categorical column '" + name + "' is not in " + file);
    }
  }
  auto is_missing = [&](const std::string& cell) {
    return std::find(options.missing_tokens.begin(), options.missing_tokens.end(), cell) !=
           options.missing_tokens.end();
  };

  CostedDataset data;
  std::vector<std::size_t> feature_cols;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c == label_col) continue;
    feature_cols.push_back(c);
    data.feature_names.push_back(header[c]);
  }
  if (feature_cols.empty()) throw DataError(file + ": no feature columns");

  // labels
  std::vector<std::string> raw_labels;
  for (const auto& r : rows) {
    if (is_missing(r.cells[label_col])) {
      throw DataError(file + ":" + std::to_string(r.line) + ": missing label");
    }
    raw_labels.push_back(r.cells[label_col]);
  }
  data.label_names = ordered_levels(raw_labels);
  data.num_classes = static_cast<int>(data.label_names.size());
  for (const auto& l : raw_labels) {
    data.labels.push_back(static_cast<int>(
        std::find(data.label_names.begin(), data.label_names.end(), l) - data.label_names.begin()));
  }

  const std::size_t n_rows = rows.size();
  const std::size_t n_feat = feature_cols.size();
  data.features.resize(static_cast<Eigen::Index>(n_rows), static_cast<Eigen::Index>(n_feat));
  std::vector<std::vector<bool>> missing(n_feat, std::vector<bool>(n_rows, false));
  std::vector<bool> categorical(n_feat, false);

  for (std::size_t f = 0; f < n_feat; ++f) {
    const std::size_t c = feature_cols[f];
    const bool declared = std::find(options.categorical.begin(), options.categorical.end(),
                                    header[c]) != options.categorical.end();
    std::size_t numeric_cells = 0;
    std::size_t text_cells = 0;
    std::size_t first_text_row = 0;
    for (std::size_t r = 0; r < n_rows; ++r) {
      const auto& cell = rows[r].cells[c];
      if (is_missing(cell)) continue;
      if (parse_number(cell)) {
        ++numeric_cells;
      } else if (text_cells++ == 0) {
        first_text_row = r;
      }
    }
    if (!declared && numeric_cells > 0 && text_cells > 0) {
      const auto& r = rows[first_text_row];
      throw DataError(file + ":" + std::to_string(r.line) + ": non-numeric cell '" + r.cells[c] +
                      "' in numeric column '" + header[c] + "' cannot be coded");
    }
    categorical[f] = declared || text_cells > 0;
    std::vector<std::string> levels;
    if (categorical[f]) {
      std::vector<std::string> present;
      for (const auto& r : rows) {
        if (!is_missing(r.cells[c])) present.push_back(r.cells[c]);
      }
      levels = ordered_levels(std::move(present));
    }
    for (std::size_t r = 0; r < n_rows; ++r) {
      const auto& cell = rows[r].cells[c];
      double value = 0.0;
      if (is_missing(cell)) {
        missing[f][r] = true;
      } else if (categorical[f]) {
        value = static_cast<double>(std::find(levels.begin(), levels.end(), cell) - levels.begin());
      } else {
        value = *parse_number(cell);
      }
      data.features(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(f)) = value;
    }
  }

  data.schedule = costs.resolve(data.feature_names);
  data.costs = data.schedule.costs();
  data.splits = split_50_25_25(data.labels, split_seed);

  // impute from the training split only
  for (std::size_t f = 0; f < n_feat; ++f) {
    const auto col = static_cast<Eigen::Index>(f);
    std::vector<double> observed;
    for (auto r : data.splits.train) {
      if (!missing[f][r]) observed.push_back(data.features(static_cast<Eigen::Index>(r), col));
    }
    bool any_missing = std::find(missing[f].begin(), missing[f].end(), true) != missing[f].end();
    if (!any_missing) continue;
    if (observed.empty()) {
      throw DataError(file + ": column '" + data.feature_names[f] +
                      "' has no observed values in the training split");
    }
    double fill = 0.0;
    if (categorical[f]) {
      std::map<double, std::size_t> counts;
      for (double v : observed) ++counts[v];
      std::size_t best = 0;
      for (const auto& [v, n] : counts) {
        if (n > best) {
          best = n;
          fill = v;
        }
      }
    } else {
      fill = median_of(std::move(observed));
    }
    for (std::size_t r = 0; r < n_rows; ++r) {
      if (missing[f][r]) data.features(static_cast<Eigen::Index>(r), col) = fill;
    }
  }
  data.validate();
  return data;
}

// ---------------------------------------------------------------------------
// Synthetic data

CostedDataset generate_synthetic(const SyntheticSpec& spec) {
  if (spec.n_features < 1 || spec.n_records < 1) throw DomainError("synthetic spec needs rows and features");
  if (spec.n_informative < 1 || spec.n_informative > spec.n_features) {
    throw DomainError("n_informative must lie in [1, n_features]");
  }
  if (spec.n_classes < 2 || spec.clusters_per_class < 1) throw DomainError("need >= 2 classes and >= 1 cluster");
  if (!(spec.label_noise_fraction >= 0.0 && spec.label_noise_fraction < 1.0)) {
    throw DomainError("label_noise_fraction must lie in [0, 1)");
  }
  const int n_clusters = spec.n_classes * spec.clusters_per_class;
  if (spec.n_informative < 31 && (1LL << spec.n_informative) < n_clusters) {
    throw DomainError("too few informative features to place every cluster on its own vertex");
  }

  std::vector<double> weights = spec.class_balance;
  if (weights.empty()) weights.assign(static_cast<std::size_t>(spec.n_classes), 1.0);
  if (weights.size() != static_cast<std::size_t>(spec.n_classes)) {
    throw DomainError("class_balance needs one weight per class");
  }
  const double weight_sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  std::vector<int> per_class(weights.size());
  int assigned = 0;
  for (std::size_t c = 0; c + 1 < weights.size(); ++c) {
    per_class[c] = static_cast<int>(std::round(spec.n_records * weights[c] / weight_sum));
    assigned += per_class[c];
  }
  per_class.back() = spec.n_records - assigned;
  if (per_class.back() < 0) throw DomainError("class_balance rounds to a negative class size");

  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  // distinct hypercube vertices, one per cluster
  std::set<std::vector<int>> used;
  std::vector<std::vector<double>> centroids;
  std::bernoulli_distribution coin(0.5);
  while (static_cast<int>(centroids.size()) < n_clusters) {
    std::vector<int> vertex(static_cast<std::size_t>(spec.n_informative));
    for (auto& v : vertex) v = coin(rng) ? 1 : -1;
    if (!used.insert(vertex).second) continue;
    std::vector<double> centre;
    for (int v : vertex) centre.push_back(v * spec.class_sep);
    centroids.push_back(std::move(centre));
  }

  CostedDataset data;
  data.num_classes = spec.n_classes;
  const auto n_rows = static_cast<std::size_t>(spec.n_records);
  const auto n_feat = static_cast<std::size_t>(spec.n_features);
  data.features.resize(spec.n_records, spec.n_features);
  for (std::size_t f = 0; f < n_feat; ++f) data.feature_names.push_back("f" + std::to_string(f));
  for (int c = 0; c < spec.n_classes; ++c) data.label_names.push_back(std::to_string(c));

  std::vector<int> labels;
  std::vector<int> clusters;
  for (int c = 0; c < spec.n_classes; ++c) {
    for (int i = 0; i < per_class[static_cast<std::size_t>(c)]; ++i) {
      labels.push_back(c);
      clusters.push_back(c * spec.clusters_per_class + i % spec.clusters_per_class);
    }
  }
  std::vector<std::size_t> order(n_rows);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);

  data.labels.resize(n_rows);
  for (std::size_t r = 0; r < n_rows; ++r) {
    const std::size_t src = order[r];
    data.labels[r] = labels[src];
    const auto& centre = centroids[static_cast<std::size_t>(clusters[src])];
    for (std::size_t f = 0; f < n_feat; ++f) {
      const double offset = f < centre.size() ? centre[f] : 0.0;
      data.features(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(f)) = offset + normal(rng);
    }
  }

  const auto n_flip = static_cast<std::size_t>(std::round(spec.label_noise_fraction * spec.n_records));
  std::vector<std::size_t> rows(n_rows);
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  std::shuffle(rows.begin(), rows.end(), rng);
  std::uniform_int_distribution<int> other(1, spec.n_classes - 1);
  for (std::size_t i = 0; i < n_flip; ++i) {
    int& y = data.labels[rows[i]];
    y = (y + other(rng)) % spec.n_classes;
  }
  return data;
}

void attach(CostedDataset& data, const CostSchedule& schedule, std::uint64_t split_seed) {
  if (schedule.size() != data.n_features()) {
    throw ConfigError("cost schedule has " + std::to_string(schedule.size()) + " entries for " +
                      std::to_string(data.n_features()) + " features");
  }
  data.schedule = schedule;
  data.costs = schedule.costs();
  data.splits = split_50_25_25(data.labels, split_seed);
  data.validate();
}

} // namespace bsc
