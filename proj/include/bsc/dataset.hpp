#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>

namespace bsc {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

enum class SplitPart { Train, Validation, Test };

const char* to_string(SplitPart part);

/// Row indices of the train/validation/test partition, each sorted ascending.
struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> validation;
  std::vector<std::size_t> test;
  /// False when some class was too small to stratify and a plain shuffle was used.
  bool stratified = true;

  const std::vector<std::size_t>& part(SplitPart p) const;
};

/// Maps features to acquisition costs, either through integer cost classes
/// and a scaling function h(T), or as an explicit per-feature list.
class CostSchedule {
public:
  enum class Mode { ClassLinear, ClassExponential, Explicit };

  /// h(T) = scale * T
  static CostSchedule class_linear(std::vector<int> classes, double scale);
  /// h(T) = 10^T
  static CostSchedule class_exponential(std::vector<int> classes);
  static CostSchedule explicit_costs(std::vector<double> costs);

  Mode mode() const noexcept { return mode_; }
  bool class_based() const noexcept { return mode_ != Mode::Explicit; }
  const std::vector<int>& classes() const noexcept { return classes_; }
  double scale() const noexcept { return scale_; }
  std::size_t size() const noexcept;

  std::vector<double> costs() const;

private:
  Mode mode_ = Mode::Explicit;
  std::vector<int> classes_;
  std::vector<double> explicit_;
  double scale_ = 1.0;
};

/// Name-keyed cost description as read from a cost file, resolved against a
/// dataset header by resolve().
struct CostSpec {
  CostSchedule::Mode mode = CostSchedule::Mode::Explicit;
  double scale = 1.0;
  /// feature name -> cost class (class modes) or cost (explicit mode)
  std::vector<std::pair<std::string, double>> entries;
  /// explicit costs in column order, used when entries is empty
  std::vector<double> ordered_costs;

  CostSchedule resolve(const std::vector<std::string>& feature_names) const;
};

/// Reads the JSON cost file format documented in README.md.
CostSpec read_cost_spec(const std::filesystem::path& path);
CostSpec parse_cost_spec(const std::string& json_text);

struct CostedDataset {
  RowMatrix features; ///< N x n
  std::vector<int> labels;
  int num_classes = 0;
  std::vector<std::string> feature_names;
  std::vector<std::string> label_names;
  std::vector<double> costs;
  CostSchedule schedule;
  SplitIndices splits;

  std::size_t rows() const noexcept { return static_cast<std::size_t>(features.rows()); }
  std::size_t n_features() const noexcept { return static_cast<std::size_t>(features.cols()); }
  std::span<const double> row(std::size_t i) const {
    return {features.data() + i * n_features(), n_features()};
  }
  const std::vector<std::size_t>& part(SplitPart p) const { return splits.part(p); }
  double total_cost() const;

  /// Throws DataError/DomainError when an invariant is broken.
  void validate() const;
};

/// Stratified 50-25-25 split, deterministic in the seed. Requires N >= 4.
SplitIndices split_50_25_25(std::span<const int> labels, std::uint64_t seed);

struct CsvOptions {
  /// Label column name; empty selects the last column.
  std::string label_column;
  /// Columns coded as categorical even when their values parse as numbers.
  std::vector<std::string> categorical;
  std::vector<std::string> missing_tokens{"", "?", "NA", "NaN", "nan"};
};

/// Loads a comma-separated file with a header row. Categorical columns are
/// integer-coded, the data is split with split_50_25_25, and missing values
/// are imputed from training rows only (median for numeric columns, mode for
/// categorical ones).
CostedDataset load_dataset(const std::filesystem::path& feature_file, const CostSpec& costs,
                           const CsvOptions& options, std::uint64_t split_seed);

struct SyntheticSpec {
  int n_features = 20;
  int n_informative = 2;
  int n_records = 100;
  double class_sep = 1.0;
  double label_noise_fraction = 0.0;
  int clusters_per_class = 2;
  int n_classes = 2;
  /// Class weights; empty means balanced.
  std::vector<double> class_balance;
  std::uint64_t seed = 0;
};

/// Gaussian-cluster classification data. Each cluster centre sits on a
/// distinct vertex of the hypercube [-class_sep, class_sep]^n_informative;
/// informative features are unit-variance Gaussians around the centre and the
/// remaining features are standard-normal noise. Informative features come
/// first. Exactly round(label_noise_fraction * N) labels are reassigned to a
/// different class. Costs and splits are left empty; see attach().
CostedDataset generate_synthetic(const SyntheticSpec& spec);

/// Sets costs from the schedule and splits with split_50_25_25.
void attach(CostedDataset& data, const CostSchedule& schedule, std::uint64_t split_seed);

} // namespace bsc
