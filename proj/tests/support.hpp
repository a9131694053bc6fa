#pragma once

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "bsc/dataset.hpp"
#include "bsc/stage_chain.hpp"

namespace test {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
  TempDir() {
    static std::atomic<int> counter{0};
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("bsc_test_" + std::to_string(rd()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

  std::filesystem::path write(const std::string& name, const std::string& text) const {
    const auto p = path_ / name;
    std::ofstream(p, std::ios::binary) << text;
    return p;
  }

private:
  std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// The six-feature instance used for oracle and recovery checks.
inline bsc::CostedDataset desk_instance() {
  bsc::SyntheticSpec spec;
  spec.n_features = 6;
  spec.n_informative = 3;
  spec.n_records = 600;
  spec.class_sep = 1.0;
  spec.seed = 2;
  auto data = bsc::generate_synthetic(spec);
  bsc::attach(data, bsc::CostSchedule::explicit_costs({1, 2, 3, 4, 5, 6}), 1);
  return data;
}

inline constexpr double kDeskThreshold = 0.65;

/// Binary stage model that ignores its inputs and reports class 1 with the
/// given confidence (class 0 when confidence < 0.5).
inline std::shared_ptr<const bsc::LogisticModel> constant_model(std::vector<int> features,
                                                               double confidence) {
  const auto width = static_cast<Eigen::Index>(features.size());
  Eigen::VectorXd b(1);
  b(0) = std::log(confidence / (1.0 - confidence));
  return std::make_shared<const bsc::LogisticModel>(
      bsc::LogisticModel::from_parameters(std::move(features), 2, Eigen::MatrixXd::Zero(1, width), b));
}

/// Chain over `stages` whose stage j reports confidences[j] for every input.
inline bsc::ClassifierChain stub_chain(std::vector<std::vector<int>> stages, std::size_t n_features,
                                       const std::vector<double>& confidences, double threshold,
                                       const std::vector<double>& costs) {
  bsc::StagePlan plan(std::move(stages), n_features);
  std::vector<std::shared_ptr<const bsc::LogisticModel>> models;
  for (std::size_t j = 0; j < plan.size(); ++j) {
    models.push_back(constant_model(plan.cumulative()[j], confidences.at(j)));
  }
  return bsc::ClassifierChain(std::move(plan), std::move(models), threshold, costs);
}

} // namespace test
