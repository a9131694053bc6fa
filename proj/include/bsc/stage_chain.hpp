#pragma once

#include <memory>
#include <optional>
#include <shared_mutex>
#include <span>
#include <unordered_map>
#include <vector>

#include "bsc/chromosome.hpp"
#include "bsc/dataset.hpp"
#include "bsc/logistic.hpp"

namespace bsc {

/// Ordered, disjoint, non-empty feature stages covering every feature, with
/// their cumulative unions.
class StagePlan {
public:
  /// Throws DomainError when stages are empty, overlap, or miss a feature.
  StagePlan(std::vector<std::vector<int>> stages, std::size_t n_features);

  static StagePlan from_chromosome(const Chromosome& c);

  std::size_t size() const noexcept { return stages_.size(); }
  std::size_t n_features() const noexcept { return n_features_; }
  const std::vector<std::vector<int>>& stages() const noexcept { return stages_; }
  /// cumulative()[j] = stages()[0] u ... u stages()[j], sorted ascending.
  const std::vector<std::vector<int>>& cumulative() const noexcept { return cumulative_; }

private:
  std::vector<std::vector<int>> stages_;
  std::vector<std::vector<int>> cumulative_;
  std::size_t n_features_ = 0;
};

struct EvaluationTrace {
  int exit_stage = 0; ///< 1-based index of the last stage that processed the input
  bool accepted = false;
  std::optional<int> label;
  double confidence = 0.0;
  double incurred_cost = 0.0;
};

/// Trained stage models over a plan, plus the confidence threshold that
/// drives early exit and terminal rejection.
class ClassifierChain {
public:
  ClassifierChain(StagePlan plan, std::vector<std::shared_ptr<const LogisticModel>> models,
                  double threshold, std::span<const double> feature_costs);

  const StagePlan& plan() const noexcept { return plan_; }
  const LogisticModel& model(std::size_t stage) const { return *models_.at(stage); }
  double threshold() const noexcept { return threshold_; }
  /// Cost of the features first acquired at each stage.
  const std::vector<double>& stage_costs() const noexcept { return stage_costs_; }

private:
  StagePlan plan_;
  std::vector<std::shared_ptr<const LogisticModel>> models_;
  double threshold_;
  std::vector<double> stage_costs_;
};

/// Runs one input through the chain: stage j accepts when its top class
/// probability reaches the threshold; the terminal stage rejects otherwise.
EvaluationTrace evaluate_input(const ClassifierChain& chain, std::span<const double> row);

/// Trained stage models keyed by feature set. A model depends only on its
/// feature set, the training rows and lambda, so chains that share a
/// cumulative set can share the model. Safe for concurrent use.
class StageModelCache {
public:
  StageModelCache(const CostedDataset& data, double lambda, SolverOptions options = {});

  std::shared_ptr<const LogisticModel> get(const std::vector<int>& features);

  const Standardizer& standardizer() const noexcept { return standardizer_; }
  double lambda() const noexcept { return lambda_; }
  std::size_t size() const;

private:
  struct VectorHash {
    std::size_t operator()(const std::vector<int>& v) const noexcept;
  };

  const CostedDataset& data_;
  double lambda_;
  SolverOptions options_;
  Standardizer standardizer_;
  mutable std::shared_mutex mutex_;
  std::unordered_map<std::vector<int>, std::shared_ptr<const LogisticModel>, VectorHash> models_;
};

/// Trains one model per cumulative feature set on the training split.
ClassifierChain train_chain(const StagePlan& plan, const CostedDataset& data, double lambda,
                            double threshold);
ClassifierChain train_chain(const StagePlan& plan, const CostedDataset& data, double threshold,
                            StageModelCache& cache);

} // namespace bsc
