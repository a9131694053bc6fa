#include "bsc/stage_chain.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "bsc/error.hpp"

namespace bsc {

StagePlan::StagePlan(std::vector<std::vector<int>> stages, std::size_t n_features)
    : stages_(std::move(stages)), n_features_(n_features) {
  if (stages_.empty()) throw DomainError("a stage plan needs at least one stage");
  std::vector<bool> seen(n_features, false);
  std::vector<int> running;
  for (auto& stage : stages_) {
    if (stage.empty()) throw DomainError("stage plans cannot contain an empty stage");
    std::sort(stage.begin(), stage.end());
    for (int f : stage) {
      if (f < 0 || static_cast<std::size_t>(f) >= n_features) {
        throw DomainError("stage references feature " + std::to_string(f) + " out of range");
      }
      if (seen[static_cast<std::size_t>(f)]) {
        throw DomainError("feature " + std::to_string(f) + " appears in more than one stage");
      }
      seen[static_cast<std::size_t>(f)] = true;
    }
    running.insert(running.end(), stage.begin(), stage.end());
    std::sort(running.begin(), running.end());
    cumulative_.push_back(running);
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw DomainError("stage plan does not cover every feature");
  }
}

StagePlan StagePlan::from_chromosome(const Chromosome& c) {
  if (has_gaps(c)) throw InvalidChromosome("chromosome " + c.to_string() + " has empty stages");
  return StagePlan(stages_of(c), c.size());
}

ClassifierChain::ClassifierChain(StagePlan plan,
                                 std::vector<std::shared_ptr<const LogisticModel>> models,
                                 double threshold, std::span<const double> feature_costs)
    : plan_(std::move(plan)), models_(std::move(models)), threshold_(threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw DomainError("confidence threshold must lie in (0, 1]");
  }
  if (models_.size() != plan_.size()) throw DomainError("one model per stage is required");
  if (feature_costs.size() != plan_.n_features()) {
    throw DomainError("feature cost list does not match the plan");
  }
  for (std::size_t j = 0; j < models_.size(); ++j) {
    if (!models_[j] || models_[j]->features() != plan_.cumulative()[j]) {
      throw DomainError("stage model " + std::to_string(j + 1) +
                        " does not consume its cumulative feature set");
    }
  }
  for (const auto& stage : plan_.stages()) {
    double cost = 0.0;
    for (int f : stage) cost += feature_costs[static_cast<std::size_t>(f)];
    stage_costs_.push_back(cost);
  }
}

EvaluationTrace evaluate_input(const ClassifierChain& chain, std::span<const double> row) {
  if (row.size() < chain.plan().n_features()) {
    throw DataError("feature row has fewer values than the chain's feature set");
  }
  EvaluationTrace trace;
  const std::size_t stages = chain.plan().size();
  for (std::size_t j = 0; j < stages; ++j) {
    trace.incurred_cost += chain.stage_costs()[j];
    const Prediction p = chain.model(j).predict(row);
    trace.exit_stage = static_cast<int>(j) + 1;
    trace.confidence = p.confidence;
    if (p.confidence >= chain.threshold()) {
      trace.accepted = true;
      trace.label = p.label;
      return trace;
    }
  }
  return trace;
}

std::size_t StageModelCache::VectorHash::operator()(const std::vector<int>& v) const noexcept {
  std::size_t h = 1469598103934665603ULL;
  for (int x : v) {
    h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL;
    h *= 1099511628211ULL;
  }
  return h;
}

StageModelCache::StageModelCache(const CostedDataset& data, double lambda, SolverOptions options)
    : data_(data), lambda_(lambda), options_(options),
      standardizer_(Standardizer::fit(data, data.part(SplitPart::Train))) {}

std::shared_ptr<const LogisticModel> StageModelCache::get(const std::vector<int>& features) {
  {
    std::shared_lock lock(mutex_);
    auto it = models_.find(features);
    if (it != models_.end()) return it->second;
  }
  // Training is deterministic, so a concurrent duplicate computes the same model.
  auto model = std::make_shared<const LogisticModel>(LogisticModel::train(
      data_, data_.part(SplitPart::Train), standardizer_, features, lambda_, options_));
  std::unique_lock lock(mutex_);
  return models_.try_emplace(features, std::move(model)).first->second;
}

std::size_t StageModelCache::size() const {
  std::shared_lock lock(mutex_);
  return models_.size();
}

ClassifierChain train_chain(const StagePlan& plan, const CostedDataset& data, double threshold,
                            StageModelCache& cache) {
  std::vector<std::shared_ptr<const LogisticModel>> models;
  for (const auto& features : plan.cumulative()) models.push_back(cache.get(features));
  return ClassifierChain(plan, std::move(models), threshold, data.costs);
}

ClassifierChain train_chain(const StagePlan& plan, const CostedDataset& data, double lambda,
                            double threshold) {
  StageModelCache cache(data, lambda);
  return train_chain(plan, data, threshold, cache);
}

} // namespace bsc
