#pragma once

#include <memory>
#include <mutex>
#include <span>
#include <unordered_map>
#include <vector>

#include "bsc/chromosome.hpp"
#include "bsc/stage_chain.hpp"

namespace bsc {

/// Population-independent objectives of one solution on one split.
struct Measurement {
  double coverage = 0.0; ///< g1: accepted / N
  double accuracy = 0.0; ///< g2: correct-and-accepted / accepted, 0 when nothing is accepted
  double raw_cost = 0.0; ///< g3*: mean incurred acquisition cost, rejected inputs included
  std::size_t n = 0;
  std::size_t accepted = 0;
  std::size_t correct = 0;

  friend bool operator==(const Measurement&, const Measurement&) = default;
};

/// Measurement plus the inverse cost normalised against a population.
struct ObjectiveVector {
  double coverage = 0.0;
  double accuracy = 0.0;
  double raw_cost = 0.0;
  double inverse_cost = 0.0;
};

/// Batch measurement: walks the active rows stage by stage.
Measurement measure(const ClassifierChain& chain, const CostedDataset& data, SplitPart split);
Measurement measure(const ClassifierChain& chain, const CostedDataset& data,
                    std::span<const std::size_t> rows);

/// Tallies per-record traces (aligned with `rows`) into a measurement.
Measurement tally(std::span<const EvaluationTrace> traces, const CostedDataset& data,
                  std::span<const std::size_t> rows);

/// min(raw) / raw for each entry. Throws DomainError on a non-positive cost.
std::vector<double> normalize_costs(std::span<const double> raw_costs);

/// Anything that can score a canonical chromosome.
class ObjectiveSource {
public:
  virtual ~ObjectiveSource() = default;
  virtual Measurement evaluate(const Chromosome& c) const = 0;
  virtual std::size_t n_features() const = 0;
};

struct EvaluatorSettings {
  double threshold = 0.75;
  double lambda = 1.0;
  SplitPart split = SplitPart::Validation;
};

/// Builds a chain for a chromosome (stage models come from a shared cache)
/// and measures it on the configured split. Thread-safe.
class ChainEvaluator final : public ObjectiveSource {
public:
  ChainEvaluator(const CostedDataset& data, EvaluatorSettings settings,
                 std::shared_ptr<StageModelCache> cache = nullptr);

  Measurement evaluate(const Chromosome& c) const override;
  std::size_t n_features() const override { return data_.n_features(); }

  ClassifierChain build_chain(const Chromosome& c) const;
  const EvaluatorSettings& settings() const noexcept { return settings_; }
  const CostedDataset& data() const noexcept { return data_; }
  std::shared_ptr<StageModelCache> cache() const noexcept { return cache_; }

  /// Same data and models, different split or threshold.
  ChainEvaluator with(EvaluatorSettings settings) const;

private:
  const CostedDataset& data_;
  EvaluatorSettings settings_;
  std::shared_ptr<StageModelCache> cache_;
};

/// Memo of measurements by canonical chromosome, scoped to one run.
class MemoizedObjectives {
public:
  explicit MemoizedObjectives(const ObjectiveSource& source) : source_(source) {}

  /// Measures every chromosome, evaluating unseen ones as a batch on up to
  /// `threads` workers (0 = runtime default, 1 = serial reference path).
  std::vector<Measurement> evaluate_all(std::span<const Chromosome> population, int threads);

  const ObjectiveSource& source() const noexcept { return source_; }
  std::size_t evaluations() const noexcept { return memo_.size(); }

private:
  const ObjectiveSource& source_;
  std::unordered_map<Chromosome, Measurement, ChromosomeHash> memo_;
};

} // namespace bsc
