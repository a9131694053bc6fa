#include "bsc/objectives.hpp"

#include <algorithm>
#include <unordered_set>

#include "bsc/error.hpp"
#include "bsc/parallel.hpp"

namespace bsc {
namespace {

Measurement finish(std::size_t n, std::size_t accepted, std::size_t correct, double cost_sum) {
  Measurement m;
  m.n = n;
  m.accepted = accepted;
  m.correct = correct;
  m.coverage = static_cast<double>(accepted) / static_cast<double>(n);
  m.accuracy = accepted ? static_cast<double>(correct) / static_cast<double>(accepted) : 0.0;
  m.raw_cost = cost_sum / static_cast<double>(n);
  return m;
}

} // namespace

Measurement measure(const ClassifierChain& chain, const CostedDataset& data,
                    std::span<const std::size_t> rows) {
  if (rows.empty()) throw DomainError("cannot measure on an empty split");
  const std::size_t stages = chain.plan().size();
  std::vector<double> cost(rows.size(), 0.0);
  std::vector<std::size_t> active(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) active[i] = i;

  std::size_t accepted = 0;
  std::size_t correct = 0;
  std::vector<std::size_t> still_active;
  for (std::size_t j = 0; j < stages && !active.empty(); ++j) {
    const LogisticModel& model = chain.model(j);
    const double stage_cost = chain.stage_costs()[j];
    still_active.clear();
    for (std::size_t i : active) {
      cost[i] += stage_cost;
      const Prediction p = model.predict(data.row(rows[i]));
      if (p.confidence >= chain.threshold()) {
        ++accepted;
        if (p.label == data.labels[rows[i]]) ++correct;
      } else {
        still_active.push_back(i);
      }
    }
    active.swap(still_active);
  }
  double cost_sum = 0.0;
  for (double c : cost) cost_sum += c;
  return finish(rows.size(), accepted, correct, cost_sum);
}

Measurement measure(const ClassifierChain& chain, const CostedDataset& data, SplitPart split) {
  return measure(chain, data, data.part(split));
}

Measurement tally(std::span<const EvaluationTrace> traces, const CostedDataset& data,
                  std::span<const std::size_t> rows) {
  if (traces.empty()) throw DomainError("cannot tally an empty trace list");
  if (traces.size() != rows.size()) throw DomainError("trace and row counts differ");
  std::size_t accepted = 0;
  std::size_t correct = 0;
  double cost_sum = 0.0;
  for (std::size_t i = 0; i < traces.size(); ++i) {
    const auto& t = traces[i];
    cost_sum += t.incurred_cost;
    if (!t.accepted) continue;
    ++accepted;
    if (t.label && *t.label == data.labels[rows[i]]) ++correct;
  }
  return finish(traces.size(), accepted, correct, cost_sum);
}

std::vector<double> normalize_costs(std::span<const double> raw_costs) {
  if (raw_costs.empty()) return {};
  for (double c : raw_costs) {
    if (!(c > 0.0)) throw DomainError("raw costs must be positive to normalise");
  }
  const double lowest = *std::min_element(raw_costs.begin(), raw_costs.end());
  std::vector<double> out;
  out.reserve(raw_costs.size());
  for (double c : raw_costs) out.push_back(lowest / c);
  return out;
}

ChainEvaluator::ChainEvaluator(const CostedDataset& data, EvaluatorSettings settings,
                               std::shared_ptr<StageModelCache> cache)
    : data_(data), settings_(settings), cache_(std::move(cache)) {
  if (!cache_) cache_ = std::make_shared<StageModelCache>(data_, settings_.lambda);
  if (cache_->lambda() != settings_.lambda) {
    throw DomainError("model cache was built with a different regularisation strength");
  }
}

ClassifierChain ChainEvaluator::build_chain(const Chromosome& c) const {
  if (c.size() != data_.n_features()) {
    throw InvalidChromosome("chromosome length " + std::to_string(c.size()) + " does not match " +
                            std::to_string(data_.n_features()) + " features");
  }
  return train_chain(StagePlan::from_chromosome(c), data_, settings_.threshold, *cache_);
}

Measurement ChainEvaluator::evaluate(const Chromosome& c) const {
  return measure(build_chain(c), data_, settings_.split);
}

ChainEvaluator ChainEvaluator::with(EvaluatorSettings settings) const {
  return ChainEvaluator(data_, settings, cache_);
}

std::vector<Measurement> MemoizedObjectives::evaluate_all(std::span<const Chromosome> population,
                                                          int threads) {
  std::vector<Chromosome> pending;
  std::unordered_set<Chromosome, ChromosomeHash> queued;
  for (const auto& c : population) {
    if (c.empty() || has_gaps(c)) {
      throw InvalidChromosome("only canonical chromosomes may be evaluated: " + c.to_string());
    }
    if (memo_.contains(c)) continue;
    if (queued.insert(c).second) pending.push_back(c);
  }
  if (!pending.empty()) {
    const auto fresh = threads == 1 ? evaluate_batch_serial(source_, pending)
                                    : evaluate_batch(source_, pending, threads);
    for (std::size_t i = 0; i < pending.size(); ++i) memo_.emplace(pending[i], fresh[i]);
  }
  std::vector<Measurement> out;
  out.reserve(population.size());
  for (const auto& c : population) out.push_back(memo_.at(c));
  return out;
}

} // namespace bsc
