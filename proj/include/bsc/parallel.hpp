#pragma once

#include <span>
#include <vector>

#include "bsc/objectives.hpp"

namespace bsc {

/// Number of workers the OpenMP runtime will use for `requested`
/// (0 = runtime default).
int resolve_threads(int requested);

/// Reference implementation: evaluates chromosomes one after another.
std::vector<Measurement> evaluate_batch_serial(const ObjectiveSource& source,
                                               std::span<const Chromosome> batch);

/// OpenMP kernel over the batch. Results are bit-identical to the serial
/// reference since each evaluation is a pure function of its chromosome.
std::vector<Measurement> evaluate_batch(const ObjectiveSource& source,
                                        std::span<const Chromosome> batch, int threads = 0);

} // namespace bsc
