#include "bsc/parallel.hpp"

#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bsc {

int resolve_threads(int requested) {
#ifdef _OPENMP
  return requested > 0 ? requested : omp_get_max_threads();
#else
  (void)requested;
  return 1;
#endif
}

std::vector<Measurement> evaluate_batch_serial(const ObjectiveSource& source,
                                               std::span<const Chromosome> batch) {
  std::vector<Measurement> out;
  out.reserve(batch.size());
  for (const auto& c : batch) out.push_back(source.evaluate(c));
  return out;
}

std::vector<Measurement> evaluate_batch(const ObjectiveSource& source,
                                        std::span<const Chromosome> batch, int threads) {
  std::vector<Measurement> out(batch.size());
  const auto count = static_cast<long long>(batch.size());
  std::exception_ptr failure;
  const int workers = resolve_threads(threads);
  (void)workers;
#pragma omp parallel for schedule(dynamic, 4) num_threads(workers)
  for (long long i = 0; i < count; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = source.evaluate(batch[static_cast<std::size_t>(i)]);
    } catch (...) {
#pragma omp critical(bsc_batch_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

} // namespace bsc
