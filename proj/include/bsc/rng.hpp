#pragma once

#include <cstdint>
#include <random>

namespace bsc {

using Rng = std::mt19937_64;

/// Child stream for (seed, stream, index). Streams are independent of the
/// order in which they are requested, so slot i of generation h draws the
/// same numbers whether the generation is built serially or in parallel.
inline Rng derive_stream(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

} // namespace bsc
