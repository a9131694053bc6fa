#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace bsc {

using Gene = int;

/// Stage assignment per feature: genes[i] = s puts feature i into stage s+1.
/// Any non-negative gene vector is representable; the canonical form has no
/// empty stage (see compress()).
class Chromosome {
public:
  Chromosome() = default;
  explicit Chromosome(std::vector<Gene> genes);
  Chromosome(std::initializer_list<Gene> genes);

  /// Single-stage solution [0,...,0].
  static Chromosome one_stage(std::size_t n_features);

  std::size_t size() const noexcept { return genes_.size(); }
  bool empty() const noexcept { return genes_.empty(); }
  Gene operator[](std::size_t i) const { return genes_[i]; }
  const std::vector<Gene>& genes() const noexcept { return genes_; }
  std::vector<Gene>& mutable_genes() noexcept { return genes_; }

  /// Dash-joined genes, e.g. "0-0-2-1".
  std::string to_string() const;
  static Chromosome parse(std::string_view text);

  friend bool operator==(const Chromosome&, const Chromosome&) = default;
  friend auto operator<=>(const Chromosome&, const Chromosome&) = default;

private:
  std::vector<Gene> genes_;
};

/// max gene + 1. Throws InvalidChromosome on an empty gene vector.
int stage_count(const Chromosome& c);

/// True when some stage index in [0, max gene] has no feature.
bool has_gaps(const Chromosome& c);

/// Relabel stages so the used indices become 0..m-1, preserving their order.
Chromosome compress(const Chromosome& c);

/// Feature indices per stage, in ascending feature order.
std::vector<std::vector<int>> stages_of(const Chromosome& c);

struct ChromosomeHash {
  std::size_t operator()(const Chromosome& c) const noexcept;
};

} // namespace bsc
