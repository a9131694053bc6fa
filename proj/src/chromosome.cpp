#include "bsc/chromosome.hpp"

#include <algorithm>
#include <charconv>

#include "bsc/error.hpp"

namespace bsc {

Chromosome::Chromosome(std::vector<Gene> genes) : genes_(std::move(genes)) {
  for (Gene g : genes_) {
    if (g < 0) throw InvalidChromosome("negative stage index in chromosome");
  }
}

Chromosome::Chromosome(std::initializer_list<Gene> genes)
    : Chromosome(std::vector<Gene>(genes)) {}

Chromosome Chromosome::one_stage(std::size_t n_features) {
  return Chromosome(std::vector<Gene>(n_features, 0));
}

std::string Chromosome::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < genes_.size(); ++i) {
    if (i) out += '-';
    out += std::to_string(genes_[i]);
  }
  return out;
}

Chromosome Chromosome::parse(std::string_view text) {
  std::vector<Gene> genes;
  while (!text.empty()) {
    auto dash = text.find('-');
    auto token = text.substr(0, dash);
    Gene value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size() || token.empty()) {
      throw InvalidChromosome("cannot parse chromosome token '" + std::string(token) + "'");
    }
    genes.push_back(value);
    if (dash == std::string_view::npos) break;
    text.remove_prefix(dash + 1);
    if (text.empty()) throw InvalidChromosome("trailing '-' in chromosome");
  }
  if (genes.empty()) throw InvalidChromosome("empty chromosome");
  return Chromosome(std::move(genes));
}

int stage_count(const Chromosome& c) {
  if (c.empty()) throw InvalidChromosome("stage_count of empty chromosome");
  return *std::max_element(c.genes().begin(), c.genes().end()) + 1;
}

bool has_gaps(const Chromosome& c) {
  if (c.empty()) return false;
  const int stages = stage_count(c);
  std::vector<bool> used(static_cast<std::size_t>(stages), false);
  for (Gene g : c.genes()) used[static_cast<std::size_t>(g)] = true;
  return std::find(used.begin(), used.end(), false) != used.end();
}

Chromosome compress(const Chromosome& c) {
  if (!has_gaps(c)) return c;
  std::vector<Gene> unique = c.genes();
  std::sort(unique.begin(), unique.end());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
  std::vector<Gene> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    out[i] = static_cast<Gene>(
        std::lower_bound(unique.begin(), unique.end(), c[i]) - unique.begin());
  }
  return Chromosome(std::move(out));
}

std::vector<std::vector<int>> stages_of(const Chromosome& c) {
  std::vector<std::vector<int>> stages(static_cast<std::size_t>(stage_count(c)));
  for (std::size_t i = 0; i < c.size(); ++i) {
    stages[static_cast<std::size_t>(c[i])].push_back(static_cast<int>(i));
  }
  return stages;
}

std::size_t ChromosomeHash::operator()(const Chromosome& c) const noexcept {
  // FNV-1a over the gene values
  std::size_t h = 1469598103934665603ULL;
  for (Gene g : c.genes()) {
    h ^= static_cast<std::size_t>(g);
    h *= 1099511628211ULL;
  }
  return h;
}

} // namespace bsc
