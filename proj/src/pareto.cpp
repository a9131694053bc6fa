#include "bsc/pareto.hpp"

#include <algorithm>
#include <numeric>

namespace bsc {

bool dominates(const Objectives3& a, const Objectives3& b) noexcept {
  bool strictly = false;
  for (std::size_t i = 0; i < 3; ++i) {
    if (a[i] < b[i]) return false;
    if (a[i] > b[i]) strictly = true;
  }
  return strictly;
}

std::vector<int> nondomination_levels(std::span<const Objectives3> points) {
  const std::size_t n = points.size();
  std::vector<std::vector<std::size_t>> dominated_by_me(n);
  std::vector<std::size_t> dominators(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (dominates(points[i], points[j])) {
        dominated_by_me[i].push_back(j);
        ++dominators[j];
      } else if (dominates(points[j], points[i])) {
        dominated_by_me[j].push_back(i);
        ++dominators[i];
      }
    }
  }
  std::vector<int> level(n, -1);
  std::vector<std::size_t> current;
  for (std::size_t i = 0; i < n; ++i) {
    if (dominators[i] == 0) current.push_back(i);
  }
  int t = 0;
  while (!current.empty()) {
    std::vector<std::size_t> next;
    for (auto i : current) {
      level[i] = t;
      for (auto j : dominated_by_me[i]) {
        if (--dominators[j] == 0) next.push_back(j);
      }
    }
    current.swap(next);
    ++t;
  }
  return level;
}

std::vector<int> pareto_rank(std::span<const Objectives3> points) {
  auto level = nondomination_levels(points);
  if (level.empty()) return level;
  const int last = *std::max_element(level.begin(), level.end());
  for (auto& l : level) l = last - l;
  return level;
}

std::vector<std::size_t> non_dominated(std::span<const Objectives3> points) {
  // A dominator always precedes its victims in descending lexicographic order.
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return points[a] > points[b]; });
  std::vector<std::size_t> front;
  for (auto i : order) {
    const bool beaten = std::any_of(front.begin(), front.end(),
                                    [&](std::size_t f) { return dominates(points[f], points[i]); });
    if (!beaten) front.push_back(i);
  }
  std::sort(front.begin(), front.end());
  return front;
}

} // namespace bsc
