#include <doctest.h>

#include <cmath>
#include <random>

#include "bsc/evolution.hpp"
#include "bsc/pareto.hpp"

namespace {

std::vector<bsc::Objectives3> random_points(std::mt19937_64& rng, std::size_t count, int grid) {
  // coarse grid so ties and multi-level fronts both occur
  std::uniform_int_distribution<int> cell(1, grid);
  std::vector<bsc::Objectives3> pts(count);
  for (auto& p : pts) {
    for (auto& x : p) x = static_cast<double>(cell(rng)) / grid;
  }
  return pts;
}

} // namespace

TEST_CASE("rank example with two levels") {
  const std::vector<bsc::Objectives3> pts{{1, 1, 1}, {0.5, 0.5, 0.5}, {1, 0, 0}};
  CHECK(bsc::pareto_rank(pts) == std::vector<int>{1, 0, 0});
  CHECK(bsc::nondomination_levels(pts) == std::vector<int>{0, 1, 1});
}

TEST_CASE("degenerate rank inputs") {
  const std::vector<bsc::Objectives3> one{{0.2, 0.3, 0.4}};
  CHECK(bsc::pareto_rank(one) == std::vector<int>{0});
  const std::vector<bsc::Objectives3> same(5, {0.5, 0.5, 0.5});
  CHECK(bsc::pareto_rank(same) == std::vector<int>(5, 0));
  CHECK(bsc::non_dominated(same).size() == 5);
  CHECK_FALSE(bsc::dominates(same[0], same[1]));
}

TEST_CASE("levels agree with a pairwise domination oracle") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto pts = random_points(rng, 1 + rng() % 60, 5);
    const auto levels = bsc::nondomination_levels(pts);
    const auto ranks = bsc::pareto_rank(pts);
    const int top = *std::max_element(levels.begin(), levels.end());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      CHECK(ranks[i] == top - levels[i]);
      // a member of level t > 0 is dominated by someone at level t-1 and
      // nobody at its own level or deeper dominates it
      bool parent = levels[i] == 0;
      for (std::size_t j = 0; j < pts.size(); ++j) {
        if (!bsc::dominates(pts[j], pts[i])) continue;
        CHECK(levels[j] < levels[i]);
        parent = parent || levels[j] == levels[i] - 1;
      }
      CHECK(parent);
    }
    std::vector<std::size_t> first;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (levels[i] == 0) first.push_back(i);
    }
    CHECK(bsc::non_dominated(pts) == first);
  }
}

TEST_CASE("fitness examples") {
  const std::vector<int> flat{0, 0};
  const std::vector<double> scalars{0.7, 1.2};
  CHECK(bsc::fitness(flat, scalars, 0.01) == scalars);

  const std::vector<int> ranks{0, 1};
  const std::vector<double> e{1.0, 1.5};
  const auto f = bsc::fitness(ranks, e, 0.01);
  CHECK(f[0] == 1.0);
  CHECK(f[1] == doctest::Approx(2.265).epsilon(1e-12));

  const std::vector<int> sole{0};
  const std::vector<double> unit{std::sqrt(3.0)};
  CHECK(bsc::fitness(sole, unit, 0.01)[0] == doctest::Approx(1.7320508));
}

TEST_CASE("higher rank always wins and ties order by the aggregate") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t size = 2 + rng() % 120;
    std::vector<bsc::Objectives3> pts(size);
    for (auto& p : pts) {
      for (auto& x : p) x = 1.0 - u(rng); // (0, 1]
    }
    const auto ranks = bsc::pareto_rank(pts);
    std::vector<double> e;
    for (const auto& p : pts) e.push_back(std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]));
    const auto f = bsc::fitness(ranks, e, 0.01);
    const double gamma = *std::max_element(e.begin(), e.end()) / *std::min_element(e.begin(), e.end()) + 0.01;
    for (std::size_t a = 0; a < size; ++a) {
      for (std::size_t b = 0; b < size; ++b) {
        if (ranks[a] < ranks[b]) {
          CHECK(f[a] < f[b]);
          CHECK(std::pow(gamma, ranks[b] - ranks[a]) > e[a] / e[b]);
        } else if (ranks[a] == ranks[b] && e[a] < e[b]) {
          CHECK(f[a] < f[b]);
        }
      }
    }
  }
}
