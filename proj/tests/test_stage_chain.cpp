#include <doctest.h>

#include <random>

#include "bsc/error.hpp"
#include "bsc/objectives.hpp"
#include "bsc/stage_chain.hpp"
#include "support.hpp"

namespace {

const std::vector<double> kCosts{1, 2, 4, 8};
const std::vector<double> kRow{0.0, 0.0, 0.0, 0.0};

} // namespace

TEST_CASE("stub chain exits at the first confident stage") {
  const auto chain = test::stub_chain({{0, 1, 2, 3}}, 4, {0.9}, 0.75, kCosts);
  const auto t = bsc::evaluate_input(chain, kRow);
  CHECK(t.exit_stage == 1);
  CHECK(t.accepted);
  CHECK(t.label == 1);
  CHECK(t.incurred_cost == 15.0);
}

TEST_CASE("stub chain rejects at the terminal stage and charges every stage") {
  const auto chain = test::stub_chain({{0, 1}, {2, 3}}, 4, {0.6, 0.7}, 0.75, kCosts);
  const auto t = bsc::evaluate_input(chain, kRow);
  CHECK(t.exit_stage == 2);
  CHECK_FALSE(t.accepted);
  CHECK_FALSE(t.label.has_value());
  CHECK(t.incurred_cost == 1.0 + 2.0 + 4.0 + 8.0);
}

TEST_CASE("later stages are never charged after an early exit") {
  const auto chain = test::stub_chain({{0}, {1, 2}, {3}}, 4, {0.6, 0.8, 0.99}, 0.75, kCosts);
  const auto t = bsc::evaluate_input(chain, kRow);
  CHECK(t.exit_stage == 2);
  CHECK(t.accepted);
  CHECK(t.incurred_cost == 1.0 + 2.0 + 4.0);
}

TEST_CASE("confidence equal to the threshold accepts") {
  const auto chain = test::stub_chain({{0, 1, 2, 3}}, 4, {0.5}, 0.5, kCosts);
  const auto t = bsc::evaluate_input(chain, kRow);
  CHECK(t.confidence == 0.5);
  CHECK(t.accepted);
}

TEST_CASE("stage plans enforce disjoint, covering, non-empty stages") {
  CHECK_THROWS_AS(bsc::StagePlan({{0, 1}, {1, 2}}, 3), bsc::DomainError);
  CHECK_THROWS_AS(bsc::StagePlan({{0}, {}, {1, 2}}, 3), bsc::DomainError);
  CHECK_THROWS_AS(bsc::StagePlan({{0}, {2}}, 3), bsc::DomainError);
  CHECK_THROWS_AS(bsc::StagePlan::from_chromosome({0, 2, 2}), bsc::InvalidChromosome);

  const bsc::StagePlan plan({{2}, {0, 3}, {1}}, 4);
  REQUIRE(plan.cumulative().size() == 3);
  CHECK(plan.cumulative()[0] == std::vector<int>{2});
  CHECK(plan.cumulative()[1] == std::vector<int>{0, 2, 3});
  CHECK(plan.cumulative()[2] == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("chains reject models that do not match their cumulative sets") {
  bsc::StagePlan plan({{0}, {1}}, 2);
  std::vector<std::shared_ptr<const bsc::LogisticModel>> models{test::constant_model({0}, 0.7),
                                                                test::constant_model({1}, 0.7)};
  CHECK_THROWS_AS(bsc::ClassifierChain(plan, models, 0.75, std::vector<double>{1, 1}), bsc::DomainError);
}

TEST_CASE("trained chains: rejection only at the terminal stage, monotone cost and threshold") {
  const auto data = test::desk_instance();
  bsc::StageModelCache cache(data, 1.0);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<int> genes(6);
    for (auto& g : genes) g = static_cast<int>(rng() % 4);
    const auto c = bsc::compress(bsc::Chromosome(genes));
    const auto plan = bsc::StagePlan::from_chromosome(c);
    const auto low = bsc::train_chain(plan, data, 0.6, cache);
    const auto high = bsc::train_chain(plan, data, 0.8, cache);
    std::vector<double> prefix;
    double running = 0.0;
    for (double s : low.stage_costs()) prefix.push_back(running += s);
    for (auto r : data.splits.validation) {
      const auto a = bsc::evaluate_input(low, data.row(r));
      const auto b = bsc::evaluate_input(high, data.row(r));
      if (!a.accepted) CHECK(a.exit_stage == static_cast<int>(plan.size()));
      CHECK(a.accepted == a.label.has_value());
      CHECK(a.incurred_cost == prefix[static_cast<std::size_t>(a.exit_stage - 1)]);
      CHECK(b.exit_stage >= a.exit_stage);
    }
  }
}

TEST_CASE("shared cache and fresh training give the same chain") {
  const auto data = test::desk_instance();
  const auto plan = bsc::StagePlan::from_chromosome({0, 1, 1, 2, 0, 2});
  bsc::StageModelCache cache(data, 1.0);
  const auto cached = bsc::train_chain(plan, data, 0.7, cache);
  const auto fresh = bsc::train_chain(plan, data, 1.0, 0.7);
  CHECK(cache.size() == 3);
  for (std::size_t j = 0; j < plan.size(); ++j) {
    CHECK(cached.model(j).weights() == fresh.model(j).weights());
    CHECK(cached.model(j).intercepts() == fresh.model(j).intercepts());
  }
}
