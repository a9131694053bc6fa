#include <doctest.h>

#include <cstdint>
#include <limits>
#include <set>

#include "bsc/chromosome.hpp"
#include "bsc/counting.hpp"
#include "bsc/error.hpp"

using bsc::BigInt;

namespace {

// Independent reference: compress every vector of {0..k-1}^n and count the
// distinct canonical forms.
std::size_t brute_force_solutions(int n, int k) {
  std::set<std::vector<int>> seen;
  std::vector<int> genes(static_cast<std::size_t>(n), 0);
  while (true) {
    seen.insert(bsc::compress(bsc::Chromosome(genes)).genes());
    int i = 0;
    while (i < n && ++genes[static_cast<std::size_t>(i)] == k) genes[static_cast<std::size_t>(i++)] = 0;
    if (i == n) break;
  }
  return seen.size();
}

// Ordered partitions with exactly k non-empty blocks, by brute force.
std::size_t brute_force_ordered(int n, int k) {
  std::size_t count = 0;
  std::vector<int> genes(static_cast<std::size_t>(n), 0);
  while (true) {
    std::set<int> used(genes.begin(), genes.end());
    if (static_cast<int>(used.size()) == k) ++count;
    int i = 0;
    while (i < n && ++genes[static_cast<std::size_t>(i)] == k) genes[static_cast<std::size_t>(i++)] = 0;
    if (i == n) break;
  }
  return count;
}

BigInt factorial(int k) {
  BigInt f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

} // namespace

TEST_CASE("ordered partition counts") {
  CHECK(bsc::ordered_partition_count(3, 2) == 6);
  CHECK(bsc::ordered_partition_count(4, 3) == 36);
  for (int n = 1; n <= 9; ++n) CHECK(bsc::ordered_partition_count(n, 1) == 1);
  for (int n = 1; n <= 7; ++n) {
    for (int k = 1; k <= n; ++k) CHECK(bsc::ordered_partition_count(n, k) == brute_force_ordered(n, k));
  }
}

TEST_CASE("search space sizes") {
  CHECK(bsc::search_space_size(3, 2) == 7);
  CHECK(bsc::search_space_size(4, 3) == 51);
  CHECK(bsc::search_space_size(6, 3) == 603);
}

TEST_CASE("search space size matches exhaustive enumeration for n <= 8, k <= 4") {
  for (int n = 1; n <= 8; ++n) {
    for (int k = 1; k <= std::min(n, 4); ++k) {
      CAPTURE(n);
      CAPTURE(k);
      CHECK(bsc::search_space_size(n, k) == brute_force_solutions(n, k));
    }
  }
}

TEST_CASE("ordered partition count follows the Stirling recurrence scaled by k!") {
  for (int n = 2; n <= 40; ++n) {
    for (int k = 1; k <= std::min(n, 12); ++k) {
      const BigInt s2 = k == 1 ? BigInt(1) : BigInt(k) * bsc::stirling2(n - 1, k) + bsc::stirling2(n - 1, k - 1);
      CHECK(bsc::stirling2(n, k) == s2);
      CHECK(bsc::ordered_partition_count(n, k) == factorial(k) * s2);
    }
  }
}

TEST_CASE("ordered partition count needs exact arithmetic near n = 50, k = 10") {
  const BigInt v = bsc::ordered_partition_count(50, 10);
  CHECK(v > BigInt(std::numeric_limits<std::uint64_t>::max()));
  CHECK(v == factorial(10) * bsc::stirling2(50, 10));
}

TEST_CASE("search space approaches k^n") {
  const BigInt size = bsc::search_space_size(30, 3);
  BigInt power = 1;
  for (int i = 0; i < 30; ++i) power *= 3;
  // 0.99 <= size / 3^30 <= 1, in integers
  CHECK(size * 100 >= power * 99);
  CHECK(size <= power);
}

TEST_CASE("counting rejects k outside [1, n]") {
  CHECK_THROWS_AS(bsc::ordered_partition_count(3, 4), bsc::DomainError);
  CHECK_THROWS_AS(bsc::ordered_partition_count(3, 0), bsc::DomainError);
  CHECK_THROWS_AS(bsc::search_space_size(2, 3), bsc::DomainError);
}
