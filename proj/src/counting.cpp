#include "bsc/counting.hpp"

#include <string>
#include <vector>

#include "bsc/error.hpp"

namespace bsc {
namespace {

void check_domain(int n, int k) {
  if (k < 1 || k > n) {
    throw DomainError("partition counts need 1 <= k <= n (got n=" + std::to_string(n) +
                      ", k=" + std::to_string(k) + ")");
  }
}

BigInt binomial(int n, int r) {
  BigInt c = 1;
  for (int i = 1; i <= r; ++i) {
    c *= n - r + i;
    c /= i;
  }
  return c;
}

} // namespace

BigInt ordered_partition_count(int n, int k) {
  check_domain(n, k);
  BigInt total = 0;
  for (int i = 0; i <= k; ++i) {
    BigInt term = binomial(k, i) * boost::multiprecision::pow(BigInt(i), static_cast<unsigned>(n));
    if ((k - i) % 2 == 0) {
      total += term;
    } else {
      total -= term;
    }
  }
  return total;
}

BigInt search_space_size(int n, int k) {
  check_domain(n, k);
  BigInt total = 0;
  for (int j = 1; j <= k; ++j) total += ordered_partition_count(n, j);
  return total;
}

BigInt stirling2(int n, int k) {
  if (n < 0 || k < 0) throw DomainError("stirling2 needs non-negative arguments");
  if (k > n) return 0;
  // row[j] holds S2(m, j) for the current m
  std::vector<BigInt> row(static_cast<std::size_t>(k) + 1, 0);
  row[0] = 1;
  for (int m = 1; m <= n; ++m) {
    for (int j = std::min(m, k); j >= 1; --j) {
      row[static_cast<std::size_t>(j)] =
          j * row[static_cast<std::size_t>(j)] + row[static_cast<std::size_t>(j) - 1];
    }
    row[0] = 0;
  }
  return row[static_cast<std::size_t>(k)];
}

} // namespace bsc
