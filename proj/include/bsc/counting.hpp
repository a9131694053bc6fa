#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace bsc {

using BigInt = boost::multiprecision::cpp_int;

/// Number of ordered k-partitions of an n-set, k! * S2(n, k), computed by
/// inclusion-exclusion. Requires 1 <= k <= n.
BigInt ordered_partition_count(int n, int k);

/// Number of solutions with 1..k stages over n features.
BigInt search_space_size(int n, int k);

/// Stirling number of the second kind by the triangular recurrence.
BigInt stirling2(int n, int k);

} // namespace bsc
