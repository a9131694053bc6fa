#pragma once

#include <array>
#include <span>
#include <vector>

namespace bsc {

/// Objective triple, every component maximised.
using Objectives3 = std::array<double, 3>;

/// a >= b in every component and a > b in at least one.
bool dominates(const Objectives3& a, const Objectives3& b) noexcept;

/// Non-domination level per member: 0 for the first peeled front E0, 1 for
/// E1, and so on.
std::vector<int> nondomination_levels(std::span<const Objectives3> points);

/// rank = t* - t, so the first front carries the largest value.
std::vector<int> pareto_rank(std::span<const Objectives3> points);

/// Indices of the non-dominated members, ascending. Sort-based, suited to
/// large inputs with small fronts.
std::vector<std::size_t> non_dominated(std::span<const Objectives3> points);

} // namespace bsc
