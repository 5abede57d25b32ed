#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rsched/model.hpp"

namespace rsched {

// Offline optimum of max_j w_j C_j on one machine with release dates.
//
// With restarts allowed offline, an optimal schedule is still a permutation
// run with eager starts: an interrupted segment is wasted work whose removal
// only moves later completions earlier, and closing an idle gap that precedes
// a start (down to that job's release) never delays any completion. So the
// search ranges over job orders only.

/// Objective of running `order` with eager starts,
/// C_k = max(r_k, C_{k-1}) + p_k. Throws NotAPermutation.
double eval_order(const Instance& instance, std::span<const JobId> order);

struct OptResult {
  double value = 0.0;
  std::vector<JobId> order;
  std::uint64_t explored = 0;
  /// False when the node limit cut the search short; value is then the best
  /// incumbent found.
  bool optimal = true;
};

inline constexpr std::uint64_t kDefaultNodeLimit = 10'000'000;

/// Depth-first branch and bound over job orders, seeded with the
/// heaviest-first order. Throws EmptyInstance, ConfigError (node_limit == 0).
OptResult optimal_wc_max(const Instance& instance,
                         std::uint64_t node_limit = kDefaultNodeLimit);

} // namespace rsched
