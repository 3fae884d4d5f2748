#pragma once

// Exhaustive retiming search for small netlists, independent of the
// W/D + difference-constraint solver.

#include <optional>
#include <vector>

#include "cslow/netlist.hpp"

namespace oracle {

/// Longest register-free path by memoized DFS (no topological sort).
/// Returns nullopt when a zero-weight cycle exists.
std::optional<int> period_of(const cslow::net::Netlist& n, const std::vector<int>& weights);

struct BruteForceResult {
  int period = 0;
  std::vector<int> lag;
  long evaluated = 0;
};

/// Minimum period over all lag vectors with gate lags in [-bound, bound]
/// and I/O lags fixed at 0.
BruteForceResult brute_force_min_period(const cslow::net::Netlist& n, int bound);

}  // namespace oracle
