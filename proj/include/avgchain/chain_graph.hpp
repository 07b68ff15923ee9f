#pragma once

#include <optional>
#include <vector>

#include "avgchain/report.hpp"
#include "avgchain/system.hpp"

namespace avgchain {

// Directed graph on the states with an edge u -> v iff W[u][v] < delta.
struct ThresholdGraph {
  Scalar delta;
  int n = 0;
  std::vector<char> adj;               // n x n
  std::vector<std::vector<int>> succ;  // ascending successor lists

  bool edge(int u, int v) const { return adj[static_cast<size_t>(u) * n + v] != 0; }
};

ThresholdGraph delta_graph(const MetricSystem& sys, const Scalar& delta);

// Shortest delta-chain from x to y (length >= 1), if any.
std::optional<StepSequence> find_delta_chain(const MetricSystem& sys, int x, int y,
                                             const Scalar& delta);

struct ComponentPartition {
  Scalar delta;
  std::vector<int> recurrent;                // ascending
  std::vector<std::vector<int>> components;  // each ascending, ordered by least member
};
ComponentPartition chain_components(const MetricSystem& sys, const Scalar& delta);

DecisionReport is_chain_transitive(const MetricSystem& sys, const Scalar& delta);
DecisionReport is_chain_transitive_all_delta(const MetricSystem& sys);
DecisionReport is_chain_mixing(const MetricSystem& sys, const Scalar& delta);

// Exact orbit-based notions; these need an explicit map.
DecisionReport is_top_transitive(const MetricSystem& sys);
DecisionReport is_top_mixing(const MetricSystem& sys);

struct HitProfile {
  int x = 0;
  int y = 0;
  std::vector<long> hits;  // n < horizon with d(f^n(x), y) < eps
  long max_gap = 0;
  bool syndetic_at_horizon = false;
};
struct ErgodicProfile {
  long horizon = 0;
  Scalar eps;
  std::vector<HitProfile> pairs;  // ordered pairs, row-major
  bool strongly_ergodic_at_horizon = false;
};
// Hit-time profile of N(x, y, eps) = {n : d(f^n(x), y) < eps} truncated at
// `horizon`, at the finest useful eps (the minimum positive distance).
ErgodicProfile strongly_ergodic_profile(const MetricSystem& sys, long horizon);
ErgodicProfile strongly_ergodic_profile(const MetricSystem& sys, long horizon, const Scalar& eps);

std::vector<int> minimal_states(const MetricSystem& sys);

// Internals reused by other modules and tests.
std::vector<int> scc_ids(const ThresholdGraph& g);  // component id per node
long cycle_length_gcd(const ThresholdGraph& g, const std::vector<int>& members);

}  // namespace avgchain
