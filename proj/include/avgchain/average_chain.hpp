#pragma once

#include <utility>
#include <vector>

#include "avgchain/report.hpp"
#include "avgchain/system.hpp"

namespace avgchain {

// Min-plus walk costs from one source over the complete cost digraph:
// cost(t, v) = cheapest total step error of a t-step walk source -> v.
struct WalkCostTable {
  int source = 0;
  long horizon = 0;
  int n = 0;
  std::vector<Scalar> g;    // horizon x n, row t-1 holds costs of t-step walks
  std::vector<int> parent;  // same shape; predecessor on an optimal walk

  const Scalar& cost(long t, int v) const { return g[static_cast<size_t>(t - 1) * n + v]; }
  std::vector<int> walk_to(long t, int v) const;  // states, length t+1
};
WalkCostTable min_walk_costs(const MetricSystem& sys, int source, long horizon);

struct MeanCycleResult {
  Scalar mu;
  std::vector<int> cycle;  // witness cycle whose mean equals mu
  bool exact = true;
};
// Minimum cycle mean of the complete cost digraph (Karp), with a verified
// witness cycle extracted from a tight-edge subgraph.
MeanCycleResult min_mean_cycle_table(const std::vector<Scalar>& w, int n, bool exact);
MeanCycleResult min_mean_cycle(const MetricSystem& sys);

// Checks one finite sequence: is there an N with all prefix averages A_m < delta
// for m >= N? Equivalently (each A_m uses the same total) the full average
// A_n < delta; the minimal such N is reported.
DecisionReport is_average_chain(const MetricSystem& sys, const std::vector<int>& states,
                                const Scalar& delta);

// Does some delta-average-chain run from x to y? Complete decision rule:
// either a short walk (length <= |X|) already has average < delta, or the
// minimum cycle mean is < delta and a walk padded with enough cycle loops
// does. On a true verdict a concrete witness chain is built and re-verified.
DecisionReport has_average_chain(const MetricSystem& sys, int x, int y, const Scalar& delta);

DecisionReport is_average_chain_transitive(const MetricSystem& sys, const Scalar& delta);
DecisionReport is_average_chain_mixing(const MetricSystem& sys, const Scalar& delta);
DecisionReport is_totally_average_chain_transitive(const MetricSystem& sys, const Scalar& delta,
                                                   long kmax);

// Interleaves a delta-average-chain of f^k with true-orbit segments, giving a
// delta-average-chain of f with the same endpoints.
StepSequence flatten_power_chain(const MetricSystem& sys, long k, const StepSequence& chain_k,
                                 const Scalar& delta);

// Subsamples every k-th state of a delta/(k L^(k-1))-average-chain of f,
// giving a delta-average-chain of f^k (L = Lipschitz constant, >= 1).
StepSequence subsample_chain_for_power(const MetricSystem& sys, long k,
                                       const StepSequence& chain_f, const Scalar& delta);
Scalar subsample_tolerance(const MetricSystem& sys, long k, const Scalar& delta);

// Pairs two equal-length delta/2-average-chains of the same system into a
// delta-average-chain of the product system under the max metric.
struct ProductChain {
  MetricSystem system;
  StepSequence chain;
};
ProductChain pair_chains_product(const MetricSystem& sys, const StepSequence& a,
                                 const StepSequence& b, const Scalar& delta);

// Equal-length delta/2-average-chains w: a -> c and z: b -> d whose pairing
// is a delta-average-chain of the product: w extends an a -> c chain by loops
// at c, z follows the true orbit of b and then a flattened chain of f^p.
struct ProductWitness {
  StepSequence w, z;
  ProductChain paired;
  long loop_len = 0;
  long loop_reps = 0;
};
ProductWitness product_transitive_witness(const MetricSystem& sys, std::pair<int, int> from,
                                          std::pair<int, int> to, const Scalar& delta,
                                          long kmax_loop = 16);

}  // namespace avgchain
