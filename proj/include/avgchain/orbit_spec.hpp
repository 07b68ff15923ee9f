#pragma once

#include <functional>
#include <vector>

#include "avgchain/system.hpp"

namespace avgchain {

// Structured description of an infinite state sequence whose Cesaro behavior
// is computable exactly:
//  - Explicit: a finite prefix, nothing known beyond it.
//  - EventuallyPeriodic: head then a repeating cycle.
//  - BlockDoubling (orbit alternation rule): block n is the 2^n-step true
//    orbit of `first` followed by the 2^n-step true orbit of `second`;
//    registered checkpoints are the block boundaries K_n = 2(2^n - 1).
struct OrbitSpec {
  enum class Kind { Explicit, EventuallyPeriodic, BlockDoubling };
  Kind kind = Kind::Explicit;
  std::vector<int> head;   // Explicit: whole prefix; EventuallyPeriodic: head
  std::vector<int> cycle;  // EventuallyPeriodic only
  int first = -1;          // BlockDoubling only
  int second = -1;
  int depth = 20;  // BlockDoubling: default materialization depth for traces
};

OrbitSpec explicit_spec(std::vector<int> states);
OrbitSpec eventually_periodic_spec(std::vector<int> head, std::vector<int> cycle);
OrbitSpec block_doubling_spec(int first, int second, int depth = 20);

bool spec_bounded(const OrbitSpec& spec);      // only Explicit specs are
long spec_prefix_limit(const OrbitSpec& spec); // Explicit: length; else huge

// Streaming materialization of the first n states; deterministic and
// prefix-stable. BlockDoubling needs the system's explicit map.
void for_each_spec_state(const MetricSystem& sys, const OrbitSpec& spec, long n,
                         const std::function<void(long, int)>& fn);
std::vector<int> materialize(const MetricSystem& sys, const OrbitSpec& spec, long n);

// limsup of prefix averages, reported as a bracket [lo, hi]. Exact (lo == hi)
// for eventually-periodic specs (the averages converge to the cycle mean) and
// for block-doubling specs, where the value is the limsup along the
// registered checkpoint subsequence K_n, computed in closed form from the
// eventual periodicity of 2^n modulo the orbit periods. Explicit prefixes
// only bracket: [max(0, a - D), min(D, a + D)] around the observed tail
// average a, D the diameter.
struct LimsupResult {
  Scalar lo, hi;
  bool exact = false;
  std::vector<std::pair<long, Scalar>> trace;  // (prefix length, average)

  const Scalar& value() const;  // pre: exact
};

// Step errors e_i = W[x_i][x_{i+1}] of the spec's sequence.
LimsupResult step_error_limsup(const MetricSystem& sys, const OrbitSpec& spec);
// Mismatch m_i = d(f^i(z), x_i) against the true orbit of z (explicit map).
LimsupResult mismatch_limsup(const MetricSystem& sys, const OrbitSpec& spec, int z);

std::vector<int> chain_join(const std::vector<std::vector<int>>& parts);

// The two-state swap benchmark: alternation spec between the two fixed
// labels, its checkpoint stats at depth n in closed form, and the same stats
// recounted from the materialized prefix (both must agree).
struct AlternationStats {
  long checkpoint = 0;  // K_n
  Scalar step_avg;      // 2(n-1) / K_n
  Scalar mismatch_avg_first;  // against the true orbit of `first`
};
OrbitSpec example_alternation_spec(const MetricSystem& sys, int depth = 20);
AlternationStats alternation_checkpoint_stats(const MetricSystem& sys, long n);
AlternationStats alternation_checkpoint_stats_closed_form(long n);

}  // namespace avgchain
