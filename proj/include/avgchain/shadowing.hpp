#pragma once

#include <optional>
#include <string>
#include <vector>

#include "avgchain/orbit_spec.hpp"
#include "avgchain/report.hpp"
#include "avgchain/system.hpp"

namespace avgchain {

// Finite membership checks on concrete sequences.
bool check_pseudo_orbit(const MetricSystem& sys, const std::vector<int>& states,
                        const Scalar& delta);
// Sliding-window average condition: every window of length >= window_min
// (window_min >= 1) has step-error average < delta.
bool check_average_pseudo_orbit(const MetricSystem& sys, const std::vector<int>& states,
                                const Scalar& delta, long window_min);
// Almost-membership for a spec: verdict from the step-error limsup bracket.
DecisionReport check_almost_average_pseudo_orbit(const MetricSystem& sys, const OrbitSpec& spec,
                                                 const Scalar& delta);

struct ShadowReport {
  int z = -1;
  Scalar epsilon;
  LimsupResult mismatch;
  Verdict verdict = Verdict::Indeterminate;  // shadowed / not-shadowed / indeterminate
  bool exact = false;
};
// Shadowed in average iff the mismatch limsup is < epsilon; verdicts follow
// the bracket (hi < eps -> shadowed, lo >= eps -> not-shadowed).
ShadowReport shadow_in_average(const MetricSystem& sys, const OrbitSpec& spec, int z,
                               const Scalar& epsilon);
bool shadow_pointwise(const MetricSystem& sys, const std::vector<int>& states, int z,
                      const Scalar& epsilon);

Scalar upper_density_prefix(const std::vector<long>& hits, long n);
// Finite-horizon syndeticity heuristic: nonempty and the largest gap
// (including both ends) is at most half the horizon.
struct SyndeticCheck {
  bool syndetic_at_horizon = false;
  long max_gap = 0;
};
SyndeticCheck is_syndetic_prefix(const std::vector<long>& hits, long horizon);

// Eventually periodic sequence of scalars (mismatch profiles and the like).
struct ScalarSeqSpec {
  std::vector<Scalar> head, cycle;
};
// Density/limsup audit for pairing two mismatch profiles under the max
// metric: with both input limsups below eta^2/(2D+1)^2, the indices where
// either profile reaches tau = eta/(2D+1) have upper density <= tau each, the
// union bound holds, and the max-profile limsup stays <= eta.
struct ProductShadowBoundReport {
  Scalar threshold;  // eta/(2D+1)
  Scalar limsup_a, limsup_b;
  Scalar ud_a, ud_b, ud_c;
  Scalar limsup_max;
  bool density_bound_ok = false;
  bool union_bound_ok = false;
  bool final_bound_ok = false;
  bool exact = true;
};
ProductShadowBoundReport product_shadow_bound(const ScalarSeqSpec& a, const ScalarSeqSpec& b,
                                              const Scalar& eta, const Scalar& diameter);

// Periodic pseudo-orbit alternating the forward orbit segment of x with a
// backward chain onto y: period 2*n0, at most two expensive jumps per period,
// so the per-period step average is <= diameter / n0.
struct WSequenceResult {
  OrbitSpec spec;  // eventually periodic, period 2*n0
  int x = 0, y = 0;
  long n0 = 1;
  std::vector<int> preimages;  // y_{-(n0-1)} .. y_0 = y
  Scalar average;              // exact per-period step-error average
  Scalar bound;                // diameter / n0
  bool at_bound = false;
};
WSequenceResult w_sequence(const MetricSystem& sys, int x, int y, long n0);

// Pair of periodic pseudo-orbits built from two disjoint forward-invariant
// components: x-block then y-block, and the dual order.
struct DualComponentSpecs {
  OrbitSpec forward, dual;
  int x = 0, y = 0;
  long n0 = 1;
  Scalar average_forward, average_dual;
};
DualComponentSpecs dual_component_pseudo_orbits(const MetricSystem& sys,
                                                const std::vector<int>& comp1,
                                                const std::vector<int>& comp2, long n0);

// If z eta-shadows (pointwise) a long enough prefix of the alternating
// sequence, two shadow hits inside one period splice into a finite
// delta(eta)-chain from x to y, delta(eta) = max(eta_gap, eta) derived from
// the hits; returns nothing when no hit pair exists within the horizon.
std::optional<StepSequence> extract_chain_from_shadow(const MetricSystem& sys,
                                                      const WSequenceResult& wseq, int z,
                                                      const Scalar& eta);

// Interleaves a spec for f^k with true-orbit fill-in, giving a spec for f;
// the output step-error limsup is bounded by the input one and the factor-k
// transfer inequality is checked on a materialized prefix for every z.
struct InterleaveResult {
  OrbitSpec spec;
  LimsupResult input_limsup;
  LimsupResult output_limsup;
  bool limsup_bound_ok = false;
  bool transfer_checked = false;
};
InterleaveResult interleave_alasp_power(const MetricSystem& sys, long k, const OrbitSpec& spec_k);

// Searches, per delta in grid order, adversarial specs that are almost
// delta-average-pseudo-orbits but epsilon-far in average from every true
// orbit: alternations between periodic states first, then dual-component
// families with growing n0. Returns the first full witness.
struct FalsificationWitness {
  Scalar epsilon, delta;
  std::string family;  // "alternation" | "dual-component"
  OrbitSpec spec;
  LimsupResult membership;            // step-error limsup, < delta
  std::vector<ShadowReport> per_z;    // all states, each not-shadowed
};
std::optional<FalsificationWitness> alasp_falsify(const MetricSystem& sys, const Scalar& epsilon,
                                                  const std::vector<Scalar>& delta_grid,
                                                  int max_depth = 20);

}  // namespace avgchain
