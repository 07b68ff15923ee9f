#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "avgchain/system.hpp"

namespace avgchain {

enum class Verdict { True, False, Indeterminate };

const char* verdict_name(Verdict v);

// Shared result shape for the yes/no deciders. `exact` is false when the
// underlying system carries inexact scalars; Indeterminate is reserved for
// boundary cases that tolerance comparisons cannot settle.
struct DecisionReport {
  Verdict verdict = Verdict::False;
  bool exact = true;
  std::optional<Scalar> delta;
  std::optional<StepSequence> witness;
  std::optional<long> minimal_n;
  std::optional<Scalar> mu;
  std::optional<std::vector<int>> witness_cycle;
  std::optional<long> cycle_gcd;
  std::optional<std::pair<int, int>> failing_pair;
  std::optional<Scalar> failing_delta;
  std::optional<long> failing_power;
  std::string note;

  bool truth() const { return verdict == Verdict::True; }
};

}  // namespace avgchain
