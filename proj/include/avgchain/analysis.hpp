#pragma once

#include <string>
#include <vector>

#include "avgchain/report.hpp"
#include "avgchain/system.hpp"

namespace avgchain {

struct PerDeltaResults {
  Scalar delta;
  DecisionReport chain_transitive;
  DecisionReport chain_mixing;
  DecisionReport avg_chain_transitive;
  DecisionReport avg_chain_mixing;
  DecisionReport totally_avg_transitive;
  int components = 0;  // delta-chain components among recurrent states
  long cr_size = 0;    // delta-chain-recurrent state count
};

// Composite report: all deciders on a sorted delta grid, plus the global
// quantities they hinge on. Decider failures are captured per row with a
// module tag instead of aborting the whole analysis.
struct AnalysisReport {
  std::string system_id;
  std::vector<Scalar> delta_grid;  // ascending, deduplicated
  long kmax = 1;
  std::vector<PerDeltaResults> rows;
  Scalar mu;
  std::vector<int> mu_cycle;
  Scalar lipschitz;
  std::vector<std::string> degeneracy_flags;
  std::vector<std::string> errors;
};

AnalysisReport analyze(const MetricSystem& sys, std::vector<Scalar> delta_grid, long kmax);

// Tabular per-delta verdicts, one row per delta.
std::string analysis_csv(const AnalysisReport& rep);

}  // namespace avgchain
