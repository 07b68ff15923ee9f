#include "avgchain/analysis.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "avgchain/average_chain.hpp"
#include "avgchain/chain_graph.hpp"

namespace avgchain {

namespace {

DecisionReport run_decider(const char* module, const std::function<DecisionReport()>& op,
                           std::vector<std::string>& errors) {
  try {
    return op();
  } catch (const Error& e) {
    errors.push_back(std::string(module) + ": " + e.what());
    DecisionReport rep;
    rep.verdict = Verdict::Indeterminate;
    rep.exact = false;
    rep.note = e.what();
    return rep;
  }
}

}  // namespace

AnalysisReport analyze(const MetricSystem& sys, std::vector<Scalar> delta_grid, long kmax) {
  if (delta_grid.empty()) fail(Errc::EmptyInput, "empty delta grid");
  for (const Scalar& d : delta_grid)
    if (d <= Scalar(0)) fail(Errc::NonpositiveDelta, "delta grid entries must be positive");
  if (kmax < 1) fail(Errc::BadParameter, "kmax must be >= 1");
  std::sort(delta_grid.begin(), delta_grid.end(),
            [](const Scalar& a, const Scalar& b) { return a.cmp(b) < 0; });
  delta_grid.erase(std::unique(delta_grid.begin(), delta_grid.end(),
                               [](const Scalar& a, const Scalar& b) { return a.cmp(b) == 0; }),
                   delta_grid.end());

  AnalysisReport rep;
  rep.system_id = sys.id;
  rep.delta_grid = delta_grid;
  rep.lipschitz = sys.lipschitz;

  long kmax_eff = kmax;
  if (!sys.explicit_map() && kmax > 1) {
    kmax_eff = 1;
    rep.degeneracy_flags.push_back(
        "no explicit map: power transitivity checked for k = 1 only");
  }
  rep.kmax = kmax_eff;

  MeanCycleResult mc = min_mean_cycle(sys);
  rep.mu = mc.mu;
  rep.mu_cycle = mc.cycle;
  if (sys.explicit_map())
    rep.degeneracy_flags.push_back(
        "explicit self-map: minimum cycle mean is 0 (every true orbit is eventually periodic)");

  const Scalar min_cost = sys.min_positive_cost();
  for (const Scalar& delta : delta_grid) {
    PerDeltaResults row;
    row.delta = delta;
    if (min_cost > Scalar(0) && delta <= min_cost)
      rep.degeneracy_flags.push_back("delta " + delta.str() +
                                     " is at or below the least positive step cost " +
                                     min_cost.str() + "; delta-chains collapse to true orbits");
    row.chain_transitive =
        run_decider("chain_graph", [&] { return is_chain_transitive(sys, delta); }, rep.errors);
    row.chain_mixing =
        run_decider("chain_graph", [&] { return is_chain_mixing(sys, delta); }, rep.errors);
    row.avg_chain_transitive = run_decider(
        "average_chain", [&] { return is_average_chain_transitive(sys, delta); }, rep.errors);
    row.avg_chain_mixing = run_decider(
        "average_chain", [&] { return is_average_chain_mixing(sys, delta); }, rep.errors);
    row.totally_avg_transitive = run_decider(
        "average_chain",
        [&] { return is_totally_average_chain_transitive(sys, delta, kmax_eff); }, rep.errors);
    try {
      ComponentPartition parts = chain_components(sys, delta);
      row.components = static_cast<int>(parts.components.size());
      row.cr_size = static_cast<long>(parts.recurrent.size());
    } catch (const Error& e) {
      rep.errors.push_back(std::string("chain_graph: ") + e.what());
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

std::string analysis_csv(const AnalysisReport& rep) {
  std::ostringstream out;
  out << "delta,chainTransitive,chainMixing,avgChainTransitive,avgChainMixing,"
         "totallyAvgTransitive,components,CRsize\n";
  for (const PerDeltaResults& row : rep.rows) {
    out << row.delta.str() << ',' << verdict_name(row.chain_transitive.verdict) << ','
        << verdict_name(row.chain_mixing.verdict) << ','
        << verdict_name(row.avg_chain_transitive.verdict) << ','
        << verdict_name(row.avg_chain_mixing.verdict) << ','
        << verdict_name(row.totally_avg_transitive.verdict) << ',' << row.components << ','
        << row.cr_size << '\n';
  }
  return out.str();
}

}  // namespace avgchain
