#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "avgchain/analysis.hpp"
#include "avgchain/average_chain.hpp"
#include "avgchain/chain_graph.hpp"
#include "avgchain/json_io.hpp"
#include "avgchain/shadowing.hpp"
#include "avgchain/zoo.hpp"

namespace {

using avgchain::Json;
using avgchain::Scalar;

// Exit codes: 0 success, 1 verdict-negative, 2 input error, 3 invariant breach.
constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kInputError = 2;
constexpr int kBreach = 3;

std::vector<Scalar> parse_grid(const std::string& csv) {
  std::vector<Scalar> out;
  size_t start = 0;
  while (start <= csv.size()) {
    size_t pos = csv.find(',', start);
    std::string tok =
        pos == std::string::npos ? csv.substr(start) : csv.substr(start, pos - start);
    if (!tok.empty()) out.push_back(Scalar::parse(tok));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  if (out.empty()) avgchain::fail(avgchain::Errc::EmptyInput, "empty delta grid");
  return out;
}

int resolve_state(const avgchain::MetricSystem& sys, const std::string& arg) {
  try {
    return sys.label_index(arg);
  } catch (const avgchain::Error&) {
  }
  try {
    size_t used = 0;
    int idx = std::stoi(arg, &used);
    if (used == arg.size()) {
      sys.check_state(idx);
      return idx;
    }
  } catch (const std::exception&) {
  }
  avgchain::fail(avgchain::Errc::UnknownName, "no state named '" + arg + "'");
}

void emit(const Json& j) { std::cout << avgchain::dump_json(j); }

struct CommonArgs {
  std::string system;
};

int run(int argc, char** argv) {
  CLI::App app{"Exact deciders, constructions and falsifiers for chain-style "
               "recurrence on finite metric systems"};
  app.require_subcommand(1);

  // analyze
  auto* analyze_cmd = app.add_subcommand("analyze", "Run every decider over a delta grid");
  std::string an_system, an_grid = "1/8,1/4,1/2,1,2", an_format = "json";
  long an_kmax = 3;
  analyze_cmd->add_option("--system", an_system, "zoo:<name> or a system JSON file")->required();
  analyze_cmd->add_option("--delta-grid", an_grid, "comma-separated rationals");
  analyze_cmd->add_option("--kmax", an_kmax, "largest power for total transitivity");
  analyze_cmd->add_option("--format", an_format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));

  // chain
  auto* chain_cmd = app.add_subcommand("chain", "Shortest delta-chain between two states");
  std::string ch_system, ch_from, ch_to, ch_delta;
  chain_cmd->add_option("--system", ch_system)->required();
  chain_cmd->add_option("--from", ch_from)->required();
  chain_cmd->add_option("--to", ch_to)->required();
  chain_cmd->add_option("--delta", ch_delta, "rational threshold")->required();

  // avg-chain
  auto* avg_cmd = app.add_subcommand("avg-chain", "Delta-average-chain existence with witness");
  std::string av_system, av_from, av_to, av_delta, av_witness_file;
  avg_cmd->add_option("--system", av_system)->required();
  avg_cmd->add_option("--from", av_from)->required();
  avg_cmd->add_option("--to", av_to)->required();
  avg_cmd->add_option("--delta", av_delta)->required();
  avg_cmd->add_option("--witness", av_witness_file, "write the witness JSON to this file");

  // orbit
  auto* orbit_cmd = app.add_subcommand("orbit", "True-orbit decomposition of a state");
  std::string or_system, or_state;
  orbit_cmd->add_option("--system", or_system)->required();
  orbit_cmd->add_option("--state", or_state)->required();

  // shadow
  auto* shadow_cmd = app.add_subcommand("shadow", "Shadowing-in-average verdicts for a spec");
  std::string sh_system, sh_spec, sh_z, sh_eps;
  bool sh_all_z = false;
  shadow_cmd->add_option("--system", sh_system)->required();
  shadow_cmd->add_option("--spec", sh_spec, "orbit spec JSON file")->required();
  shadow_cmd->add_option("--z", sh_z, "candidate shadowing state");
  shadow_cmd->add_flag("--all-z", sh_all_z, "check every state");
  shadow_cmd->add_option("--epsilon", sh_eps)->required();

  // falsify
  auto* falsify_cmd = app.add_subcommand("falsify", "Search an adversarial spec refuting ALASP");
  std::string fa_system, fa_eps, fa_grid;
  int fa_depth = 20;
  falsify_cmd->add_option("--system", fa_system)->required();
  falsify_cmd->add_option("--epsilon", fa_eps)->required();
  falsify_cmd->add_option("--delta-grid", fa_grid)->required();
  falsify_cmd->add_option("--max-depth", fa_depth);

  // zoo
  auto* zoo_cmd = app.add_subcommand("zoo", "Built-in systems");
  std::string zo_name;
  bool zo_list = false;
  zoo_cmd->add_flag("--list", zo_list, "list built-in names");
  zoo_cmd->add_option("--name", zo_name, "emit one system as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  if (analyze_cmd->parsed()) {
    avgchain::MetricSystem sys = avgchain::load_system(an_system);
    avgchain::AnalysisReport rep = avgchain::analyze(sys, parse_grid(an_grid), an_kmax);
    if (an_format == "csv")
      std::cout << avgchain::analysis_csv(rep);
    else
      emit(avgchain::analysis_json(rep, sys));
    return kOk;
  }

  if (chain_cmd->parsed()) {
    avgchain::MetricSystem sys = avgchain::load_system(ch_system);
    int from = resolve_state(sys, ch_from), to = resolve_state(sys, ch_to);
    Scalar delta = Scalar::parse(ch_delta);
    auto chain = avgchain::find_delta_chain(sys, from, to, delta);
    Json j;
    j["schema"] = "v1";
    j["delta"] = avgchain::scalar_json(delta);
    j["from"] = from;
    j["to"] = to;
    j["verdict"] = chain.has_value() ? "Present" : "Absent";
    if (chain) j["witness"] = avgchain::step_sequence_json(sys, *chain);
    emit(j);
    return chain.has_value() ? kOk : kNegative;
  }

  if (avg_cmd->parsed()) {
    avgchain::MetricSystem sys = avgchain::load_system(av_system);
    int from = resolve_state(sys, av_from), to = resolve_state(sys, av_to);
    Scalar delta = Scalar::parse(av_delta);
    avgchain::DecisionReport rep = avgchain::has_average_chain(sys, from, to, delta);
    Json j = avgchain::report_json(rep, sys);
    j["from"] = from;
    j["to"] = to;
    emit(j);
    if (!av_witness_file.empty() && rep.witness) {
      std::ofstream out(av_witness_file);
      if (!out)
        avgchain::fail(avgchain::Errc::BadParameter,
                       "cannot write witness file '" + av_witness_file + "'");
      Json wj = avgchain::step_sequence_json(sys, *rep.witness);
      wj["schema"] = "v1";
      out << avgchain::dump_json(wj);
    }
    return rep.truth() ? kOk : kNegative;
  }

  if (orbit_cmd->parsed()) {
    avgchain::MetricSystem sys = avgchain::load_system(or_system);
    int s = resolve_state(sys, or_state);
    avgchain::OrbitInfo info = avgchain::orbit_info(sys, s);
    Json j;
    j["schema"] = "v1";
    j["state"] = s;
    j["path"] = info.path;
    j["cycle"] = info.cycle;
    j["preperiod"] = info.preperiod();
    j["period"] = info.period();
    emit(j);
    return kOk;
  }

  if (shadow_cmd->parsed()) {
    avgchain::MetricSystem sys = avgchain::load_system(sh_system);
    avgchain::OrbitSpec spec = avgchain::load_spec(sh_spec, sys);
    Scalar eps = Scalar::parse(sh_eps);
    if (sh_all_z != sh_z.empty())
      avgchain::fail(avgchain::Errc::BadParameter, "pass exactly one of --z and --all-z");
    if (sh_all_z) {
      Json arr = Json::array();
      for (int z = 0; z < sys.n(); ++z)
        arr.push_back(avgchain::shadow_json(avgchain::shadow_in_average(sys, spec, z, eps), sys));
      Json j;
      j["schema"] = "v1";
      j["reports"] = std::move(arr);
      emit(j);
      return kOk;
    }
    int z = resolve_state(sys, sh_z);
    avgchain::ShadowReport rep = avgchain::shadow_in_average(sys, spec, z, eps);
    emit(avgchain::shadow_json(rep, sys));
    return rep.verdict == avgchain::Verdict::True ? kOk : kNegative;
  }

  if (falsify_cmd->parsed()) {
    avgchain::MetricSystem sys = avgchain::load_system(fa_system);
    Scalar eps = Scalar::parse(fa_eps);
    auto wit = avgchain::alasp_falsify(sys, eps, parse_grid(fa_grid), fa_depth);
    if (!wit) {
      Json j;
      j["schema"] = "v1";
      j["found"] = false;
      j["note"] = "no adversarial candidate defeats shadowing at this grid; inconclusive";
      emit(j);
      return kNegative;
    }
    Json j = avgchain::witness_json(*wit, sys);
    j["found"] = true;
    emit(j);
    return kOk;
  }

  if (zoo_cmd->parsed()) {
    if (zo_list != zo_name.empty())
      avgchain::fail(avgchain::Errc::BadParameter, "pass exactly one of --list and --name");
    if (zo_list) {
      Json j;
      j["schema"] = "v1";
      j["families"] = avgchain::zoo_families();
      j["defaults"] = avgchain::zoo_default_suite();
      emit(j);
      return kOk;
    }
    emit(avgchain::system_json(avgchain::zoo(zo_name)));
    return kOk;
  }

  return kInputError;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const avgchain::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == avgchain::Errc::InvariantBreach ? kBreach : kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
}
