#include "avgchain/json_io.hpp"

#include <algorithm>
#include <fstream>

#include "avgchain/zoo.hpp"

namespace avgchain {

namespace {

constexpr const char* kSchema = "v1";

const char* metric_kind_name(MetricKind k) {
  switch (k) {
    case MetricKind::Discrete: return "discrete";
    case MetricKind::Matrix: return "matrix";
    case MetricKind::Line: return "line";
    case MetricKind::Circle: return "circle";
  }
  return "matrix";
}

const char* sampled_kind_name(SampledKind k) {
  switch (k) {
    case SampledKind::Tent: return "tent";
    case SampledKind::Doubling: return "doubling";
    case SampledKind::Rotation: return "rotation";
    case SampledKind::Custom: return "custom";
  }
  return "custom";
}

const char* cost_mode_name(CostMode m) {
  return m == CostMode::TrueMap ? "true-map" : "projected-map";
}

int state_from_json(const Json& j, const MetricSystem& sys) {
  if (j.is_number_integer()) {
    int s = j.get<int>();
    sys.check_state(s);
    return s;
  }
  if (j.is_string()) return sys.label_index(j.get<std::string>());
  fail(Errc::BadParameter, "state entries must be indices or labels");
}

std::vector<int> states_from_json(const Json& j, const MetricSystem& sys) {
  if (!j.is_array()) fail(Errc::BadParameter, "expected an array of states");
  std::vector<int> out;
  for (const Json& e : j) out.push_back(state_from_json(e, sys));
  return out;
}

Json labels_json(const MetricSystem& sys, const std::vector<int>& states) {
  Json arr = Json::array();
  for (int s : states) arr.push_back(sys.space.labels[static_cast<size_t>(s)]);
  return arr;
}

}  // namespace

Json scalar_json(const Scalar& s) {
  if (s.exact()) return s.str();
  return s.approx();
}

Scalar scalar_from_json(const Json& j) {
  if (j.is_string()) return Scalar::parse(j.get<std::string>());
  if (j.is_number_integer()) return Scalar(j.get<long>());
  if (j.is_number_float()) return Scalar::inexact(j.get<double>());
  fail(Errc::BadParameter, "expected a rational string or a number");
}

Json system_json(const MetricSystem& sys) {
  Json j;
  j["schema"] = kSchema;
  if (!sys.id.empty()) j["id"] = sys.id;
  if (sys.sampled.has_value() && sys.sampled->kind != SampledKind::Custom) {
    Json s;
    s["kind"] = sampled_kind_name(sys.sampled->kind);
    if (sys.sampled->kind == SampledKind::Rotation) s["alpha"] = scalar_json(sys.sampled->alpha);
    s["grid"] = sys.sampled->grid;
    s["costMode"] = cost_mode_name(sys.sampled->mode);
    j["sampled"] = std::move(s);
    return j;
  }
  if (!sys.explicit_map())
    fail(Errc::UnsupportedKind, "custom true-map sampled systems have no file representation");
  j["labels"] = sys.space.labels;
  Json metric;
  metric["kind"] = metric_kind_name(sys.space.kind);
  switch (sys.space.kind) {
    case MetricKind::Discrete:
      break;
    case MetricKind::Matrix: {
      Json rows = Json::array();
      for (int i = 0; i < sys.n(); ++i) {
        Json row = Json::array();
        for (int k = 0; k < sys.n(); ++k) row.push_back(scalar_json(sys.space.d(i, k)));
        rows.push_back(std::move(row));
      }
      metric["data"] = std::move(rows);
      break;
    }
    case MetricKind::Line:
    case MetricKind::Circle: {
      Json coords = Json::array();
      for (const Scalar& c : sys.space.coords) coords.push_back(scalar_json(c));
      metric["data"] = std::move(coords);
      break;
    }
  }
  j["metric"] = std::move(metric);
  j["map"] = sys.map;
  if (!sys.notes.empty()) j["notes"] = sys.notes;
  return j;
}

MetricSystem system_from_json(const Json& j) {
  if (!j.is_object()) fail(Errc::BadParameter, "system document must be an object");
  if (j.contains("sampled")) {
    const Json& s = j.at("sampled");
    const std::string kind = s.at("kind").get<std::string>();
    const int grid = s.at("grid").get<int>();
    CostMode mode = CostMode::TrueMap;
    if (s.contains("costMode")) {
      const std::string m = s.at("costMode").get<std::string>();
      if (m == "true-map")
        mode = CostMode::TrueMap;
      else if (m == "projected-map")
        mode = CostMode::ProjectedMap;
      else
        fail(Errc::BadParameter, "costMode must be true-map or projected-map");
    }
    SampledKind sk;
    Scalar alpha(0);
    if (kind == "tent")
      sk = SampledKind::Tent;
    else if (kind == "doubling")
      sk = SampledKind::Doubling;
    else if (kind == "rotation") {
      sk = SampledKind::Rotation;
      alpha = scalar_from_json(s.at("alpha"));
    } else
      fail(Errc::BadParameter, "sampled kind must be tent, doubling or rotation");
    std::string id = j.contains("id") ? j.at("id").get<std::string>() : "";
    return sample_map_system(sk, alpha, grid, mode, std::move(id));
  }

  std::vector<std::string> labels = j.at("labels").get<std::vector<std::string>>();
  const Json& metric = j.at("metric");
  const std::string kind = metric.at("kind").get<std::string>();
  MetricSpace sp;
  if (kind == "discrete") {
    sp = MetricSpace::discrete(std::move(labels));
  } else if (kind == "matrix") {
    const Json& rows = metric.at("data");
    std::vector<Scalar> dist;
    if (!rows.is_array() || rows.size() != labels.size())
      fail(Errc::BadParameter, "matrix data must have one row per label");
    for (const Json& row : rows) {
      if (!row.is_array() || row.size() != labels.size())
        fail(Errc::BadParameter, "matrix rows must have one entry per label");
      for (const Json& e : row) dist.push_back(scalar_from_json(e));
    }
    sp = MetricSpace::matrix(std::move(labels), std::move(dist));
  } else if (kind == "line" || kind == "circle") {
    const Json& data = metric.at("data");
    std::vector<Scalar> coords;
    for (const Json& e : data) coords.push_back(scalar_from_json(e));
    sp = kind == "line" ? MetricSpace::line(std::move(labels), std::move(coords))
                        : MetricSpace::circle(std::move(labels), std::move(coords));
  } else {
    fail(Errc::BadParameter, "metric kind must be discrete, matrix, line or circle");
  }

  const Json& map_j = j.at("map");
  if (!map_j.is_array() || map_j.size() != sp.labels.size())
    fail(Errc::BadParameter, "map must list one image per state");
  std::vector<int> map;
  for (const Json& e : map_j) {
    if (e.is_number_integer())
      map.push_back(e.get<int>());
    else if (e.is_string()) {
      auto it = std::find(sp.labels.begin(), sp.labels.end(), e.get<std::string>());
      if (it == sp.labels.end()) fail(Errc::UnknownName, "unknown label in map");
      map.push_back(static_cast<int>(it - sp.labels.begin()));
    } else
      fail(Errc::BadParameter, "map entries must be indices or labels");
  }
  std::string id = j.contains("id") ? j.at("id").get<std::string>() : "";
  MetricSystem sys = make_system(std::move(sp), std::move(map), std::move(id));
  if (j.contains("notes"))
    for (const Json& nt : j.at("notes")) sys.notes.push_back(nt.get<std::string>());
  return sys;
}

MetricSystem load_system(const std::string& ref) {
  if (ref.rfind("zoo:", 0) == 0) return zoo(ref.substr(4));
  std::ifstream in(ref);
  if (!in) fail(Errc::BadParameter, "cannot open system file '" + ref + "'");
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    fail(Errc::BadParameter, std::string("bad JSON: ") + e.what());
  }
  return system_from_json(j);
}

Json spec_json(const OrbitSpec& spec) {
  Json j;
  j["schema"] = kSchema;
  switch (spec.kind) {
    case OrbitSpec::Kind::Explicit:
      j["kind"] = "explicit";
      j["states"] = spec.head;
      break;
    case OrbitSpec::Kind::EventuallyPeriodic:
      j["kind"] = "eventually-periodic";
      j["head"] = spec.head;
      j["cycle"] = spec.cycle;
      break;
    case OrbitSpec::Kind::BlockDoubling:
      j["kind"] = "block-doubling";
      j["first"] = spec.first;
      j["second"] = spec.second;
      j["depth"] = spec.depth;
      break;
  }
  return j;
}

OrbitSpec spec_from_json(const Json& j, const MetricSystem& sys) {
  if (!j.is_object() || !j.contains("kind"))
    fail(Errc::BadParameter, "spec document must be an object with a kind");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "explicit") return explicit_spec(states_from_json(j.at("states"), sys));
  if (kind == "eventually-periodic") {
    std::vector<int> head;
    if (j.contains("head")) head = states_from_json(j.at("head"), sys);
    return eventually_periodic_spec(std::move(head), states_from_json(j.at("cycle"), sys));
  }
  if (kind == "block-doubling") {
    int depth = j.contains("depth") ? j.at("depth").get<int>() : 20;
    return block_doubling_spec(state_from_json(j.at("first"), sys),
                               state_from_json(j.at("second"), sys), depth);
  }
  fail(Errc::BadParameter, "spec kind must be explicit, eventually-periodic or block-doubling");
}

OrbitSpec load_spec(const std::string& path, const MetricSystem& sys) {
  std::ifstream in(path);
  if (!in) fail(Errc::BadParameter, "cannot open spec file '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    fail(Errc::BadParameter, std::string("bad JSON: ") + e.what());
  }
  return spec_from_json(j, sys);
}

Json step_sequence_json(const MetricSystem& sys, const StepSequence& seq) {
  Json j;
  j["states"] = seq.states;
  j["labels"] = labels_json(sys, seq.states);
  Json errs = Json::array();
  for (const Scalar& e : seq.step_errors) errs.push_back(scalar_json(e));
  j["stepErrors"] = std::move(errs);
  j["total"] = scalar_json(seq.total());
  j["length"] = seq.length();
  return j;
}

Json limsup_json(const LimsupResult& r) {
  Json j;
  j["lo"] = scalar_json(r.lo);
  j["hi"] = scalar_json(r.hi);
  j["exact"] = r.exact;
  if (r.exact) j["value"] = scalar_json(r.lo);
  if (!r.trace.empty()) {
    Json tr = Json::array();
    for (const auto& [len, avg] : r.trace) {
      Json e;
      e["prefix"] = len;
      e["average"] = scalar_json(avg);
      tr.push_back(std::move(e));
    }
    j["trace"] = std::move(tr);
  }
  return j;
}

Json report_json(const DecisionReport& rep, const MetricSystem& sys) {
  Json j;
  j["schema"] = kSchema;
  j["verdict"] = verdict_name(rep.verdict);
  j["exact"] = rep.exact;
  if (rep.delta) j["delta"] = scalar_json(*rep.delta);
  if (rep.witness) j["witness"] = step_sequence_json(sys, *rep.witness);
  if (rep.minimal_n) j["minimalN"] = *rep.minimal_n;
  if (rep.mu) j["mu"] = scalar_json(*rep.mu);
  if (rep.witness_cycle) {
    j["witnessCycle"] = *rep.witness_cycle;
    j["witnessCycleLabels"] = labels_json(sys, *rep.witness_cycle);
  }
  if (rep.cycle_gcd) j["cycleGcd"] = *rep.cycle_gcd;
  if (rep.failing_pair) {
    j["failingPair"] = Json::array({rep.failing_pair->first, rep.failing_pair->second});
    j["failingPairLabels"] =
        labels_json(sys, {rep.failing_pair->first, rep.failing_pair->second});
  }
  if (rep.failing_delta) j["failingDelta"] = scalar_json(*rep.failing_delta);
  if (rep.failing_power) j["failingPower"] = *rep.failing_power;
  if (!rep.note.empty()) j["note"] = rep.note;
  return j;
}

Json shadow_json(const ShadowReport& rep, const MetricSystem& sys) {
  Json j;
  j["schema"] = kSchema;
  j["z"] = rep.z;
  j["zLabel"] = sys.space.labels[static_cast<size_t>(rep.z)];
  j["epsilon"] = scalar_json(rep.epsilon);
  j["mismatchLimsup"] = limsup_json(rep.mismatch);
  j["verdict"] = rep.verdict == Verdict::True
                     ? "shadowed"
                     : (rep.verdict == Verdict::False ? "not-shadowed" : "indeterminate");
  j["exact"] = rep.exact;
  return j;
}

Json witness_json(const FalsificationWitness& wit, const MetricSystem& sys) {
  Json j;
  j["schema"] = kSchema;
  j["epsilon"] = scalar_json(wit.epsilon);
  j["delta"] = scalar_json(wit.delta);
  j["family"] = wit.family;
  j["spec"] = spec_json(wit.spec);
  j["membershipStepLimsup"] = limsup_json(wit.membership);
  Json per = Json::array();
  for (const ShadowReport& r : wit.per_z) per.push_back(shadow_json(r, sys));
  j["perZ"] = std::move(per);
  return j;
}

Json analysis_json(const AnalysisReport& rep, const MetricSystem& sys) {
  Json j;
  j["schema"] = kSchema;
  j["systemId"] = rep.system_id;
  Json grid = Json::array();
  for (const Scalar& d : rep.delta_grid) grid.push_back(scalar_json(d));
  j["deltaGrid"] = std::move(grid);
  j["kmax"] = rep.kmax;
  j["mu"] = scalar_json(rep.mu);
  if (!rep.mu_cycle.empty()) j["muCycle"] = rep.mu_cycle;
  j["lipschitz"] = scalar_json(rep.lipschitz);
  j["degeneracyFlags"] = rep.degeneracy_flags;
  if (!rep.errors.empty()) j["errors"] = rep.errors;
  Json rows = Json::array();
  for (const PerDeltaResults& row : rep.rows) {
    Json r;
    r["delta"] = scalar_json(row.delta);
    r["chainTransitive"] = report_json(row.chain_transitive, sys);
    r["chainMixing"] = report_json(row.chain_mixing, sys);
    r["avgChainTransitive"] = report_json(row.avg_chain_transitive, sys);
    r["avgChainMixing"] = report_json(row.avg_chain_mixing, sys);
    r["totallyAvgTransitive"] = report_json(row.totally_avg_transitive, sys);
    r["components"] = row.components;
    r["CRsize"] = row.cr_size;
    rows.push_back(std::move(r));
  }
  j["perDelta"] = std::move(rows);
  return j;
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace avgchain
