#include <algorithm>
#include <unordered_map>

#include "avgchain/kernels.hpp"
#include "avgchain/system.hpp"

namespace avgchain {

int MetricSystem::f(int u) const {
  if (!explicit_map()) fail(Errc::NotExplicitMap, "system '" + id + "' has no explicit map");
  check_state(u);
  return map[u];
}

bool MetricSystem::exact() const {
  for (const Scalar& v : space.dist)
    if (!v.exact()) return false;
  for (const Scalar& v : w)
    if (!v.exact()) return false;
  return true;
}

Scalar MetricSystem::min_positive_cost() const {
  Scalar best(0);
  bool found = false;
  for (const Scalar& v : w) {
    if (v > Scalar(0) && (!found || v < best)) {
      best = v;
      found = true;
    }
  }
  return best;
}

Scalar MetricSystem::min_positive_dist() const {
  Scalar best(0);
  bool found = false;
  for (const Scalar& v : space.dist) {
    if (v > Scalar(0) && (!found || v < best)) {
      best = v;
      found = true;
    }
  }
  return best;
}

int MetricSystem::label_index(std::string_view label) const {
  for (int i = 0; i < n(); ++i)
    if (space.labels[i] == label) return i;
  fail(Errc::UnknownName, "no state labeled '" + std::string(label) + "'");
}

void MetricSystem::check_state(int s) const {
  if (s < 0 || s >= n()) fail(Errc::IndexOutOfRange, "state index " + std::to_string(s));
}

OrbitInfo orbit_info(const MetricSystem& sys, int z) {
  sys.check_state(z);
  if (!sys.explicit_map()) fail(Errc::NotExplicitMap, "orbit needs an explicit map");
  std::unordered_map<int, int> pos;
  std::vector<int> walk;
  int s = z;
  while (pos.find(s) == pos.end()) {
    pos[s] = static_cast<int>(walk.size());
    walk.push_back(s);
    s = sys.map[s];
  }
  const int entry = pos[s];
  OrbitInfo info;
  info.path.assign(walk.begin(), walk.begin() + entry);
  info.cycle.assign(walk.begin() + entry, walk.end());
  return info;
}

StepSequence make_step_sequence(const MetricSystem& sys, std::vector<int> states) {
  if (states.empty()) fail(Errc::EmptyInput, "empty state sequence");
  for (int s : states) sys.check_state(s);
  StepSequence seq;
  seq.states = std::move(states);
  const size_t m = seq.states.size();
  seq.step_errors.reserve(m - 1);
  seq.prefix_sums.reserve(m);
  seq.prefix_avgs.reserve(m);
  seq.prefix_sums.push_back(Scalar(0));
  seq.prefix_avgs.push_back(Scalar(0));
  Scalar run(0);
  for (size_t i = 0; i + 1 < m; ++i) {
    Scalar e = sys.cost(seq.states[i], seq.states[i + 1]);
    run += e;
    seq.step_errors.push_back(std::move(e));
    seq.prefix_sums.push_back(run);
    seq.prefix_avgs.push_back(run / Scalar(static_cast<long>(i) + 1));
  }
  return seq;
}

bool check_step_sequence(const MetricSystem& sys, const StepSequence& seq) {
  if (seq.states.empty()) return false;
  StepSequence fresh = make_step_sequence(sys, seq.states);
  if (seq.step_errors.size() != fresh.step_errors.size()) return false;
  if (seq.prefix_sums.size() != fresh.prefix_sums.size()) return false;
  if (seq.prefix_avgs.size() != fresh.prefix_avgs.size()) return false;
  for (size_t i = 0; i < fresh.step_errors.size(); ++i)
    if (seq.step_errors[i] != fresh.step_errors[i]) return false;
  for (size_t i = 0; i < fresh.prefix_sums.size(); ++i)
    if (seq.prefix_sums[i] != fresh.prefix_sums[i] || seq.prefix_avgs[i] != fresh.prefix_avgs[i])
      return false;
  return true;
}

namespace {

Scalar lipschitz_of_map(const MetricSpace& sp, const std::vector<int>& map) {
  Scalar best(1);
  const int n = sp.n();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Scalar ratio = sp.d(map[i], map[j]) / sp.d(i, j);
      best = Scalar::max(best, ratio);
    }
  return best;
}

bool map_surjective(const std::vector<int>& map, int n) {
  std::vector<char> hit(static_cast<size_t>(n), 0);
  for (int v : map) hit[v] = 1;
  return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

}  // namespace

MetricSystem make_system(MetricSpace space, std::vector<int> map, std::string id) {
  space.validate();
  const int n = space.n();
  if (map.size() != static_cast<size_t>(n)) fail(Errc::BadParameter, "map size mismatch");
  for (int v : map)
    if (v < 0 || v >= n) fail(Errc::IndexOutOfRange, "map image " + std::to_string(v));
  MetricSystem sys;
  sys.space = std::move(space);
  sys.map = std::move(map);
  sys.id = std::move(id);
  kernels::step_cost_from_map(sys.space.dist, sys.map, n, sys.w);
  sys.surjective = map_surjective(sys.map, n);
  sys.lipschitz = lipschitz_of_map(sys.space, sys.map);
  return sys;
}

Scalar lipschitz_constant(const MetricSystem& sys) {
  if (!sys.explicit_map()) fail(Errc::NotExplicitMap, "Lipschitz constant needs an explicit map");
  return lipschitz_of_map(sys.space, sys.map);
}

MetricSystem power_system(const MetricSystem& sys, long k) {
  if (k < 1) fail(Errc::BadParameter, "power k must be >= 1");
  if (!sys.explicit_map())
    fail(Errc::NotExplicitMap, "cannot form powers of a sampled true-map system");
  const int n = sys.n();
  std::vector<int> mk(static_cast<size_t>(n));
  for (int u = 0; u < n; ++u) {
    OrbitInfo info = orbit_info(sys, u);
    mk[u] = info.at(k);
  }
  MetricSystem out = make_system(sys.space, std::move(mk), sys.id + "^" + std::to_string(k));
  out.notes = sys.notes;
  return out;
}

MetricSystem product_system(const MetricSystem& a, const MetricSystem& b, size_t cap) {
  if (!a.explicit_map() || !b.explicit_map())
    fail(Errc::NotExplicitMap, "product needs explicit maps on both factors");
  const size_t na = static_cast<size_t>(a.n()), nb = static_cast<size_t>(b.n());
  if (na * nb > cap)
    fail(Errc::SizeOverflow, "product would have " + std::to_string(na * nb) + " states (cap " +
                                 std::to_string(cap) + ")");
  const int n = static_cast<int>(na * nb);
  std::vector<std::string> labels;
  labels.reserve(static_cast<size_t>(n));
  for (size_t i = 0; i < na; ++i)
    for (size_t j = 0; j < nb; ++j)
      labels.push_back("(" + a.space.labels[i] + "," + b.space.labels[j] + ")");
  std::vector<Scalar> dist;
  kernels::fill_table(n, dist, [&](int p, int q) {
    const int pi = p / static_cast<int>(nb), pj = p % static_cast<int>(nb);
    const int qi = q / static_cast<int>(nb), qj = q % static_cast<int>(nb);
    return Scalar::max(a.dist(pi, qi), b.dist(pj, qj));
  });
  MetricSpace sp = MetricSpace::matrix(std::move(labels), std::move(dist));
  std::vector<int> map(static_cast<size_t>(n));
  for (size_t i = 0; i < na; ++i)
    for (size_t j = 0; j < nb; ++j)
      map[i * nb + j] = a.map[i] * static_cast<int>(nb) + b.map[j];
  return make_system(std::move(sp), std::move(map), a.id + "*" + b.id);
}

namespace {

// Nearest grid point to a coordinate value, ties to the lower index.
int snap_to_grid(const MetricSpace& sp, const Scalar& value) {
  auto point_dist = [&sp, &value](int i) {
    if (sp.kind == MetricKind::Circle) {
      Scalar g = abs(sp.coords[i] - (value - value.floor()));
      return Scalar::min(g, Scalar(1) - g);
    }
    return abs(sp.coords[i] - value);
  };
  int best = 0;
  Scalar bd = point_dist(0);
  for (int i = 1; i < sp.n(); ++i) {
    Scalar d = point_dist(i);
    if (d < bd) {
      bd = std::move(d);
      best = i;
    }
  }
  return best;
}

Scalar coord_dist(const MetricSpace& sp, const Scalar& value, int j) {
  if (sp.kind == MetricKind::Circle) {
    Scalar g = abs((value - value.floor()) - sp.coords[j]);
    return Scalar::min(g, Scalar(1) - g);
  }
  return abs(value - sp.coords[j]);
}

MetricSystem finish_sampled(MetricSpace sp, std::vector<Scalar> values, CostMode mode,
                            std::string id, SampledInfo info) {
  const int n = sp.n();
  std::vector<int> induced(static_cast<size_t>(n));
  for (int u = 0; u < n; ++u) induced[u] = snap_to_grid(sp, values[u]);
  if (mode == CostMode::ProjectedMap) {
    MetricSystem sys = make_system(std::move(sp), std::move(induced), std::move(id));
    sys.sampled = info;
    sys.notes.push_back("map values snapped to the nearest grid point (ties to lower index)");
    return sys;
  }
  MetricSystem sys;
  sys.space = std::move(sp);
  sys.id = std::move(id);
  sys.sampled = info;
  kernels::fill_table(n, sys.w,
                      [&](int u, int v) { return coord_dist(sys.space, values[u], v); });
  sys.surjective = map_surjective(induced, n);
  sys.lipschitz = lipschitz_of_map(sys.space, induced);
  sys.notes.push_back("true-map costs W[u][v] = d(F(u), v); surjectivity and Lipschitz metadata "
                      "refer to the induced nearest-grid map");
  return sys;
}

}  // namespace

MetricSystem sample_map_system(SampledKind kind, const Scalar& alpha, int grid, CostMode mode,
                               std::string id) {
  if (kind == SampledKind::Custom)
    fail(Errc::UnsupportedKind, "custom sampling takes explicit values; use "
                                "sample_custom_map_system");
  const char* mode_name = mode == CostMode::TrueMap ? "true-map" : "projected-map";
  MetricSpace sp;
  std::vector<Scalar> values;
  SampledInfo info{kind, alpha, grid, mode};
  if (kind == SampledKind::Tent) {
    if (grid < 2) fail(Errc::BadParameter, "tent grid needs >= 2 points");
    std::vector<std::string> labels;
    std::vector<Scalar> coords;
    for (int i = 0; i < grid; ++i) {
      labels.push_back("p" + std::to_string(i));
      coords.push_back(Scalar(i, grid - 1));
    }
    sp = MetricSpace::line(std::move(labels), coords);
    const Scalar half(1, 2);
    for (const Scalar& u : coords)
      values.push_back(u <= half ? Scalar(2) * u : Scalar(2) - Scalar(2) * u);
    if (id.empty()) id = "tent:" + std::to_string(grid) + ":" + mode_name;
  } else {
    if (grid < 1) fail(Errc::BadParameter, "circle grid needs >= 1 point");
    std::vector<std::string> labels;
    std::vector<Scalar> coords;
    for (int i = 0; i < grid; ++i) {
      labels.push_back("p" + std::to_string(i));
      coords.push_back(Scalar(i, grid));
    }
    sp = MetricSpace::circle(std::move(labels), coords);
    if (kind == SampledKind::Doubling) {
      for (const Scalar& u : coords) {
        Scalar v = Scalar(2) * u;
        values.push_back(v - v.floor());
      }
      if (id.empty()) id = "doubling:" + std::to_string(grid) + ":" + mode_name;
    } else {
      for (const Scalar& u : coords) {
        Scalar v = u + alpha;
        values.push_back(v - v.floor());
      }
      if (id.empty()) id = "rotation:" + alpha.str() + ":" + std::to_string(grid) + ":" + mode_name;
    }
  }
  return finish_sampled(std::move(sp), std::move(values), mode, std::move(id), info);
}

MetricSystem sample_custom_map_system(MetricSpace grid_space, std::vector<Scalar> values,
                                      CostMode mode, std::string id) {
  if (grid_space.kind != MetricKind::Line && grid_space.kind != MetricKind::Circle)
    fail(Errc::UnsupportedKind, "custom sampling needs a line or circle grid");
  grid_space.validate();
  if (values.size() != grid_space.labels.size())
    fail(Errc::BadParameter, "one map value per grid point required");
  if (id.empty()) id = "custom-sampled";
  SampledInfo info{SampledKind::Custom, Scalar(0), grid_space.n(), mode};
  return finish_sampled(std::move(grid_space), std::move(values), mode, std::move(id), info);
}

}  // namespace avgchain
