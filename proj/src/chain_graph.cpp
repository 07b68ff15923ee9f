#include "avgchain/chain_graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace avgchain {

ThresholdGraph delta_graph(const MetricSystem& sys, const Scalar& delta) {
  if (delta <= Scalar(0)) fail(Errc::NonpositiveDelta, "delta must be positive");
  ThresholdGraph g;
  g.delta = delta;
  g.n = sys.n();
  g.adj.assign(static_cast<size_t>(g.n) * g.n, 0);
  g.succ.assign(static_cast<size_t>(g.n), {});
  for (int u = 0; u < g.n; ++u)
    for (int v = 0; v < g.n; ++v)
      if (sys.cost(u, v) < delta) {
        g.adj[static_cast<size_t>(u) * g.n + v] = 1;
        g.succ[u].push_back(v);
      }
  return g;
}

namespace {

// BFS distances with >= 1 edge semantics: dist[v] = length of the shortest
// nonempty path x -> v, parent[v] its predecessor; -1 when unreachable.
void bfs_from(const ThresholdGraph& g, int x, std::vector<long>& dist, std::vector<int>& parent) {
  dist.assign(static_cast<size_t>(g.n), -1);
  parent.assign(static_cast<size_t>(g.n), -1);
  std::deque<int> q;
  for (int v : g.succ[x])
    if (dist[v] == -1) {
      dist[v] = 1;
      parent[v] = x;
      q.push_back(v);
    }
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    for (int v : g.succ[u])
      if (dist[v] == -1) {
        dist[v] = dist[u] + 1;
        parent[v] = u;
        q.push_back(v);
      }
  }
}

}  // namespace

std::optional<StepSequence> find_delta_chain(const MetricSystem& sys, int x, int y,
                                             const Scalar& delta) {
  sys.check_state(x);
  sys.check_state(y);
  ThresholdGraph g = delta_graph(sys, delta);
  std::vector<long> dist;
  std::vector<int> parent;
  bfs_from(g, x, dist, parent);
  if (dist[y] == -1) return std::nullopt;
  std::vector<int> states(static_cast<size_t>(dist[y]) + 1);
  int cur = y;
  for (long i = dist[y]; i > 0; --i) {
    states[static_cast<size_t>(i)] = cur;
    cur = parent[cur];
  }
  states[0] = x;
  return make_step_sequence(sys, std::move(states));
}

std::vector<int> scc_ids(const ThresholdGraph& g) {
  const int n = g.n;
  std::vector<int> index(static_cast<size_t>(n), -1), low(static_cast<size_t>(n), 0),
      comp(static_cast<size_t>(n), -1), stk;
  std::vector<char> on(static_cast<size_t>(n), 0);
  std::vector<std::pair<int, int>> frames;
  int next = 0, ncomp = 0;
  for (int s = 0; s < n; ++s) {
    if (index[s] != -1) continue;
    frames.emplace_back(s, 0);
    while (!frames.empty()) {
      const int u = frames.back().first;
      const int pi = frames.back().second;
      if (pi == 0 && index[u] == -1) {
        index[u] = low[u] = next++;
        stk.push_back(u);
        on[u] = 1;
      }
      if (pi < static_cast<int>(g.succ[u].size())) {
        frames.back().second = pi + 1;
        const int v = g.succ[u][pi];
        if (index[v] == -1)
          frames.emplace_back(v, 0);
        else if (on[v])
          low[u] = std::min(low[u], index[v]);
      } else {
        if (low[u] == index[u]) {
          while (true) {
            const int v = stk.back();
            stk.pop_back();
            on[v] = 0;
            comp[v] = ncomp;
            if (v == u) break;
          }
          ++ncomp;
        }
        frames.pop_back();
        if (!frames.empty()) {
          const int p = frames.back().first;
          low[p] = std::min(low[p], low[u]);
        }
      }
    }
  }
  return comp;
}

long cycle_length_gcd(const ThresholdGraph& g, const std::vector<int>& members) {
  if (members.empty()) return 0;
  std::vector<char> in(static_cast<size_t>(g.n), 0);
  for (int m : members) in[m] = 1;
  std::vector<long> lev(static_cast<size_t>(g.n), -1);
  std::deque<int> q{members[0]};
  lev[members[0]] = 0;
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    for (int v : g.succ[u])
      if (in[v] && lev[v] == -1) {
        lev[v] = lev[u] + 1;
        q.push_back(v);
      }
  }
  long gcd = 0;
  for (int u : members)
    for (int v : g.succ[u])
      if (in[v]) gcd = std::gcd(gcd, std::labs(lev[u] + 1 - lev[v]));
  return gcd;
}

ComponentPartition chain_components(const MetricSystem& sys, const Scalar& delta) {
  ThresholdGraph g = delta_graph(sys, delta);
  std::vector<int> comp = scc_ids(g);
  const int n = g.n;
  int ncomp = 0;
  for (int c : comp) ncomp = std::max(ncomp, c + 1);
  std::vector<std::vector<int>> groups(static_cast<size_t>(ncomp));
  for (int v = 0; v < n; ++v) groups[comp[v]].push_back(v);
  ComponentPartition part;
  part.delta = delta;
  for (auto& grp : groups) {
    std::sort(grp.begin(), grp.end());
    bool recurrent = grp.size() > 1 || g.edge(grp[0], grp[0]);
    if (!recurrent) continue;
    part.recurrent.insert(part.recurrent.end(), grp.begin(), grp.end());
    part.components.push_back(grp);
  }
  std::sort(part.recurrent.begin(), part.recurrent.end());
  std::sort(part.components.begin(), part.components.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) { return a[0] < b[0]; });
  return part;
}

namespace {

bool threshold_transitive(const ThresholdGraph& g, std::pair<int, int>* failing) {
  std::vector<long> dist;
  std::vector<int> parent;
  for (int x = 0; x < g.n; ++x) {
    bfs_from(g, x, dist, parent);
    for (int y = 0; y < g.n; ++y)
      if (dist[y] == -1) {
        if (failing != nullptr) *failing = {x, y};
        return false;
      }
  }
  return true;
}

std::optional<StepSequence> sample_witness_chain(const MetricSystem& sys, const Scalar& delta) {
  return find_delta_chain(sys, 0, sys.n() - 1, delta);
}

}  // namespace

DecisionReport is_chain_transitive(const MetricSystem& sys, const Scalar& delta) {
  ThresholdGraph g = delta_graph(sys, delta);
  DecisionReport rep;
  rep.exact = sys.exact();
  rep.delta = delta;
  std::pair<int, int> failing;
  if (threshold_transitive(g, &failing)) {
    rep.verdict = Verdict::True;
    rep.witness = sample_witness_chain(sys, delta);
  } else {
    rep.verdict = Verdict::False;
    rep.failing_pair = failing;
  }
  return rep;
}

DecisionReport is_chain_transitive_all_delta(const MetricSystem& sys) {
  // Candidate thresholds: every distinct positive cost plus one value below
  // the minimum positive cost; verdicts are monotone in delta.
  std::vector<Scalar> thresholds;
  Scalar minpos = sys.min_positive_cost();
  if (minpos > Scalar(0)) {
    thresholds.push_back(minpos / Scalar(2));
    std::vector<Scalar> vals;
    for (const Scalar& v : sys.w)
      if (v > Scalar(0)) vals.push_back(v);
    std::sort(vals.begin(), vals.end(), [](const Scalar& a, const Scalar& b) { return a < b; });
    for (const Scalar& v : vals)
      if (thresholds.back() != v) thresholds.push_back(v);
  } else {
    thresholds.push_back(Scalar(1));
  }
  DecisionReport rep;
  rep.exact = sys.exact();
  for (const Scalar& t : thresholds) {
    ThresholdGraph g = delta_graph(sys, t);
    std::pair<int, int> failing;
    if (!threshold_transitive(g, &failing)) {
      rep.verdict = Verdict::False;
      rep.failing_delta = t;
      rep.failing_pair = failing;
      return rep;
    }
  }
  rep.verdict = Verdict::True;
  rep.delta = thresholds.front();
  rep.witness = sample_witness_chain(sys, thresholds.front());
  rep.note = "transitive at every positive delta; finest threshold shown";
  return rep;
}

DecisionReport is_chain_mixing(const MetricSystem& sys, const Scalar& delta) {
  ThresholdGraph g = delta_graph(sys, delta);
  DecisionReport rep;
  rep.exact = sys.exact();
  rep.delta = delta;
  std::pair<int, int> failing;
  if (!threshold_transitive(g, &failing)) {
    rep.verdict = Verdict::False;
    rep.failing_pair = failing;
    rep.note = "not chain transitive at this delta";
    return rep;
  }
  std::vector<int> all(static_cast<size_t>(g.n));
  std::iota(all.begin(), all.end(), 0);
  long gcd = cycle_length_gcd(g, all);
  rep.cycle_gcd = gcd;
  if (gcd == 1) {
    rep.verdict = Verdict::True;
    rep.witness = sample_witness_chain(sys, delta);
  } else {
    rep.verdict = Verdict::False;
    rep.note = "cycle lengths share period " + std::to_string(gcd);
  }
  return rep;
}

DecisionReport is_top_transitive(const MetricSystem& sys) {
  DecisionReport rep;
  rep.exact = true;
  const int n = sys.n();
  for (int x = 0; x < n; ++x) {
    OrbitInfo info = orbit_info(sys, x);
    if (info.path.size() + info.cycle.size() == static_cast<size_t>(n)) {
      rep.verdict = Verdict::True;
      std::vector<int> orbit = info.path;
      orbit.insert(orbit.end(), info.cycle.begin(), info.cycle.end());
      rep.witness = make_step_sequence(sys, std::move(orbit));
      rep.note = "orbit of " + sys.space.labels[x] + " visits every state";
      return rep;
    }
  }
  rep.verdict = Verdict::False;
  rep.note = "no orbit visits every state";
  return rep;
}

DecisionReport is_top_mixing(const MetricSystem& sys) {
  // Deterministic finite orbits are eventually periodic, so f^n(x) can hit a
  // target for all large n only when every orbit ends in a fixed point equal
  // to that target; with more than one state some pair always fails.
  DecisionReport rep;
  rep.exact = true;
  if (sys.n() == 1) {
    (void)sys.f(0);
    rep.verdict = Verdict::True;
    rep.note = "single fixed point";
    return rep;
  }
  (void)sys.f(0);
  rep.verdict = Verdict::False;
  rep.failing_pair = std::make_pair(0, 1);
  rep.note = "hit sets of distinct targets cannot both be cofinite";
  return rep;
}

ErgodicProfile strongly_ergodic_profile(const MetricSystem& sys, long horizon) {
  Scalar eps = sys.min_positive_dist();
  if (eps <= Scalar(0)) eps = Scalar(1);
  return strongly_ergodic_profile(sys, horizon, eps);
}

ErgodicProfile strongly_ergodic_profile(const MetricSystem& sys, long horizon, const Scalar& eps) {
  if (horizon < 1) fail(Errc::HorizonZero, "horizon must be >= 1");
  if (eps <= Scalar(0)) fail(Errc::NonpositiveEpsilon, "eps must be positive");
  const int n = sys.n();
  ErgodicProfile prof;
  prof.horizon = horizon;
  prof.eps = eps;
  prof.strongly_ergodic_at_horizon = true;
  for (int x = 0; x < n; ++x) {
    OrbitInfo info = orbit_info(sys, x);
    for (int y = 0; y < n; ++y) {
      HitProfile hp;
      hp.x = x;
      hp.y = y;
      for (long t = 0; t < horizon; ++t)
        if (sys.dist(info.at(t), y) < eps) hp.hits.push_back(t);
      long gap = 0;
      if (hp.hits.empty()) {
        gap = horizon;
      } else {
        gap = hp.hits.front();
        for (size_t i = 0; i + 1 < hp.hits.size(); ++i)
          gap = std::max(gap, hp.hits[i + 1] - hp.hits[i]);
        gap = std::max(gap, horizon - 1 - hp.hits.back());
      }
      hp.max_gap = gap;
      hp.syndetic_at_horizon = !hp.hits.empty() && gap <= (horizon + 1) / 2;
      prof.strongly_ergodic_at_horizon =
          prof.strongly_ergodic_at_horizon && hp.syndetic_at_horizon;
      prof.pairs.push_back(std::move(hp));
    }
  }
  return prof;
}

std::vector<int> minimal_states(const MetricSystem& sys) {
  const int n = sys.n();
  std::vector<char> periodic(static_cast<size_t>(n), 0);
  for (int x = 0; x < n; ++x) {
    if (periodic[x]) continue;
    OrbitInfo info = orbit_info(sys, x);
    for (int c : info.cycle) periodic[c] = 1;
  }
  std::vector<int> out;
  for (int x = 0; x < n; ++x)
    if (periodic[x]) out.push_back(x);
  return out;
}

}  // namespace avgchain
