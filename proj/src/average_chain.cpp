#include "avgchain/average_chain.hpp"

#include <algorithm>

#include "avgchain/kernels.hpp"

namespace avgchain {

namespace {

constexpr long kWitnessLoopCap = 1000000;

void require_positive_delta(const Scalar& delta) {
  if (delta <= Scalar(0)) fail(Errc::NonpositiveDelta, "delta must be positive");
}

}  // namespace

std::vector<int> WalkCostTable::walk_to(long t, int v) const {
  std::vector<int> states(static_cast<size_t>(t) + 1);
  states[static_cast<size_t>(t)] = v;
  for (long i = t; i >= 1; --i) {
    const int cur = states[static_cast<size_t>(i)];
    states[static_cast<size_t>(i) - 1] =
        i == 1 ? source : parent[static_cast<size_t>(i - 1) * n + cur];
  }
  if (states[0] != source) fail(Errc::InvariantBreach, "walk reconstruction lost its source");
  return states;
}

WalkCostTable min_walk_costs(const MetricSystem& sys, int source, long horizon) {
  if (horizon < 1) fail(Errc::HorizonZero, "horizon must be >= 1");
  sys.check_state(source);
  const int n = sys.n();
  WalkCostTable table;
  table.source = source;
  table.horizon = horizon;
  table.n = n;
  table.g.assign(static_cast<size_t>(horizon) * n, Scalar(0));
  table.parent.assign(static_cast<size_t>(horizon) * n, source);
  for (int v = 0; v < n; ++v) table.g[v] = sys.cost(source, v);
  std::vector<Scalar> prev(table.g.begin(), table.g.begin() + n), next;
  std::vector<int> par;
  for (long t = 2; t <= horizon; ++t) {
    kernels::minplus_relax(prev, sys.w, n, next, &par);
    std::copy(next.begin(), next.end(), table.g.begin() + static_cast<size_t>(t - 1) * n);
    std::copy(par.begin(), par.end(), table.parent.begin() + static_cast<size_t>(t - 1) * n);
    prev = next;
  }
  return table;
}

namespace {

// Any cycle inside the tight-edge subgraph of feasible potentials has mean
// exactly mu; plain DFS cycle detection finds one.
std::vector<int> find_tight_cycle(const std::vector<std::vector<int>>& tight, int n) {
  std::vector<int> color(static_cast<size_t>(n), 0);  // 0 white, 1 gray, 2 black
  std::vector<int> path;
  std::vector<std::pair<int, int>> frames;
  for (int s = 0; s < n; ++s) {
    if (color[s] != 0) continue;
    frames.emplace_back(s, 0);
    while (!frames.empty()) {
      const int u = frames.back().first;
      const int pi = frames.back().second;
      if (pi == 0 && color[u] == 0) {
        color[u] = 1;
        path.push_back(u);
      }
      if (pi < static_cast<int>(tight[u].size())) {
        frames.back().second = pi + 1;
        const int v = tight[u][pi];
        if (color[v] == 0) {
          frames.emplace_back(v, 0);
        } else if (color[v] == 1) {
          auto it = std::find(path.begin(), path.end(), v);
          return {it, path.end()};
        }
      } else {
        color[u] = 2;
        path.pop_back();
        frames.pop_back();
      }
    }
  }
  return {};
}

Scalar cycle_mean(const std::vector<Scalar>& w, int n, const std::vector<int>& cycle) {
  Scalar total(0);
  const long len = static_cast<long>(cycle.size());
  for (long i = 0; i < len; ++i)
    total += w[static_cast<size_t>(cycle[i]) * n + cycle[(i + 1) % len]];
  return total / Scalar(len);
}

}  // namespace

MeanCycleResult min_mean_cycle_table(const std::vector<Scalar>& w, int n, bool exact) {
  if (n < 1) fail(Errc::EmptySpace, "no states");
  if (w.size() != static_cast<size_t>(n) * n) fail(Errc::BadParameter, "cost table shape");
  // Karp: D[k][v] = cheapest k-step walk 0 -> v; mu = min_v max_k (D_n - D_k)/(n - k).
  std::vector<Scalar> dk(static_cast<size_t>(n + 1) * n, Scalar(0));
  std::vector<char> fin(static_cast<size_t>(n + 1) * n, 0);
  fin[0] = 1;  // D[0] is 0 at the source only
  for (long k = 1; k <= n; ++k) {
    for (int v = 0; v < n; ++v) {
      Scalar best(0);
      bool found = false;
      for (int u = 0; u < n; ++u) {
        if (!fin[static_cast<size_t>(k - 1) * n + u]) continue;
        Scalar c = dk[static_cast<size_t>(k - 1) * n + u] + w[static_cast<size_t>(u) * n + v];
        if (!found || c < best) {
          best = std::move(c);
          found = true;
        }
      }
      dk[static_cast<size_t>(k) * n + v] = std::move(best);
      fin[static_cast<size_t>(k) * n + v] = found ? 1 : 0;
    }
  }
  Scalar mu(0);
  bool have_mu = false;
  for (int v = 0; v < n; ++v) {
    if (!fin[static_cast<size_t>(n) * n + v]) continue;
    Scalar inner(0);
    bool have_inner = false;
    for (long k = 0; k < n; ++k) {
      if (!fin[static_cast<size_t>(k) * n + v]) continue;
      Scalar ratio = (dk[static_cast<size_t>(n) * n + v] - dk[static_cast<size_t>(k) * n + v]) /
                     Scalar(n - k);
      if (!have_inner || ratio > inner) {
        inner = std::move(ratio);
        have_inner = true;
      }
    }
    if (have_inner && (!have_mu || inner < mu)) {
      mu = std::move(inner);
      have_mu = true;
    }
  }
  if (!have_mu) fail(Errc::InvariantBreach, "complete digraph yielded no cycle mean");

  // Feasible potentials for the reduced costs w - mu, then a cycle of tight
  // edges p[u] + w[u][v] - mu == p[v].
  std::vector<Scalar> p(static_cast<size_t>(n), Scalar(0));
  for (int round = 0; round < n; ++round) {
    bool changed = false;
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) {
        Scalar cand = p[u] + w[static_cast<size_t>(u) * n + v] - mu;
        if (cand < p[v]) {
          p[v] = std::move(cand);
          changed = true;
        }
      }
    if (!changed) break;
  }
  std::vector<std::vector<int>> tight(static_cast<size_t>(n));
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (p[u] + w[static_cast<size_t>(u) * n + v] - mu == p[v]) tight[u].push_back(v);
  MeanCycleResult res;
  res.mu = mu;
  res.exact = exact;
  res.cycle = find_tight_cycle(tight, n);
  if (res.cycle.empty()) fail(Errc::InvariantBreach, "tight subgraph lost its cycle");
  if (cycle_mean(w, n, res.cycle) != mu)
    fail(Errc::InvariantBreach, "witness cycle mean disagrees with Karp value");
  return res;
}

MeanCycleResult min_mean_cycle(const MetricSystem& sys) {
  return min_mean_cycle_table(sys.w, sys.n(), sys.exact());
}

DecisionReport is_average_chain(const MetricSystem& sys, const std::vector<int>& states,
                                const Scalar& delta) {
  require_positive_delta(delta);
  if (states.size() < 2) fail(Errc::TooShort, "a chain needs at least one step");
  StepSequence seq = make_step_sequence(sys, states);
  const long n = seq.length();
  long last_bad = 0;
  for (long m = 1; m <= n; ++m)
    if (seq.prefix_avgs[static_cast<size_t>(m)] >= delta) last_bad = m;
  const bool ok_scan = last_bad < n;
  const bool ok_full = seq.prefix_avgs[static_cast<size_t>(n)] < delta;
  if (ok_scan != ok_full)
    fail(Errc::InvariantBreach, "tail scan disagrees with full-average collapse");
  DecisionReport rep;
  rep.exact = sys.exact();
  rep.delta = delta;
  rep.verdict = ok_full ? Verdict::True : Verdict::False;
  rep.witness = std::move(seq);
  if (ok_full) rep.minimal_n = last_bad + 1;
  return rep;
}

namespace {

struct AvgChainContext {
  const MetricSystem& sys;
  Scalar delta;
  const MeanCycleResult& mc;
};

// Witness for the cycle branch: cheapest walk to the cycle, t laps, one jump.
StepSequence padded_cycle_witness(const AvgChainContext& ctx, const WalkCostTable& table, int x,
                                  int y) {
  const MetricSystem& sys = ctx.sys;
  const std::vector<int>& cyc = ctx.mc.cycle;
  const int c0 = cyc[0];
  const long len = static_cast<long>(cyc.size());
  Scalar lap_cost(0);
  for (long i = 0; i < len; ++i) lap_cost += sys.cost(cyc[i], cyc[(i + 1) % len]);

  long t0 = 0;
  Scalar path_cost(0);
  bool have_path = x == c0;
  for (long t = 1; t <= table.horizon; ++t) {
    const Scalar& c = table.cost(t, c0);
    if (!have_path || c < path_cost) {
      path_cost = c;
      t0 = t;
      have_path = true;
    }
  }
  Scalar jump_cost(0);
  long extra = 0;
  if (y != c0) {
    jump_cost = sys.cost(c0, y);
    extra = 1;
  }
  // Want (path + t*lap + jump) / (t0 + t*len + extra) < delta with minimal t.
  Scalar gap = ctx.delta * Scalar(len) - lap_cost;  // > 0 since mu < delta
  Scalar r = (path_cost + jump_cost - ctx.delta * Scalar(t0 + extra)) / gap;
  long t = std::max(0L, r.floor_long() + 1);
  if (t0 + extra == 0 && t == 0) t = 1;
  if (t > kWitnessLoopCap)
    fail(Errc::SizeOverflow, "witness chain would need " + std::to_string(t) + " cycle laps");

  std::vector<int> states = t0 == 0 ? std::vector<int>{x} : table.walk_to(t0, c0);
  for (long rep = 0; rep < t; ++rep)
    for (long i = 1; i <= len; ++i) states.push_back(cyc[i % len]);
  if (extra == 1) states.push_back(y);
  return make_step_sequence(sys, std::move(states));
}

DecisionReport has_average_chain_impl(const AvgChainContext& ctx, const WalkCostTable& table,
                                      int x, int y) {
  const MetricSystem& sys = ctx.sys;
  DecisionReport rep;
  rep.exact = sys.exact();
  rep.delta = ctx.delta;
  rep.mu = ctx.mc.mu;
  std::optional<long> short_t;
  for (long t = 1; t <= table.horizon; ++t)
    if (table.cost(t, y) < ctx.delta * Scalar(t)) {
      short_t = t;
      break;
    }
  std::optional<StepSequence> witness;
  if (short_t.has_value())
    witness = make_step_sequence(sys, table.walk_to(*short_t, y));
  else if (ctx.mc.mu < ctx.delta)
    witness = padded_cycle_witness(ctx, table, x, y);
  if (!witness.has_value()) {
    rep.verdict = Verdict::False;
    rep.failing_pair = std::make_pair(x, y);
    rep.note = "minimum cycle mean is not below delta and no short walk beats it";
    return rep;
  }
  DecisionReport check = is_average_chain(sys, witness->states, ctx.delta);
  if (!check.truth()) fail(Errc::InvariantBreach, "constructed witness chain fails verification");
  rep.verdict = Verdict::True;
  rep.witness = std::move(witness);
  rep.minimal_n = check.minimal_n;
  return rep;
}

}  // namespace

DecisionReport has_average_chain(const MetricSystem& sys, int x, int y, const Scalar& delta) {
  require_positive_delta(delta);
  sys.check_state(x);
  sys.check_state(y);
  MeanCycleResult mc = min_mean_cycle(sys);
  WalkCostTable table = min_walk_costs(sys, x, sys.n());
  AvgChainContext ctx{sys, delta, mc};
  return has_average_chain_impl(ctx, table, x, y);
}

DecisionReport is_average_chain_transitive(const MetricSystem& sys, const Scalar& delta) {
  require_positive_delta(delta);
  MeanCycleResult mc = min_mean_cycle(sys);
  AvgChainContext ctx{sys, delta, mc};
  DecisionReport rep;
  rep.exact = sys.exact();
  rep.delta = delta;
  rep.mu = mc.mu;
  rep.witness_cycle = mc.cycle;
  if (mc.mu < delta) {
    rep.verdict = Verdict::True;
    WalkCostTable table = min_walk_costs(sys, 0, sys.n());
    DecisionReport sample = has_average_chain_impl(ctx, table, 0, sys.n() - 1);
    rep.witness = sample.witness;
    rep.note = "minimum cycle mean below delta; sample witness for the first/last pair";
    return rep;
  }
  // Closed walks decompose into cycles, so every diagonal pair fails here;
  // scan in lexicographic order anyway to report the first failing pair.
  for (int x = 0; x < sys.n(); ++x) {
    WalkCostTable table = min_walk_costs(sys, x, sys.n());
    for (int y = 0; y < sys.n(); ++y) {
      bool ok = false;
      for (long t = 1; t <= table.horizon && !ok; ++t)
        if (table.cost(t, y) < delta * Scalar(t)) ok = true;
      if (!ok) {
        rep.verdict = Verdict::False;
        rep.failing_pair = std::make_pair(x, y);
        return rep;
      }
    }
  }
  if (rep.exact)
    fail(Errc::InvariantBreach, "cycle-mean bound promised a failing pair but none was found");
  rep.verdict = Verdict::True;
  rep.note = "all ordered pairs verified by short walks (tolerance regime)";
  return rep;
}

DecisionReport is_average_chain_mixing(const MetricSystem& sys, const Scalar& delta) {
  require_positive_delta(delta);
  MeanCycleResult mc = min_mean_cycle(sys);
  DecisionReport rep;
  rep.exact = sys.exact();
  rep.delta = delta;
  rep.mu = mc.mu;
  rep.witness_cycle = mc.cycle;
  const int c = mc.mu.cmp(delta);
  if (c < 0) {
    rep.verdict = Verdict::True;
  } else if (c > 0) {
    rep.verdict = Verdict::False;
    rep.note = "minimum cycle mean exceeds delta";
  } else {
    rep.verdict = Verdict::Indeterminate;
    rep.note = "INDETERMINATE-BOUNDARY: minimum cycle mean equals delta";
  }
  return rep;
}

DecisionReport is_totally_average_chain_transitive(const MetricSystem& sys, const Scalar& delta,
                                                   long kmax) {
  require_positive_delta(delta);
  if (kmax < 1) fail(Errc::BadParameter, "kmax must be >= 1");
  if (kmax > 1 && !sys.explicit_map())
    fail(Errc::NotExplicitMap, "powers beyond k = 1 need an explicit map");
  DecisionReport rep;
  rep.exact = sys.exact();
  rep.delta = delta;
  for (long k = 1; k <= kmax; ++k) {
    MetricSystem pk = k == 1 ? sys : power_system(sys, k);
    DecisionReport sub = is_average_chain_transitive(pk, delta);
    if (k == 1) {
      rep.mu = sub.mu;
      rep.witness = sub.witness;
      rep.witness_cycle = sub.witness_cycle;
    }
    if (!sub.truth()) {
      rep.verdict = Verdict::False;
      rep.failing_power = k;
      rep.failing_pair = sub.failing_pair;
      rep.note = "power k = " + std::to_string(k) + " is not average chain transitive";
      return rep;
    }
  }
  rep.verdict = Verdict::True;
  rep.note = "verified for powers k = 1.." + std::to_string(kmax);
  return rep;
}

StepSequence flatten_power_chain(const MetricSystem& sys, long k, const StepSequence& chain_k,
                                 const Scalar& delta) {
  require_positive_delta(delta);
  if (k < 1) fail(Errc::BadParameter, "power k must be >= 1");
  if (chain_k.states.size() < 2) fail(Errc::TooShort, "input chain needs at least one step");
  MetricSystem powk = k == 1 ? sys : power_system(sys, k);
  if (!is_average_chain(powk, chain_k.states, delta).truth())
    fail(Errc::InvalidInputChain, "input is not a delta-average-chain of the k-th power");
  if (k == 1) return make_step_sequence(sys, chain_k.states);
  std::vector<int> states;
  states.reserve((chain_k.states.size() - 1) * static_cast<size_t>(k) + 1);
  for (size_t p = 0; p + 1 < chain_k.states.size(); ++p) {
    int s = chain_k.states[p];
    for (long j = 0; j < k; ++j) {
      states.push_back(s);
      s = sys.f(s);
    }
  }
  states.push_back(chain_k.states.back());
  StepSequence out = make_step_sequence(sys, std::move(states));
  if (!is_average_chain(sys, out.states, delta).truth())
    fail(Errc::InvariantBreach, "flattened chain fails verification");
  return out;
}

Scalar subsample_tolerance(const MetricSystem& sys, long k, const Scalar& delta) {
  if (k < 1) fail(Errc::BadParameter, "power k must be >= 1");
  Scalar lip = lipschitz_constant(sys);
  return delta / (Scalar(k) * lip.pow(k - 1));
}

StepSequence subsample_chain_for_power(const MetricSystem& sys, long k,
                                       const StepSequence& chain_f, const Scalar& delta) {
  require_positive_delta(delta);
  if (k < 1) fail(Errc::BadParameter, "power k must be >= 1");
  const long len = chain_f.length();
  if (len < 1) fail(Errc::TooShort, "input chain needs at least one step");
  if (len % k != 0) fail(Errc::LengthNotDivisible, "chain length must be a multiple of k");
  Scalar eps = subsample_tolerance(sys, k, delta);
  if (!is_average_chain(sys, chain_f.states, eps).truth())
    fail(Errc::InvalidInputChain, "input is not an eps-average-chain at eps = " + eps.str());
  std::vector<int> states;
  states.reserve(static_cast<size_t>(len / k) + 1);
  for (long j = 0; j * k <= len; ++j) states.push_back(chain_f.states[static_cast<size_t>(j * k)]);
  MetricSystem powk = k == 1 ? sys : power_system(sys, k);
  StepSequence out = make_step_sequence(powk, std::move(states));
  if (!is_average_chain(powk, out.states, delta).truth())
    fail(Errc::InvariantBreach, "subsampled chain fails verification");
  return out;
}

ProductChain pair_chains_product(const MetricSystem& sys, const StepSequence& a,
                                 const StepSequence& b, const Scalar& delta) {
  require_positive_delta(delta);
  if (a.states.size() != b.states.size()) fail(Errc::LengthMismatch, "chains differ in length");
  if (a.states.size() < 2) fail(Errc::TooShort, "chains need at least one step");
  Scalar half = delta / Scalar(2);
  if (!is_average_chain(sys, a.states, half).truth() ||
      !is_average_chain(sys, b.states, half).truth())
    fail(Errc::InvalidInputChain, "inputs are not delta/2-average-chains");
  ProductChain out{product_system(sys, sys), StepSequence{}};
  const int nb = sys.n();
  std::vector<int> states;
  states.reserve(a.states.size());
  for (size_t i = 0; i < a.states.size(); ++i) states.push_back(a.states[i] * nb + b.states[i]);
  out.chain = make_step_sequence(out.system, std::move(states));
  if (!is_average_chain(out.system, out.chain.states, delta).truth())
    fail(Errc::InvariantBreach, "paired chain fails verification");
  return out;
}

ProductWitness product_transitive_witness(const MetricSystem& sys, std::pair<int, int> from,
                                          std::pair<int, int> to, const Scalar& delta,
                                          long kmax_loop) {
  require_positive_delta(delta);
  const int a = from.first, b = from.second, c = to.first, d = to.second;
  sys.check_state(a);
  sys.check_state(b);
  sys.check_state(c);
  sys.check_state(d);
  if (!sys.explicit_map()) fail(Errc::NotExplicitMap, "construction follows true orbits");
  const Scalar quarter = delta / Scalar(4);

  DecisionReport u_rep = has_average_chain(sys, a, c, quarter);
  if (!u_rep.truth())
    fail(Errc::PowerTransitivityUnavailable, "no delta/4-average-chain from first coordinates");
  const StepSequence& u = *u_rep.witness;
  const long nu = u.length();

  DecisionReport v_rep = has_average_chain(sys, c, c, quarter);
  if (!v_rep.truth())
    fail(Errc::PowerTransitivityUnavailable, "no delta/4-average-loop at the first target");
  const StepSequence& v = *v_rep.witness;
  const long p = v.length();
  if (p > kmax_loop)
    fail(Errc::PowerTransitivityUnavailable,
         "shortest loop has length " + std::to_string(p) + " > kmax " + std::to_string(kmax_loop));

  MetricSystem powp = p == 1 ? sys : power_system(sys, p);
  const Scalar half = delta / Scalar(2);
  if (!is_average_chain_transitive(powp, half).truth())
    fail(Errc::PowerTransitivityUnavailable,
         "power " + std::to_string(p) + " is not average chain transitive at delta/2");
  OrbitInfo b_orbit = orbit_info(sys, b);
  DecisionReport y_rep = has_average_chain(powp, b_orbit.at(nu), d, half);
  if (!y_rep.truth())
    fail(Errc::InvariantBreach, "transitive power yielded no chain to the second target");
  const StepSequence& y = *y_rep.witness;
  const long q = y.length();

  std::vector<int> w_states = u.states;
  for (long rep = 0; rep < q; ++rep)
    for (long i = 1; i <= p; ++i) w_states.push_back(v.states[static_cast<size_t>(i)]);

  std::vector<int> z_states;
  z_states.reserve(w_states.size());
  for (long j = 0; j < nu; ++j) z_states.push_back(b_orbit.at(j));
  for (size_t t = 0; t + 1 < y.states.size(); ++t) {
    int s = y.states[t];
    for (long j = 0; j < p; ++j) {
      z_states.push_back(s);
      s = sys.f(s);
    }
  }
  z_states.push_back(y.states.back());

  ProductWitness out;
  out.loop_len = p;
  out.loop_reps = q;
  out.w = make_step_sequence(sys, std::move(w_states));
  out.z = make_step_sequence(sys, std::move(z_states));
  if (out.w.states.size() != out.z.states.size())
    fail(Errc::InvariantBreach, "paired witnesses differ in length");
  if (!is_average_chain(sys, out.w.states, half).truth() ||
      !is_average_chain(sys, out.z.states, half).truth())
    fail(Errc::InvariantBreach, "paired witnesses fail the delta/2 check");
  out.paired = pair_chains_product(sys, out.w, out.z, delta);
  return out;
}

}  // namespace avgchain
