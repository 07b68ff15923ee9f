#include "avgchain/shadowing.hpp"

#include <algorithm>
#include <exception>
#include <numeric>
#include <set>

#include "avgchain/chain_graph.hpp"

namespace avgchain {

bool check_pseudo_orbit(const MetricSystem& sys, const std::vector<int>& states,
                        const Scalar& delta) {
  if (delta <= Scalar(0)) fail(Errc::NonpositiveDelta, "delta must be positive");
  if (states.size() < 2) fail(Errc::TooShort, "a pseudo-orbit needs at least one step");
  StepSequence seq = make_step_sequence(sys, states);
  for (const Scalar& e : seq.step_errors)
    if (e >= delta) return false;
  return true;
}

bool check_average_pseudo_orbit(const MetricSystem& sys, const std::vector<int>& states,
                                const Scalar& delta, long window_min) {
  if (delta <= Scalar(0)) fail(Errc::NonpositiveDelta, "delta must be positive");
  if (window_min < 1) fail(Errc::BadParameter, "window floor must be >= 1");
  if (static_cast<long>(states.size()) < window_min + 1)
    fail(Errc::TooShort, "sequence shorter than the window floor");
  StepSequence seq = make_step_sequence(sys, states);
  const long len = seq.length();
  // All windows of length >= window_min, via prefix sums.
  for (long k = 0; k < len; ++k)
    for (long n = window_min; k + n <= len; ++n) {
      Scalar avg = (seq.prefix_sums[static_cast<size_t>(k + n)] -
                    seq.prefix_sums[static_cast<size_t>(k)]) /
                   Scalar(n);
      if (avg >= delta) return false;
    }
  return true;
}

DecisionReport check_almost_average_pseudo_orbit(const MetricSystem& sys, const OrbitSpec& spec,
                                                 const Scalar& delta) {
  if (delta <= Scalar(0)) fail(Errc::NonpositiveDelta, "delta must be positive");
  LimsupResult ls = step_error_limsup(sys, spec);
  DecisionReport rep;
  rep.delta = delta;
  rep.exact = ls.exact;
  if (ls.hi < delta) {
    rep.verdict = Verdict::True;
  } else if (ls.lo >= delta) {
    rep.verdict = Verdict::False;
  } else {
    rep.verdict = Verdict::Indeterminate;
    rep.note = "step-error limsup bracket [" + ls.lo.str() + ", " + ls.hi.str() +
               "] straddles delta";
  }
  return rep;
}

ShadowReport shadow_in_average(const MetricSystem& sys, const OrbitSpec& spec, int z,
                               const Scalar& epsilon) {
  if (epsilon <= Scalar(0)) fail(Errc::NonpositiveEpsilon, "epsilon must be positive");
  ShadowReport rep;
  rep.z = z;
  rep.epsilon = epsilon;
  rep.mismatch = mismatch_limsup(sys, spec, z);
  rep.exact = rep.mismatch.exact;
  if (rep.mismatch.hi < epsilon)
    rep.verdict = Verdict::True;
  else if (rep.mismatch.lo >= epsilon)
    rep.verdict = Verdict::False;
  else
    rep.verdict = Verdict::Indeterminate;
  return rep;
}

bool shadow_pointwise(const MetricSystem& sys, const std::vector<int>& states, int z,
                      const Scalar& epsilon) {
  if (epsilon <= Scalar(0)) fail(Errc::NonpositiveEpsilon, "epsilon must be positive");
  if (states.empty()) fail(Errc::EmptyInput, "empty sequence");
  OrbitInfo zo = orbit_info(sys, z);
  for (size_t i = 0; i < states.size(); ++i) {
    sys.check_state(states[i]);
    if (sys.dist(zo.at(static_cast<long>(i)), states[i]) >= epsilon) return false;
  }
  return true;
}

Scalar upper_density_prefix(const std::vector<long>& hits, long n) {
  if (n < 1) fail(Errc::HorizonZero, "prefix length must be >= 1");
  long count = 0;
  for (long h : hits)
    if (h >= 0 && h < n) ++count;
  return Scalar(count) / Scalar(n);
}

SyndeticCheck is_syndetic_prefix(const std::vector<long>& hits, long horizon) {
  if (horizon < 1) fail(Errc::HorizonZero, "horizon must be >= 1");
  std::vector<long> in;
  for (long h : hits)
    if (h >= 0 && h < horizon) in.push_back(h);
  std::sort(in.begin(), in.end());
  SyndeticCheck chk;
  if (in.empty()) {
    chk.max_gap = horizon;
    chk.syndetic_at_horizon = false;
    return chk;
  }
  long gap = in.front();
  for (size_t i = 0; i + 1 < in.size(); ++i) gap = std::max(gap, in[i + 1] - in[i]);
  gap = std::max(gap, horizon - 1 - in.back());
  chk.max_gap = gap;
  chk.syndetic_at_horizon = gap <= (horizon + 1) / 2;
  return chk;
}

namespace {

Scalar seq_value(const ScalarSeqSpec& s, long i) {
  const long h = static_cast<long>(s.head.size());
  if (i < h) return s.head[static_cast<size_t>(i)];
  return s.cycle[static_cast<size_t>((i - h) % static_cast<long>(s.cycle.size()))];
}

Scalar cycle_mean_of(const ScalarSeqSpec& s) {
  Scalar total(0);
  for (const Scalar& v : s.cycle) total += v;
  return total / Scalar(static_cast<long>(s.cycle.size()));
}

bool seq_exact(const ScalarSeqSpec& s) {
  for (const Scalar& v : s.head)
    if (!v.exact()) return false;
  for (const Scalar& v : s.cycle)
    if (!v.exact()) return false;
  return true;
}

long lcm_small(long a, long b) { return a / std::gcd(a, b) * b; }

}  // namespace

ProductShadowBoundReport product_shadow_bound(const ScalarSeqSpec& a, const ScalarSeqSpec& b,
                                              const Scalar& eta, const Scalar& diameter) {
  if (eta <= Scalar(0)) fail(Errc::NonpositiveEta, "eta must be positive");
  if (diameter <= Scalar(0)) fail(Errc::BadParameter, "diameter must be positive");
  if (a.cycle.empty() || b.cycle.empty()) fail(Errc::EmptyInput, "profiles need nonempty cycles");
  ProductShadowBoundReport rep;
  const Scalar wall = Scalar(2) * diameter + Scalar(1);
  rep.threshold = eta / wall;
  const Scalar hypothesis = (eta * eta) / (wall * wall);
  rep.limsup_a = cycle_mean_of(a);
  rep.limsup_b = cycle_mean_of(b);
  rep.exact = seq_exact(a) && seq_exact(b) && eta.exact() && diameter.exact();
  if (rep.limsup_a >= hypothesis || rep.limsup_b >= hypothesis)
    fail(Errc::HypothesisUnmet, "profile limsup not below eta^2/(2D+1)^2 = " + hypothesis.str());

  const long ha = static_cast<long>(a.head.size()), hb = static_cast<long>(b.head.size());
  const long start = std::max(ha, hb);
  const long window =
      lcm_small(static_cast<long>(a.cycle.size()), static_cast<long>(b.cycle.size()));
  auto density_over = [&](const std::function<Scalar(long)>& val) {
    long cnt = 0;
    for (long j = 0; j < window; ++j)
      if (val(start + j) >= rep.threshold) ++cnt;
    return Scalar(cnt) / Scalar(window);
  };
  rep.ud_a = density_over([&](long i) { return seq_value(a, i); });
  rep.ud_b = density_over([&](long i) { return seq_value(b, i); });
  rep.ud_c =
      density_over([&](long i) { return Scalar::max(seq_value(a, i), seq_value(b, i)); });
  Scalar max_total(0);
  for (long j = 0; j < window; ++j)
    max_total += Scalar::max(seq_value(a, start + j), seq_value(b, start + j));
  rep.limsup_max = max_total / Scalar(window);

  rep.density_bound_ok = rep.ud_a <= rep.threshold && rep.ud_b <= rep.threshold;
  rep.union_bound_ok = rep.ud_c <= rep.ud_a + rep.ud_b;
  rep.final_bound_ok = rep.limsup_max <= eta;
  return rep;
}

namespace {

// Lowest-index preimage chain y_0 = y, f(y_{-j}) = y_{-(j-1)}, restricted to
// `allowed` when given.
std::vector<int> preimage_chain(const MetricSystem& sys, int y, long steps,
                                const std::vector<char>* allowed) {
  std::vector<int> rev{y};
  int cur = y;
  for (long j = 1; j < steps; ++j) {
    int pre = -1;
    for (int s = 0; s < sys.n(); ++s) {
      if (allowed != nullptr && !(*allowed)[static_cast<size_t>(s)]) continue;
      if (sys.map[s] == cur) {
        pre = s;
        break;
      }
    }
    if (pre < 0)
      fail(Errc::NotSurjective, "state " + sys.space.labels[static_cast<size_t>(cur)] +
                                    " has no preimage in the required set");
    rev.push_back(pre);
    cur = pre;
  }
  std::reverse(rev.begin(), rev.end());
  return rev;  // y_{-(steps-1)} .. y_0
}

std::vector<int> alternating_cycle(const MetricSystem& sys, int x, long n0,
                                   const std::vector<int>& preimages) {
  std::vector<int> cyc;
  cyc.reserve(static_cast<size_t>(2 * n0));
  int s = x;
  for (long j = 0; j < n0; ++j) {
    cyc.push_back(s);
    s = sys.map[s];
  }
  cyc.insert(cyc.end(), preimages.begin(), preimages.end());
  return cyc;
}

}  // namespace

WSequenceResult w_sequence(const MetricSystem& sys, int x, int y, long n0) {
  if (n0 < 1) fail(Errc::BadParameter, "n0 must be >= 1");
  sys.check_state(x);
  sys.check_state(y);
  if (!sys.explicit_map()) fail(Errc::NotExplicitMap, "construction follows true orbits");
  if (!sys.surjective)
    fail(Errc::NotSurjective, "backward chains need a surjective map");
  WSequenceResult res;
  res.x = x;
  res.y = y;
  res.n0 = n0;
  res.preimages = preimage_chain(sys, y, n0, nullptr);
  res.spec = eventually_periodic_spec({}, alternating_cycle(sys, x, n0, res.preimages));
  res.average = step_error_limsup(sys, res.spec).value();
  res.bound = sys.space.diameter / Scalar(n0);
  if (res.average > res.bound)
    fail(Errc::InvariantBreach, "period average exceeds diameter/n0");
  res.at_bound = res.average == res.bound;
  return res;
}

DualComponentSpecs dual_component_pseudo_orbits(const MetricSystem& sys,
                                                const std::vector<int>& comp1,
                                                const std::vector<int>& comp2, long n0) {
  if (n0 < 1) fail(Errc::BadParameter, "n0 must be >= 1");
  if (comp1.empty() || comp2.empty()) fail(Errc::EmptyInput, "components must be nonempty");
  if (!sys.explicit_map()) fail(Errc::NotExplicitMap, "construction follows true orbits");
  std::vector<char> in1(static_cast<size_t>(sys.n()), 0), in2(static_cast<size_t>(sys.n()), 0);
  for (int s : comp1) {
    sys.check_state(s);
    in1[static_cast<size_t>(s)] = 1;
  }
  for (int s : comp2) {
    sys.check_state(s);
    if (in1[static_cast<size_t>(s)]) fail(Errc::BadParameter, "components must be disjoint");
    in2[static_cast<size_t>(s)] = 1;
  }
  for (int s : comp1)
    if (!in1[static_cast<size_t>(sys.map[s])])
      fail(Errc::NotForwardInvariant, "first component is not forward invariant");
  for (int s : comp2)
    if (!in2[static_cast<size_t>(sys.map[s])])
      fail(Errc::NotForwardInvariant, "second component is not forward invariant");

  DualComponentSpecs out;
  out.n0 = n0;
  out.x = *std::min_element(comp1.begin(), comp1.end());
  out.y = *std::min_element(comp2.begin(), comp2.end());
  std::vector<int> pre_y = preimage_chain(sys, out.y, n0, &in2);
  std::vector<int> pre_x = preimage_chain(sys, out.x, n0, &in1);
  out.forward = eventually_periodic_spec({}, alternating_cycle(sys, out.x, n0, pre_y));
  out.dual = eventually_periodic_spec({}, alternating_cycle(sys, out.y, n0, pre_x));
  out.average_forward = step_error_limsup(sys, out.forward).value();
  out.average_dual = step_error_limsup(sys, out.dual).value();
  return out;
}

namespace {

// Worst one-step expansion among pairs closer than eta.
Scalar modulus_of_expansion(const MetricSystem& sys, const Scalar& eta) {
  Scalar worst(0);
  for (int a = 0; a < sys.n(); ++a)
    for (int b = 0; b < sys.n(); ++b)
      if (sys.dist(a, b) < eta)
        worst = Scalar::max(worst, sys.dist(sys.map[a], sys.map[b]));
  return worst;
}

}  // namespace

std::optional<StepSequence> extract_chain_from_shadow(const MetricSystem& sys,
                                                      const WSequenceResult& wseq, int z,
                                                      const Scalar& eta) {
  if (eta <= Scalar(0)) fail(Errc::NonpositiveEta, "eta must be positive");
  sys.check_state(z);
  if (!sys.explicit_map()) fail(Errc::NotExplicitMap, "shadow extraction follows true orbits");
  const long period = 2 * wseq.n0;
  const long horizon = period * sys.n();
  const std::vector<int>& cyc = wseq.spec.cycle;
  OrbitInfo zo = orbit_info(sys, z);
  const Scalar delta_eta = Scalar::max(modulus_of_expansion(sys, eta), eta);

  std::vector<long> hits_x, hits_y;
  for (long i = 0; i < horizon; ++i) {
    const long pos = i % period;
    if (sys.dist(zo.at(i), cyc[static_cast<size_t>(pos)]) < eta) {
      if (pos < wseq.n0)
        hits_x.push_back(i);
      else
        hits_y.push_back(i);
    }
  }
  long attempts = 0;
  for (long i1 : hits_x) {
    const long j1 = i1 % period;
    for (long i2 : hits_y) {
      if (i2 <= i1) continue;
      if (++attempts > 100000) return std::nullopt;
      const long j2 = i2 % period;
      std::vector<int> states;
      // x-orbit prefix, then a stretch of the true orbit of z, then the tail
      // of the y-block; splices land on shadow hits.
      int s = wseq.x;
      for (long j = 0; j < j1; ++j) {
        states.push_back(s);
        s = sys.map[s];
      }
      const long z_from = j1 >= 1 ? i1 : i1 + 1;
      for (long i = z_from; i < i2; ++i) states.push_back(zo.at(i));
      if (states.empty()) states.push_back(wseq.x);
      for (long pos = j2; pos < period; ++pos) states.push_back(cyc[static_cast<size_t>(pos)]);
      if (states.back() != wseq.y || states.front() != wseq.x || states.size() < 2) continue;
      StepSequence chain = make_step_sequence(sys, std::move(states));
      bool ok = true;
      for (const Scalar& e : chain.step_errors)
        if (e >= delta_eta) {
          ok = false;
          break;
        }
      if (ok) return chain;
    }
  }
  return std::nullopt;
}

InterleaveResult interleave_alasp_power(const MetricSystem& sys, long k, const OrbitSpec& spec_k) {
  if (k < 1) fail(Errc::BadParameter, "power k must be >= 1");
  if (!sys.explicit_map()) fail(Errc::NotExplicitMap, "interleaving follows true orbits");
  MetricSystem powk = k == 1 ? sys : power_system(sys, k);
  InterleaveResult res;
  res.input_limsup = step_error_limsup(powk, spec_k);

  auto flatten_states = [&](const std::vector<int>& ys, bool full_tail) {
    std::vector<int> out;
    const size_t upto = full_tail ? ys.size() : ys.size() - 1;
    for (size_t m = 0; m < upto; ++m) {
      int s = ys[m];
      for (long j = 0; j < k; ++j) {
        out.push_back(s);
        s = sys.f(s);
      }
    }
    if (!full_tail) out.push_back(ys.back());
    return out;
  };

  OrbitSpec flat;
  switch (spec_k.kind) {
    case OrbitSpec::Kind::Explicit:
      flat = explicit_spec(flatten_states(spec_k.head, false));
      break;
    case OrbitSpec::Kind::EventuallyPeriodic:
      flat = eventually_periodic_spec(
          spec_k.head.empty() ? std::vector<int>{} : flatten_states(spec_k.head, true),
          flatten_states(spec_k.cycle, true));
      break;
    case OrbitSpec::Kind::BlockDoubling: {
      // No block-doubling structure survives the stretch; materialize a
      // depth-capped prefix instead.
      const int depth = std::min(spec_k.depth, 14);
      const long len = 2 * ((1L << depth) - 1) + 1;
      flat = explicit_spec(flatten_states(materialize(powk, spec_k, len), false));
      break;
    }
  }
  res.spec = flat;
  res.output_limsup = step_error_limsup(sys, flat);
  res.limsup_bound_ok = res.output_limsup.hi <= res.input_limsup.hi;

  // Factor-k transfer: the power-level mismatch average over n steps is at
  // most k times the base-level average over nk steps, since the subsampled
  // mismatches are a subset. Checked literally on a prefix for every z.
  long base_len;
  if (spec_k.kind == OrbitSpec::Kind::Explicit)
    base_len = static_cast<long>(spec_k.head.size()) - 1;
  else if (spec_k.kind == OrbitSpec::Kind::EventuallyPeriodic)
    base_len = static_cast<long>(spec_k.head.size()) +
               4 * static_cast<long>(spec_k.cycle.size());
  else
    base_len = 2 * ((1L << std::min(spec_k.depth, 10)) - 1);
  base_len = std::max(1L, std::min(base_len, 2048L));
  std::vector<int> ys = materialize(powk, spec_k, base_len + 1);
  std::vector<int> xs = flatten_states(ys, false);
  res.transfer_checked = true;
  for (int z = 0; z < sys.n() && res.transfer_checked; ++z) {
    OrbitInfo zo = orbit_info(sys, z);
    Scalar power_sum(0), base_sum(0);
    for (long i = 0; i < base_len; ++i)
      power_sum += sys.dist(zo.at(i * k), ys[static_cast<size_t>(i)]);
    for (long r = 0; r < base_len * k; ++r)
      base_sum += sys.dist(zo.at(r), xs[static_cast<size_t>(r)]);
    Scalar lhs = power_sum / Scalar(base_len);
    Scalar rhs = Scalar(k) * (base_sum / Scalar(base_len * k));
    if (lhs > rhs) res.transfer_checked = false;
  }
  return res;
}

namespace {

struct CandidateCheck {
  bool all_failed = true;  // every z gets verdict not-shadowed
  std::vector<ShadowReport> per_z;
};

CandidateCheck check_all_z(const MetricSystem& sys, const OrbitSpec& spec,
                           const Scalar& epsilon) {
  const int n = sys.n();
  CandidateCheck out;
  out.per_z.resize(static_cast<size_t>(n));
  std::exception_ptr first_error = nullptr;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (int z = 0; z < n; ++z) {
    try {
      out.per_z[static_cast<size_t>(z)] = shadow_in_average(sys, spec, z, epsilon);
    } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
      {
        if (first_error == nullptr) first_error = std::current_exception();
      }
    }
  }
  if (first_error != nullptr) std::rethrow_exception(first_error);
  for (const ShadowReport& r : out.per_z)
    if (r.verdict != Verdict::False) out.all_failed = false;
  return out;
}

}  // namespace

std::optional<FalsificationWitness> alasp_falsify(const MetricSystem& sys, const Scalar& epsilon,
                                                  const std::vector<Scalar>& delta_grid,
                                                  int max_depth) {
  if (epsilon <= Scalar(0)) fail(Errc::NonpositiveEpsilon, "epsilon must be positive");
  if (delta_grid.empty()) fail(Errc::EmptyInput, "empty delta grid");
  for (const Scalar& d : delta_grid)
    if (d <= Scalar(0)) fail(Errc::NonpositiveDelta, "delta grid entries must be positive");
  if (!sys.explicit_map()) fail(Errc::NotExplicitMap, "adversarial specs follow true orbits");
  if (max_depth < 1) fail(Errc::BadParameter, "max depth must be >= 1");

  const std::vector<int> periodic = minimal_states(sys);
  // Distinct cycles, each sorted, ordered by least member.
  std::vector<std::vector<int>> cycles;
  {
    std::set<int> seen;
    for (int s : periodic) {
      if (seen.count(s)) continue;
      OrbitInfo info = orbit_info(sys, s);
      std::vector<int> cyc = info.cycle;
      for (int c : cyc) seen.insert(c);
      std::sort(cyc.begin(), cyc.end());
      cycles.push_back(std::move(cyc));
    }
    std::sort(cycles.begin(), cycles.end(),
              [](const std::vector<int>& a, const std::vector<int>& b) { return a[0] < b[0]; });
  }

  for (const Scalar& delta : delta_grid) {
    // Alternations between ordered pairs of distinct periodic states; their
    // step-error limsup is exactly 0, so membership always holds.
    for (int s1 : periodic)
      for (int s2 : periodic) {
        if (s1 == s2) continue;
        OrbitSpec spec = block_doubling_spec(s1, s2, max_depth);
        LimsupResult membership = step_error_limsup(sys, spec);
        if (!(membership.hi < delta)) continue;
        CandidateCheck chk = check_all_z(sys, spec, epsilon);
        if (chk.all_failed) {
          FalsificationWitness wit;
          wit.epsilon = epsilon;
          wit.delta = delta;
          wit.family = "alternation";
          wit.spec = std::move(spec);
          wit.membership = std::move(membership);
          wit.per_z = std::move(chk.per_z);
          return wit;
        }
      }
    // Dual-component families over ordered pairs of distinct cycles, n0
    // growing by doubling until the period average clears delta.
    const long n0_cap = 1L << std::min(max_depth, 12);
    for (const auto& c1 : cycles)
      for (const auto& c2 : cycles) {
        if (c1 == c2) continue;
        for (long n0 = 1; n0 <= n0_cap; n0 *= 2) {
          DualComponentSpecs duo = dual_component_pseudo_orbits(sys, c1, c2, n0);
          LimsupResult membership = step_error_limsup(sys, duo.forward);
          if (!(membership.hi < delta)) continue;
          CandidateCheck chk = check_all_z(sys, duo.forward, epsilon);
          if (chk.all_failed) {
            FalsificationWitness wit;
            wit.epsilon = epsilon;
            wit.delta = delta;
            wit.family = "dual-component";
            wit.spec = duo.forward;
            wit.membership = std::move(membership);
            wit.per_z = std::move(chk.per_z);
            return wit;
          }
        }
      }
  }
  return std::nullopt;
}

}  // namespace avgchain
