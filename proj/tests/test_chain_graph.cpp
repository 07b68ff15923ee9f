#include <doctest.h>

#include <random>

#include "avgchain/chain_graph.hpp"
#include "avgchain/zoo.hpp"
#include "support/oracles.hpp"

using namespace avgchain;

TEST_CASE("threshold graph edges and monotonicity") {
  std::mt19937 rng(501);
  MetricSystem sys = oracle::random_system(rng, 5, "r");
  Scalar d1(1, 2), d2(3, 2);
  ThresholdGraph g1 = delta_graph(sys, d1), g2 = delta_graph(sys, d2);
  for (int u = 0; u < 5; ++u)
    for (int v = 0; v < 5; ++v) {
      CHECK(g1.edge(u, v) == (sys.cost(u, v) < d1));
      if (g1.edge(u, v)) CHECK(g2.edge(u, v));  // monotone in delta
    }
  // the true-map edge is always present for explicit systems
  for (int u = 0; u < 5; ++u) CHECK(g1.edge(u, sys.map[u]));
}

TEST_CASE("delta chains agree with brute-force reachability") {
  std::mt19937 rng(502);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 2 + static_cast<int>(rng() % 5);
    MetricSystem sys = oracle::random_system(rng, n, "r");
    for (const Scalar& delta :
         {Scalar(1, 4), Scalar(1, 2), Scalar(1), Scalar(2), Scalar(9, 2)}) {
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
          auto chain = find_delta_chain(sys, x, y, delta);
          bool brute = oracle::delta_chain_exists(sys, x, y, delta, n);
          REQUIRE(chain.has_value() == brute);
          if (chain) {
            CHECK(chain->states.front() == x);
            CHECK(chain->states.back() == y);
            CHECK(chain->length() >= 1);
            for (const Scalar& e : chain->step_errors) CHECK(e < delta);
          }
        }
    }
  }
}

TEST_CASE("chain components of the mod-6 rotation split by parity at one half") {
  MetricSystem sys = zoo("mod2k:3");
  ComponentPartition parts = chain_components(sys, Scalar(1, 2));
  REQUIRE(parts.components.size() == 2);
  CHECK(parts.components[0] == std::vector<int>{0, 2, 4});
  CHECK(parts.components[1] == std::vector<int>{1, 3, 5});
  CHECK(parts.recurrent == std::vector<int>{0, 1, 2, 3, 4, 5});

  DecisionReport rep = is_chain_transitive(sys, Scalar(1, 2));
  CHECK(rep.verdict == Verdict::False);
  REQUIRE(rep.failing_pair.has_value());
  CHECK(rep.failing_pair->first == 0);
  CHECK(rep.failing_pair->second == 1);
  CHECK(is_chain_transitive(sys, Scalar(2)).verdict == Verdict::True);
}

TEST_CASE("two-state swap: chain transitive at every delta, mixing at none below 2") {
  MetricSystem sys = zoo("swap2");
  DecisionReport all = is_chain_transitive_all_delta(sys);
  CHECK(all.verdict == Verdict::True);
  DecisionReport half = is_chain_transitive(sys, Scalar(1, 2));
  CHECK(half.verdict == Verdict::True);
  REQUIRE(half.witness.has_value());
  CHECK(half.witness->states.front() == 0);

  DecisionReport mix = is_chain_mixing(sys, Scalar(1, 2));
  CHECK(mix.verdict == Verdict::False);
  REQUIRE(mix.cycle_gcd.has_value());
  CHECK(*mix.cycle_gcd == 2);
  CHECK(is_chain_mixing(sys, Scalar(3)).verdict == Verdict::True);
}

TEST_CASE("orbit-based transitivity and mixing") {
  CHECK(is_top_transitive(zoo("swap2")).verdict == Verdict::True);
  CHECK(is_top_transitive(zoo("mod2k:3")).verdict == Verdict::False);
  CHECK(is_top_mixing(zoo("swap2")).verdict == Verdict::False);
  MetricSystem one = make_system(MetricSpace::discrete({"x"}), {0}, "one");
  CHECK(is_top_mixing(one).verdict == Verdict::True);
}

TEST_CASE("hit-time profiles and finite-horizon syndeticity") {
  MetricSystem swap = zoo("swap2");
  ErgodicProfile prof = strongly_ergodic_profile(swap, 16);
  CHECK(prof.strongly_ergodic_at_horizon);
  for (const HitProfile& hp : prof.pairs) {
    CHECK(hp.syndetic_at_horizon);
    CHECK(hp.max_gap <= 2);
  }

  ErgodicProfile flat = strongly_ergodic_profile(zoo("constant:5"), 16);
  CHECK_FALSE(flat.strongly_ergodic_at_horizon);
}

TEST_CASE("minimal states are the periodic points") {
  CHECK(minimal_states(zoo("constant:5")) == std::vector<int>{0});
  CHECK(minimal_states(zoo("mod2k:3")) == std::vector<int>{0, 1, 2, 3, 4, 5});
  MetricSystem sys = make_system(MetricSpace::discrete({"a", "b", "c"}), {1, 2, 1}, "t");
  CHECK(minimal_states(sys) == std::vector<int>{1, 2});
}
