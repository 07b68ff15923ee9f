#include <doctest.h>

#include <functional>
#include <random>

#include "avgchain/average_chain.hpp"
#include "avgchain/zoo.hpp"
#include "support/oracles.hpp"

using namespace avgchain;

TEST_CASE("average-chain verdict on a sequence collapses to the full average") {
  std::mt19937 rng(601);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 2 + static_cast<int>(rng() % 4);
    MetricSystem sys = oracle::random_system(rng, n, "r");
    int len = 1 + static_cast<int>(rng() % 6);
    std::vector<int> states{static_cast<int>(rng() % n)};
    for (int i = 0; i < len; ++i) states.push_back(static_cast<int>(rng() % n));
    Scalar delta = oracle::random_rational(rng, 1, 6, 3);

    StepSequence seq = make_step_sequence(sys, states);
    bool full_avg_ok = seq.total() < delta * Scalar(seq.length());
    DecisionReport rep = is_average_chain(sys, states, delta);
    CHECK(rep.truth() == full_avg_ok);
    if (rep.truth()) {
      REQUIRE(rep.minimal_n.has_value());
      // minimal N: all prefix averages from N on are < delta, and N is least.
      long N = *rep.minimal_n;
      for (long m = N; m <= seq.length(); ++m) CHECK(seq.prefix_avgs[m] < delta);
      if (N > 1) CHECK(seq.prefix_avgs[N - 1] >= delta);
    }
  }
}

TEST_CASE("minimum mean cycle matches simple-cycle enumeration") {
  std::mt19937 rng(602);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 2 + static_cast<int>(rng() % 5);
    std::vector<Scalar> w = oracle::random_costs(rng, n);
    MeanCycleResult res = min_mean_cycle_table(w, n, true);
    auto brute = oracle::simple_cycle_min_mean(w, n);
    REQUIRE(brute.has_value());
    CHECK(res.mu.exact_equal(*brute));
    // witness cycle must achieve the minimum exactly
    REQUIRE_FALSE(res.cycle.empty());
    Scalar total(0);
    for (size_t i = 0; i < res.cycle.size(); ++i) {
      int u = res.cycle[i], v = res.cycle[(i + 1) % res.cycle.size()];
      total += w[static_cast<size_t>(u) * n + v];
    }
    CHECK((total / Scalar(static_cast<long>(res.cycle.size()))).exact_equal(res.mu));
  }
}

TEST_CASE("explicit maps always have a zero-mean cycle") {
  std::mt19937 rng(603);
  for (int trial = 0; trial < 10; ++trial) {
    MetricSystem sys = oracle::random_system(rng, 5, "r");
    CHECK(min_mean_cycle(sys).mu.str() == "0");
  }
}

TEST_CASE("average-chain existence agrees with enumeration plus cycle padding") {
  std::mt19937 rng(604);
  for (int trial = 0; trial < 25; ++trial) {
    int n = 2 + static_cast<int>(rng() % 3);
    MetricSystem sys = oracle::random_system(rng, n, "r");
    for (const Scalar& delta : {Scalar(1, 2), Scalar(1), Scalar(2)}) {
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
          DecisionReport rep = has_average_chain(sys, x, y, delta);
          bool brute = oracle::average_chain_exists(sys, x, y, delta, 6);
          REQUIRE(rep.truth() == brute);
          if (rep.truth()) {
            REQUIRE(rep.witness.has_value());
            CHECK(rep.witness->states.front() == x);
            CHECK(rep.witness->states.back() == y);
            CHECK(rep.witness->total() < delta * Scalar(rep.witness->length()));
            CHECK(check_step_sequence(sys, *rep.witness));
          }
        }
    }
  }
}

TEST_CASE("long witnesses are padded with a cheap cycle") {
  MetricSystem sys = zoo("constant:5");
  // reaching x4 costs 2, so at delta = 1/3 any witness needs > 6 steps
  DecisionReport rep = has_average_chain(sys, 1, 4, Scalar(1, 3));
  REQUIRE(rep.truth());
  REQUIRE(rep.witness.has_value());
  CHECK(rep.witness->length() > 6);
  CHECK(rep.witness->total() < Scalar(1, 3) * Scalar(rep.witness->length()));
  REQUIRE(rep.mu.has_value());
  CHECK(rep.mu->str() == "0");
}

TEST_CASE("walk cost tables match brute enumeration and rebuild their walks") {
  std::mt19937 rng(605);
  MetricSystem sys = oracle::random_system(rng, 4, "r");
  WalkCostTable table = min_walk_costs(sys, 0, 5);
  for (long t = 1; t <= 5; ++t)
    for (int v = 0; v < 4; ++v) {
      // brute minimum over all t-step walks 0 -> v
      Scalar best;
      bool first = true;
      std::vector<int> walk{0};
      std::function<void(int, long, Scalar)> go = [&](int last, long steps, Scalar total) {
        if (steps == t) {
          if (last == v && (first || total < best)) {
            best = total;
            first = false;
          }
          return;
        }
        for (int w = 0; w < 4; ++w) go(w, steps + 1, total + sys.cost(last, w));
      };
      go(0, 0, Scalar(0));
      CHECK(table.cost(t, v).exact_equal(best));
      std::vector<int> states = table.walk_to(t, v);
      CHECK(states.front() == 0);
      CHECK(states.back() == v);
      CHECK(make_step_sequence(sys, states).total().exact_equal(best));
    }
}

TEST_CASE("transitivity and mixing deciders on the built-ins") {
  CHECK(is_average_chain_transitive(zoo("swap2"), Scalar(1, 8)).verdict == Verdict::True);
  CHECK(is_average_chain_transitive(zoo("constant:5"), Scalar(1, 8)).verdict == Verdict::True);
  CHECK(is_average_chain_mixing(zoo("mod2k:3"), Scalar(1, 8)).verdict == Verdict::True);
  CHECK(is_average_chain_mixing(zoo("two-circles:4"), Scalar(1, 4)).verdict == Verdict::True);
}

TEST_CASE("mixing at the exact cycle-mean boundary is flagged, not guessed") {
  MetricSystem rot = zoo("rotation:1/3:4:true-map");
  MeanCycleResult mc = min_mean_cycle(rot);
  REQUIRE(mc.mu.str() == "1/12");
  CHECK(is_average_chain_mixing(rot, Scalar(1, 11)).verdict == Verdict::True);
  CHECK(is_average_chain_mixing(rot, Scalar(1, 13)).verdict == Verdict::False);
  DecisionReport edge = is_average_chain_mixing(rot, Scalar(1, 12));
  CHECK(edge.verdict == Verdict::Indeterminate);
  CHECK(edge.note.find("INDETERMINATE-BOUNDARY") != std::string::npos);
}

TEST_CASE("total transitivity: power layers for explicit maps only") {
  DecisionReport rep = is_totally_average_chain_transitive(zoo("mod2k:3"), Scalar(1, 2), 4);
  CHECK(rep.verdict == Verdict::True);
  MetricSystem rot = zoo("rotation:1/3:8:true-map");
  CHECK_THROWS_AS(is_totally_average_chain_transitive(rot, Scalar(1, 2), 2), Error);
  CHECK(is_totally_average_chain_transitive(rot, Scalar(1, 2), 1).verdict == Verdict::True);
  DecisionReport tiny = is_totally_average_chain_transitive(rot, Scalar(1, 100), 1);
  CHECK(tiny.verdict == Verdict::False);
  REQUIRE(tiny.failing_power.has_value());
  CHECK(*tiny.failing_power == 1);
}
