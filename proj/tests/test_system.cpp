#include <doctest.h>

#include <random>

#include "avgchain/system.hpp"
#include "support/oracles.hpp"

using namespace avgchain;

TEST_CASE("metric factories and validation") {
  MetricSpace disc = MetricSpace::discrete({"a", "b", "c"});
  CHECK(disc.d(0, 1).str() == "1");
  CHECK(disc.d(1, 1).str() == "0");
  CHECK(disc.diameter.str() == "1");

  MetricSpace line = MetricSpace::line({"p", "q", "r"}, {Scalar(0), Scalar(1, 4), Scalar(1)});
  CHECK(line.d(0, 2).str() == "1");
  CHECK(line.d(1, 2).str() == "3/4");

  MetricSpace circ = MetricSpace::circle({"u", "v"}, {Scalar(0), Scalar(3, 4)});
  CHECK(circ.d(0, 1).str() == "1/4");  // wraps around

  CHECK_THROWS_AS(MetricSpace::discrete({"a", "a"}), Error);
  // Triangle violation: d(0,2) = 5 > 1 + 1.
  CHECK_THROWS_AS(MetricSpace::matrix({"a", "b", "c"},
                                      {Scalar(0), Scalar(1), Scalar(5),  //
                                       Scalar(1), Scalar(0), Scalar(1),  //
                                       Scalar(5), Scalar(1), Scalar(0)}),
                  Error);
  // Asymmetry.
  CHECK_THROWS_AS(MetricSpace::matrix({"a", "b"}, {Scalar(0), Scalar(1), Scalar(2), Scalar(0)}),
                  Error);
}

TEST_CASE("make_system fills the step cost table from the map") {
  MetricSpace sp = MetricSpace::line({"0", "1", "2"}, {Scalar(0), Scalar(1, 2), Scalar(1)});
  MetricSystem sys = make_system(sp, {1, 2, 2}, "t");
  for (int u = 0; u < 3; ++u)
    for (int v = 0; v < 3; ++v) CHECK(sys.cost(u, v).exact_equal(sp.d(sys.map[u], v)));
  CHECK_FALSE(sys.surjective);  // nothing maps to 0
  CHECK(sys.lipschitz >= Scalar(1));
  CHECK(sys.label_index("2") == 2);
  CHECK_THROWS_AS(sys.label_index("zz"), Error);
  CHECK_THROWS_AS(sys.check_state(3), Error);
  CHECK_THROWS_AS(sys.f(-1), Error);
}

TEST_CASE("orbit decomposition") {
  MetricSpace sp = MetricSpace::discrete({"a", "b", "c", "d"});
  MetricSystem sys = make_system(sp, {1, 2, 3, 2}, "t");  // a->b->c->d->c
  OrbitInfo info = orbit_info(sys, 0);
  CHECK(info.path == std::vector<int>{0, 1});
  CHECK(info.cycle == std::vector<int>{2, 3});
  CHECK(info.at(0) == 0);
  CHECK(info.at(5) == 3);
  CHECK(info.preperiod() == 2);
  CHECK(info.period() == 2);
}

TEST_CASE("step sequences carry sums and averages") {
  MetricSystem sys = make_system(MetricSpace::discrete({"a", "b"}), {1, 0}, "swap");
  StepSequence seq = make_step_sequence(sys, {0, 0, 1});
  // f(a) = b so step a->a costs 1, step a->b costs 0.
  CHECK(seq.step_errors[0].str() == "1");
  CHECK(seq.step_errors[1].str() == "0");
  CHECK(seq.prefix_sums[2].str() == "1");
  CHECK(seq.prefix_avgs[2].str() == "1/2");
  CHECK(seq.length() == 2);
  CHECK(check_step_sequence(sys, seq));
}

TEST_CASE("power system composes the map") {
  std::mt19937 rng(7001);
  for (int trial = 0; trial < 10; ++trial) {
    MetricSystem sys = oracle::random_system(rng, 5, "r");
    MetricSystem p2 = power_system(sys, 2);
    MetricSystem p6a = power_system(p2, 3);
    MetricSystem p6b = power_system(sys, 6);
    CHECK(p6a.map == p6b.map);
    for (size_t i = 0; i < p6a.w.size(); ++i) CHECK(p6a.w[i].exact_equal(p6b.w[i]));
    CHECK(power_system(sys, 2).lipschitz <= sys.lipschitz * sys.lipschitz);
  }
}

TEST_CASE("product system uses the max metric") {
  MetricSystem a = make_system(MetricSpace::discrete({"a", "b"}), {1, 0}, "A");
  MetricSystem b =
      make_system(MetricSpace::line({"0", "1"}, {Scalar(0), Scalar(1, 2)}), {0, 0}, "B");
  MetricSystem prod = product_system(a, b);
  CHECK(prod.n() == 4);
  int s01 = prod.label_index("(a,1)");
  int s10 = prod.label_index("(b,0)");
  CHECK(prod.dist(s01, s10).str() == "1");  // max(1, 1/2)
  int s00 = prod.label_index("(a,0)");
  CHECK(prod.dist(s00, s01).str() == "1/2");  // max(0, 1/2)
  // map acts coordinatewise
  CHECK(prod.map[static_cast<size_t>(s01)] == prod.label_index("(b,0)"));
  prod.space.validate();
}

TEST_CASE("sampled systems: projected map snaps, true map keeps the error") {
  MetricSystem proj = sample_map_system(SampledKind::Doubling, Scalar(0), 8,
                                        CostMode::ProjectedMap);
  CHECK(proj.explicit_map());
  CHECK(proj.n() == 8);
  // x = 1/8 doubles to 2/8, a grid point: exact.
  CHECK(proj.map[1] == 2);
  CHECK(proj.cost(1, 2).str() == "0");

  MetricSystem truem = sample_map_system(SampledKind::Rotation, Scalar(1, 3), 8,
                                         CostMode::TrueMap);
  CHECK_FALSE(truem.explicit_map());
  CHECK_THROWS_AS(truem.f(0), Error);
  // W[0][v] = circle distance from 1/3 to v/8; nearest grid point is 3/8.
  CHECK(truem.cost(0, 3).str() == "1/24");
  Scalar best = truem.cost(0, 0);
  for (int v = 0; v < 8; ++v) best = Scalar::min(best, truem.cost(0, v));
  CHECK(best.str() == "1/24");

  MetricSystem tent = sample_map_system(SampledKind::Tent, Scalar(0), 5, CostMode::ProjectedMap);
  CHECK(tent.n() == 5);
  // grid 0, 1/4, 1/2, 3/4, 1; tent(3/4) = 1/2 exactly.
  CHECK(tent.map[3] == 2);

  MetricSystem custom = sample_custom_map_system(
      MetricSpace::line({"0", "1/2", "1"}, {Scalar(0), Scalar(1, 2), Scalar(1)}),
      {Scalar(1, 2), Scalar(1), Scalar(0)}, CostMode::ProjectedMap, "cust");
  CHECK(custom.map == std::vector<int>{1, 2, 0});
}
