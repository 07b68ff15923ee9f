#include <doctest.h>

#include <random>

#include "avgchain/average_chain.hpp"
#include "avgchain/shadowing.hpp"
#include "avgchain/zoo.hpp"
#include "support/oracles.hpp"

using namespace avgchain;

namespace {

MetricSystem random_permutation_system(std::mt19937& rng, int n) {
  std::vector<int> perm(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<size_t>(i)] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  return make_system(oracle::random_metric(rng, n), std::move(perm), "perm");
}

}  // namespace

TEST_CASE("flattening a power chain yields an average chain of the base map") {
  std::mt19937 rng(701);
  int done = 0;
  while (done < 30) {
    int n = 3 + static_cast<int>(rng() % 3);
    long k = 2 + static_cast<long>(rng() % 3);
    MetricSystem sys = oracle::random_system(rng, n, "r");
    MetricSystem pow = power_system(sys, k);
    Scalar delta = oracle::random_rational(rng, 1, 4, 2);
    int x = static_cast<int>(rng() % n), y = static_cast<int>(rng() % n);
    DecisionReport rep = has_average_chain(pow, x, y, delta);
    if (!rep.truth()) continue;
    StepSequence flat = flatten_power_chain(sys, k, *rep.witness, delta);
    CHECK(flat.states.front() == x);
    CHECK(flat.states.back() == y);
    CHECK(flat.length() == rep.witness->length() * k);
    CHECK(is_average_chain(sys, flat.states, delta).truth());
    ++done;
  }
}

TEST_CASE("subsampling a fine chain yields an average chain of the power map") {
  std::mt19937 rng(702);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 2 + static_cast<int>(rng() % 4);
    long k = 2 + static_cast<long>(rng() % 3);
    // discrete metric keeps the Lipschitz constant at 1
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back("s" + std::to_string(i));
    MetricSystem sys =
        make_system(MetricSpace::discrete(labels), oracle::random_map(rng, n), "d");
    Scalar delta = oracle::random_rational(rng, 1, 3, 2);
    Scalar eps = subsample_tolerance(sys, k, delta);
    CHECK(eps.exact_equal(delta / (Scalar(k) * sys.lipschitz.pow(k - 1))));

    // true orbit for m*k steps, then one jump to y: average D/(m*k)
    int x = static_cast<int>(rng() % n), y = static_cast<int>(rng() % n);
    long m = (sys.space.diameter / eps).floor_long() / k + 2;
    std::vector<int> states;
    OrbitInfo orb = orbit_info(sys, x);
    for (long i = 0; i < m * k; ++i) states.push_back(orb.at(i));
    states.push_back(y);
    REQUIRE(is_average_chain(sys, states, eps).truth());

    StepSequence sub = subsample_chain_for_power(sys, k, make_step_sequence(sys, states), delta);
    CHECK(sub.states.front() == x);
    CHECK(sub.states.back() == y);
    CHECK(sub.length() == m);
    CHECK(is_average_chain(power_system(sys, k), sub.states, delta).truth());
  }
}

TEST_CASE("pairing two half-tolerance chains gives a product chain") {
  std::mt19937 rng(703);
  int done = 0;
  while (done < 30) {
    int n = 2 + static_cast<int>(rng() % 3);
    MetricSystem sys = oracle::random_system(rng, n, "r");
    Scalar delta = oracle::random_rational(rng, 1, 4, 2);
    Scalar half = delta / Scalar(2);
    DecisionReport ra = has_average_chain(sys, static_cast<int>(rng() % n),
                                          static_cast<int>(rng() % n), half);
    DecisionReport rb = has_average_chain(sys, static_cast<int>(rng() % n),
                                          static_cast<int>(rng() % n), half);
    if (!ra.truth() || !rb.truth()) continue;
    if (ra.witness->length() != rb.witness->length()) continue;
    ProductChain pc = pair_chains_product(sys, *ra.witness, *rb.witness, delta);
    CHECK(is_average_chain(pc.system, pc.chain.states, delta).truth());
    ++done;
  }
}

TEST_CASE("product transitivity witness on the mod-6 rotation") {
  MetricSystem sys = zoo("mod2k:3");
  for (const Scalar& delta : {Scalar(1, 2), Scalar(1), Scalar(2)}) {
    ProductWitness wit = product_transitive_witness(sys, {0, 1}, {3, 0}, delta);
    Scalar half = delta / Scalar(2);
    CHECK(wit.w.states.front() == 0);
    CHECK(wit.w.states.back() == 3);
    CHECK(wit.z.states.front() == 1);
    CHECK(wit.z.states.back() == 0);
    CHECK(wit.w.length() == wit.z.length());
    CHECK(is_average_chain(sys, wit.w.states, half).truth());
    CHECK(is_average_chain(sys, wit.z.states, half).truth());
    CHECK(is_average_chain(wit.paired.system, wit.paired.chain.states, delta).truth());
  }
}

TEST_CASE("product transitivity witness on random permutation systems") {
  std::mt19937 rng(704);
  for (int trial = 0; trial < 10; ++trial) {
    int n = 2 + static_cast<int>(rng() % 3);
    MetricSystem sys = random_permutation_system(rng, n);
    std::pair<int, int> from{static_cast<int>(rng() % n), static_cast<int>(rng() % n)};
    std::pair<int, int> to{static_cast<int>(rng() % n), static_cast<int>(rng() % n)};
    ProductWitness wit = product_transitive_witness(sys, from, to, Scalar(2));
    CHECK(is_average_chain(wit.paired.system, wit.paired.chain.states, Scalar(2)).truth());
    CHECK(wit.paired.chain.states.front() ==
          wit.paired.system.label_index(
              "(" + sys.space.labels[static_cast<size_t>(from.first)] + "," +
              sys.space.labels[static_cast<size_t>(from.second)] + ")"));
  }
}

TEST_CASE("alternating pseudo-orbit construction meets its average bound") {
  MetricSystem sys = zoo("mod2k:3");
  WSequenceResult ws = w_sequence(sys, 0, 1, 3);
  CHECK(ws.preimages == std::vector<int>{3, 5, 1});
  CHECK(ws.spec.cycle == std::vector<int>{0, 2, 4, 3, 5, 1});
  CHECK(ws.average.str() == "1/3");
  CHECK(ws.bound.str() == "1/3");
  CHECK(ws.at_bound);

  std::mt19937 rng(705);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 2 + static_cast<int>(rng() % 4);
    MetricSystem perm = random_permutation_system(rng, n);
    long n0 = 1 + static_cast<long>(rng() % 5);
    int x = static_cast<int>(rng() % n), y = static_cast<int>(rng() % n);
    WSequenceResult w = w_sequence(perm, x, y, n0);
    CHECK(w.average <= w.bound);
    CHECK(w.spec.cycle.size() == static_cast<size_t>(2 * n0));
    CHECK(w.preimages.back() == y);
    CHECK(w.spec.cycle.front() == x);
  }

  CHECK_THROWS_AS(w_sequence(zoo("constant:5"), 1, 4, 2), Error);  // not surjective
}

TEST_CASE("dual component pseudo-orbits on the two parity cycles") {
  MetricSystem sys = zoo("mod2k:3");
  DualComponentSpecs duo = dual_component_pseudo_orbits(sys, {0, 2, 4}, {1, 3, 5}, 3);
  CHECK(duo.x == 0);
  CHECK(duo.y == 1);
  CHECK(duo.forward.cycle == std::vector<int>{0, 2, 4, 3, 5, 1});
  CHECK(duo.dual.cycle == std::vector<int>{1, 3, 5, 2, 4, 0});
  CHECK(duo.average_forward.str() == "1/3");
  CHECK(duo.average_dual.str() == "1/3");

  CHECK_THROWS_AS(dual_component_pseudo_orbits(sys, {0, 1}, {2, 3}, 1), Error);
  CHECK_THROWS_AS(dual_component_pseudo_orbits(sys, {0, 2, 4}, {0, 1}, 1), Error);
}

TEST_CASE("shadow hits splice into a chain between the anchors") {
  MetricSystem swap = zoo("swap2");
  WSequenceResult ws = w_sequence(swap, 0, 1, 1);
  auto chain = extract_chain_from_shadow(swap, ws, 0, Scalar(1, 2));
  REQUIRE(chain.has_value());
  CHECK(chain->states.front() == 0);
  CHECK(chain->states.back() == 1);
  for (const Scalar& e : chain->step_errors) CHECK(e < Scalar(1, 2));
  // z = b never comes pointwise-close to the alternating sequence
  CHECK_FALSE(extract_chain_from_shadow(swap, ws, 1, Scalar(1, 2)).has_value());

  // identity on two points: no candidate ever crosses
  MetricSystem two = zoo("shift-words:1");
  WSequenceResult wt = w_sequence(two, 0, 1, 1);
  CHECK_FALSE(extract_chain_from_shadow(two, wt, 0, Scalar(1, 2)).has_value());
  CHECK_FALSE(extract_chain_from_shadow(two, wt, 1, Scalar(1, 2)).has_value());

  // with eta above the diameter everything hits and the splice is immediate
  auto wide = extract_chain_from_shadow(swap, ws, 1, Scalar(3));
  REQUIRE(wide.has_value());
  CHECK(wide->states.front() == 0);
  CHECK(wide->states.back() == 1);
}

TEST_CASE("interleaving a power spec transfers the limsup bound") {
  MetricSystem sys = zoo("mod2k:3");
  OrbitSpec spec_k = eventually_periodic_spec({}, {0, 2});
  InterleaveResult res = interleave_alasp_power(sys, 2, spec_k);
  REQUIRE(res.input_limsup.exact);
  CHECK(res.input_limsup.value().str() == "1/2");
  REQUIRE(res.output_limsup.exact);
  CHECK(res.output_limsup.value().str() == "1/4");
  CHECK(res.spec.cycle == std::vector<int>{0, 2, 2, 4});
  CHECK(res.limsup_bound_ok);
  CHECK(res.transfer_checked);

  std::mt19937 rng(706);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 2 + static_cast<int>(rng() % 4);
    MetricSystem psys = random_permutation_system(rng, n);
    long k = 2 + static_cast<long>(rng() % 3);
    std::vector<int> cyc;
    for (int i = 0; i < 2 + static_cast<int>(rng() % 3); ++i)
      cyc.push_back(static_cast<int>(rng() % n));
    InterleaveResult r = interleave_alasp_power(psys, k, eventually_periodic_spec({}, cyc));
    CHECK(r.limsup_bound_ok);
    CHECK(r.transfer_checked);
  }
}
