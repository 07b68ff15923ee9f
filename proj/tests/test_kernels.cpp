#include <doctest.h>

#include <random>

#include "avgchain/kernels.hpp"
#include "support/oracles.hpp"

using avgchain::Scalar;
namespace k = avgchain::kernels;

namespace {

bool same(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!a[i].exact_equal(b[i])) return false;
  return true;
}

}  // namespace

TEST_CASE("parallel kernels match the serial reference bit for bit") {
  std::mt19937 rng(42);
  for (int n : {1, 2, 7, 23, 64}) {
    std::vector<Scalar> dist = oracle::random_costs(rng, n);
    std::vector<int> map = oracle::random_map(rng, n);
    std::vector<Scalar> g(static_cast<size_t>(n));
    for (auto& v : g) v = oracle::random_rational(rng, 0, 9, 5);

    std::vector<Scalar> a, b;
    k::step_cost_from_map_serial(dist, map, n, a);
    k::step_cost_from_map(dist, map, n, b);
    CHECK(same(a, b));

    auto fn = [&](int u, int v) {
      return dist[static_cast<size_t>(u) * n + v] * Scalar(2) + g[static_cast<size_t>(v)];
    };
    k::fill_table_serial(n, a, fn);
    k::fill_table(n, b, fn);
    CHECK(same(a, b));

    std::vector<int> pa, pb;
    k::minplus_relax_serial(g, dist, n, a, &pa);
    k::minplus_relax(g, dist, n, b, &pb);
    CHECK(same(a, b));
    CHECK(pa == pb);
  }
}

TEST_CASE("worker cap is honored and does not change results") {
  std::mt19937 rng(43);
  const int n = 17;
  std::vector<Scalar> dist = oracle::random_costs(rng, n);
  std::vector<int> map = oracle::random_map(rng, n);

  std::vector<Scalar> ref;
  k::step_cost_from_map_serial(dist, map, n, ref);
  for (int cap : {1, 2, 3}) {
    k::set_worker_cap(cap);
    CHECK(k::worker_count() <= cap);
    std::vector<Scalar> out;
    k::step_cost_from_map(dist, map, n, out);
    CHECK(same(ref, out));
  }
  k::set_worker_cap(0);
  CHECK(k::worker_count() >= 1);
}

TEST_CASE("minplus relax picks the lowest argmin parent") {
  // Two equally cheap predecessors; the parent must be the lower index.
  const int n = 3;
  std::vector<Scalar> g{Scalar(1), Scalar(1), Scalar(5)};
  std::vector<Scalar> w(static_cast<size_t>(n) * n, Scalar(7));
  w[0 * 3 + 2] = Scalar(2);  // 0 -> 2
  w[1 * 3 + 2] = Scalar(2);  // 1 -> 2, same total
  std::vector<Scalar> out;
  std::vector<int> parent;
  k::minplus_relax(g, w, n, out, &parent);
  CHECK(out[2].str() == "3");
  CHECK(parent[2] == 0);
}
