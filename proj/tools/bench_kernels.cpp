#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "avgchain/kernels.hpp"

namespace {

using avgchain::Scalar;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

bool tables_equal(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!a[i].exact_equal(b[i])) return false;
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  int n = 160;
  int rounds = 8;
  for (int i = 1; i + 1 < argc; i += 2) {
    std::string flag = argv[i];
    if (flag == "--n") n = std::stoi(argv[i + 1]);
    if (flag == "--rounds") rounds = std::stoi(argv[i + 1]);
  }

  std::mt19937 rng(20240911u);
  std::uniform_int_distribution<long> num(0, 12), den(1, 7);
  std::vector<Scalar> dist(static_cast<size_t>(n) * n), w(static_cast<size_t>(n) * n);
  std::vector<int> map(static_cast<size_t>(n));
  for (auto& s : dist) s = Scalar(num(rng), den(rng));
  for (auto& s : w) s = Scalar(num(rng), den(rng));
  for (int i = 0; i < n; ++i) map[static_cast<size_t>(i)] = static_cast<int>(rng() % n);
  std::vector<Scalar> g(static_cast<size_t>(n));
  for (auto& s : g) s = Scalar(num(rng), den(rng));

  std::printf("kernel benchmark: n = %d, rounds = %d, workers = %d\n", n, rounds,
              avgchain::kernels::worker_count());

  bool all_equal = true;
  {
    std::vector<Scalar> a, b;
    auto t0 = Clock::now();
    for (int r = 0; r < rounds; ++r) avgchain::kernels::step_cost_from_map_serial(dist, map, n, a);
    double ts = ms_since(t0);
    t0 = Clock::now();
    for (int r = 0; r < rounds; ++r) avgchain::kernels::step_cost_from_map(dist, map, n, b);
    double tp = ms_since(t0);
    all_equal = all_equal && tables_equal(a, b);
    std::printf("step_cost_from_map   serial %8.2f ms   parallel %8.2f ms   speedup %.2fx\n",
                ts, tp, tp > 0 ? ts / tp : 0.0);
  }
  {
    auto fn = [&](int u, int v) {
      return dist[static_cast<size_t>(u) * n + v] + w[static_cast<size_t>(v) * n + u];
    };
    std::vector<Scalar> a, b;
    auto t0 = Clock::now();
    for (int r = 0; r < rounds; ++r) avgchain::kernels::fill_table_serial(n, a, fn);
    double ts = ms_since(t0);
    t0 = Clock::now();
    for (int r = 0; r < rounds; ++r) avgchain::kernels::fill_table(n, b, fn);
    double tp = ms_since(t0);
    all_equal = all_equal && tables_equal(a, b);
    std::printf("fill_table           serial %8.2f ms   parallel %8.2f ms   speedup %.2fx\n",
                ts, tp, tp > 0 ? ts / tp : 0.0);
  }
  {
    std::vector<Scalar> a, b;
    std::vector<int> pa, pb;
    auto t0 = Clock::now();
    for (int r = 0; r < rounds; ++r) avgchain::kernels::minplus_relax_serial(g, w, n, a, &pa);
    double ts = ms_since(t0);
    t0 = Clock::now();
    for (int r = 0; r < rounds; ++r) avgchain::kernels::minplus_relax(g, w, n, b, &pb);
    double tp = ms_since(t0);
    all_equal = all_equal && tables_equal(a, b) && pa == pb;
    std::printf("minplus_relax        serial %8.2f ms   parallel %8.2f ms   speedup %.2fx\n",
                ts, tp, tp > 0 ? ts / tp : 0.0);
  }

  std::printf("outputs identical: %s\n", all_equal ? "yes" : "NO");
  return all_equal ? 0 : 1;
}
