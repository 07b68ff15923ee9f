#include "avgchain/kernels.hpp"

#include <atomic>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace avgchain::kernels {

namespace {

std::atomic<int> g_cap{-1};  // -1: not yet read from env

int env_cap() {
  const char* s = std::getenv("AVGCHAIN_THREADS");
  if (s == nullptr || *s == '\0') return 0;
  int v = std::atoi(s);
  return v > 0 ? v : 0;
}

}  // namespace

int worker_count() {
  int cap = g_cap.load(std::memory_order_relaxed);
  if (cap < 0) {
    cap = env_cap();
    g_cap.store(cap, std::memory_order_relaxed);
  }
#ifdef _OPENMP
  int w = omp_get_max_threads();
#else
  int w = 1;
#endif
  if (cap > 0 && cap < w) w = cap;
  return w < 1 ? 1 : w;
}

void set_worker_cap(int cap) { g_cap.store(cap > 0 ? cap : 0, std::memory_order_relaxed); }

void step_cost_from_map_serial(const std::vector<Scalar>& dist, const std::vector<int>& map,
                               int n, std::vector<Scalar>& out) {
  out.assign(static_cast<size_t>(n) * n, Scalar(0));
  for (int u = 0; u < n; ++u) {
    const size_t src = static_cast<size_t>(map[u]) * n;
    const size_t dst = static_cast<size_t>(u) * n;
    for (int v = 0; v < n; ++v) out[dst + v] = dist[src + v];
  }
}

void step_cost_from_map(const std::vector<Scalar>& dist, const std::vector<int>& map,
                        int n, std::vector<Scalar>& out) {
  out.assign(static_cast<size_t>(n) * n, Scalar(0));
  const int workers = worker_count();
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(workers)
#endif
  for (int u = 0; u < n; ++u) {
    const size_t src = static_cast<size_t>(map[u]) * n;
    const size_t dst = static_cast<size_t>(u) * n;
    for (int v = 0; v < n; ++v) out[dst + v] = dist[src + v];
  }
  (void)workers;
}

void fill_table_serial(int n, std::vector<Scalar>& out, const std::function<Scalar(int, int)>& fn) {
  out.assign(static_cast<size_t>(n) * n, Scalar(0));
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) out[static_cast<size_t>(u) * n + v] = fn(u, v);
}

void fill_table(int n, std::vector<Scalar>& out, const std::function<Scalar(int, int)>& fn) {
  out.assign(static_cast<size_t>(n) * n, Scalar(0));
  const int workers = worker_count();
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(workers)
#endif
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) out[static_cast<size_t>(u) * n + v] = fn(u, v);
  (void)workers;
}

namespace {

inline void relax_cell(const std::vector<Scalar>& g, const std::vector<Scalar>& w, int n, int v,
                       Scalar& out, int* parent) {
  Scalar best = g[0] + w[static_cast<size_t>(0) * n + v];
  int arg = 0;
  for (int u = 1; u < n; ++u) {
    Scalar c = g[u] + w[static_cast<size_t>(u) * n + v];
    if (c.cmp(best) < 0) {
      best = std::move(c);
      arg = u;
    }
  }
  out = std::move(best);
  if (parent != nullptr) *parent = arg;
}

}  // namespace

void minplus_relax_serial(const std::vector<Scalar>& g, const std::vector<Scalar>& w, int n,
                          std::vector<Scalar>& out, std::vector<int>* parent) {
  out.assign(static_cast<size_t>(n), Scalar(0));
  if (parent != nullptr) parent->assign(static_cast<size_t>(n), 0);
  for (int v = 0; v < n; ++v)
    relax_cell(g, w, n, v, out[v], parent != nullptr ? &(*parent)[v] : nullptr);
}

void minplus_relax(const std::vector<Scalar>& g, const std::vector<Scalar>& w, int n,
                   std::vector<Scalar>& out, std::vector<int>* parent) {
  out.assign(static_cast<size_t>(n), Scalar(0));
  if (parent != nullptr) parent->assign(static_cast<size_t>(n), 0);
  const int workers = worker_count();
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(workers)
#endif
  for (int v = 0; v < n; ++v)
    relax_cell(g, w, n, v, out[v], parent != nullptr ? &(*parent)[v] : nullptr);
  (void)workers;
}

}  // namespace avgchain::kernels
