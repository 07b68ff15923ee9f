#pragma once

#include <functional>
#include <vector>

#include "avgchain/rational.hpp"

// Data-parallel inner loops, each in two variants: a plain serial reference
// and an OpenMP version parallelized over independent output cells. Both
// compute every cell by the same fixed serial scan, so their outputs are
// identical (min-plus needs no reassociation); the serial variants stay as
// the comparison baseline for tests and the benchmark tool.
namespace avgchain::kernels {

// Worker pool size: OpenMP max threads, capped by AVGCHAIN_THREADS / set_worker_cap.
int worker_count();
void set_worker_cap(int cap);  // cap <= 0 removes the cap

// out[u*n+v] = dist[map[u]*n+v]
void step_cost_from_map_serial(const std::vector<Scalar>& dist, const std::vector<int>& map,
                               int n, std::vector<Scalar>& out);
void step_cost_from_map(const std::vector<Scalar>& dist, const std::vector<int>& map,
                        int n, std::vector<Scalar>& out);

// Generic n x n table fill; fn(u, v) must be pure.
void fill_table_serial(int n, std::vector<Scalar>& out, const std::function<Scalar(int, int)>& fn);
void fill_table(int n, std::vector<Scalar>& out, const std::function<Scalar(int, int)>& fn);

// One min-plus relaxation over a complete cost digraph:
//   out[v] = min_u (g[u] + w[u*n+v]),  parent[v] = least argmin u (optional).
void minplus_relax_serial(const std::vector<Scalar>& g, const std::vector<Scalar>& w, int n,
                          std::vector<Scalar>& out, std::vector<int>* parent);
void minplus_relax(const std::vector<Scalar>& g, const std::vector<Scalar>& w, int n,
                   std::vector<Scalar>& out, std::vector<int>* parent);

}  // namespace avgchain::kernels
