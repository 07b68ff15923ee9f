#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "avgchain/rational.hpp"

namespace avgchain {

enum class MetricKind { Discrete, Matrix, Line, Circle };

// Finite metric space with an explicit distance table. Line/Circle spaces
// keep their coordinates (line positions, circle positions in turns) so that
// sampled systems can serialize and snap to the grid.
struct MetricSpace {
  MetricKind kind = MetricKind::Matrix;
  std::vector<std::string> labels;
  std::vector<Scalar> coords;  // Line/Circle only
  std::vector<Scalar> dist;    // n x n, row-major
  Scalar diameter;

  int n() const { return static_cast<int>(labels.size()); }
  const Scalar& d(int i, int j) const { return dist[static_cast<size_t>(i) * labels.size() + j]; }

  static MetricSpace discrete(std::vector<std::string> labels);
  static MetricSpace matrix(std::vector<std::string> labels, std::vector<Scalar> dist);
  static MetricSpace line(std::vector<std::string> labels, std::vector<Scalar> coords);
  static MetricSpace circle(std::vector<std::string> labels, std::vector<Scalar> turns);

  // Metric axioms; tolerance-aware when entries are inexact.
  void validate() const;
};

enum class CostMode { ProjectedMap, TrueMap };
enum class SampledKind { Tent, Doubling, Rotation, Custom };

struct SampledInfo {
  SampledKind kind = SampledKind::Tent;
  Scalar alpha;  // Rotation only
  int grid = 0;
  CostMode mode = CostMode::TrueMap;
};

// Dynamical system on a finite metric space. `map` is present for explicit
// self-maps; grid-sampled continuous maps in true-map mode carry no map and
// instead bake the true image into the step-cost table:
//   W[u][v] = d(f(u), v)   (explicit)      W[u][v] = d(F(u), v)   (true-map)
struct MetricSystem {
  MetricSpace space;
  std::vector<int> map;   // empty unless explicit-map
  std::vector<Scalar> w;  // n x n step costs
  bool surjective = false;
  Scalar lipschitz = Scalar(1);  // clamped to >= 1
  std::string id;
  std::optional<SampledInfo> sampled;
  std::vector<std::string> notes;

  int n() const { return space.n(); }
  bool explicit_map() const { return !map.empty(); }
  int f(int u) const;
  const Scalar& dist(int i, int j) const { return space.d(i, j); }
  const Scalar& cost(int u, int v) const { return w[static_cast<size_t>(u) * space.labels.size() + v]; }
  bool exact() const;
  Scalar min_positive_cost() const;   // 0 when none
  Scalar min_positive_dist() const;   // 0 when none
  int label_index(std::string_view label) const;
  void check_state(int s) const;
};

// Forward-orbit decomposition of a state under an explicit map: `path` holds
// the states strictly before the cycle, `cycle` the cycle itself.
struct OrbitInfo {
  std::vector<int> path;
  std::vector<int> cycle;
  int at(long i) const {
    if (i < static_cast<long>(path.size())) return path[i];
    return cycle[(i - static_cast<long>(path.size())) % static_cast<long>(cycle.size())];
  }
  long preperiod() const { return static_cast<long>(path.size()); }
  long period() const { return static_cast<long>(cycle.size()); }
};
OrbitInfo orbit_info(const MetricSystem& sys, int z);

// Finite state sequence with its step errors e_i = W[x_i][x_{i+1}] and their
// prefix sums S_m and averages A_m = S_m / m.
struct StepSequence {
  std::vector<int> states;
  std::vector<Scalar> step_errors;  // size |states|-1
  std::vector<Scalar> prefix_sums;  // size |states|, S_0 = 0
  std::vector<Scalar> prefix_avgs;  // size |states|, A_0 = 0

  long length() const { return static_cast<long>(states.size()) - 1; }
  const Scalar& total() const { return prefix_sums.back(); }
};
StepSequence make_step_sequence(const MetricSystem& sys, std::vector<int> states);
bool check_step_sequence(const MetricSystem& sys, const StepSequence& seq);

MetricSystem make_system(MetricSpace space, std::vector<int> map, std::string id);
MetricSystem power_system(const MetricSystem& sys, long k);
MetricSystem product_system(const MetricSystem& a, const MetricSystem& b, size_t cap = 10000);
Scalar lipschitz_constant(const MetricSystem& sys);

MetricSystem sample_map_system(SampledKind kind, const Scalar& alpha, int grid, CostMode mode,
                               std::string id = "");
// Custom sampled map: user-supplied image coordinates per grid point, in the
// coordinate system of `grid_space` (Line or Circle).
MetricSystem sample_custom_map_system(MetricSpace grid_space, std::vector<Scalar> values,
                                      CostMode mode, std::string id = "");

}  // namespace avgchain
