#include <algorithm>
#include <set>

#include "avgchain/kernels.hpp"
#include "avgchain/system.hpp"

namespace avgchain {

namespace {

Scalar fractional(const Scalar& x) { return x - x.floor(); }

Scalar compute_diameter(const std::vector<Scalar>& dist) {
  Scalar d(0);
  for (const Scalar& v : dist) d = Scalar::max(d, v);
  return d;
}

void check_labels(const std::vector<std::string>& labels) {
  if (labels.empty()) fail(Errc::EmptySpace, "no states");
  std::set<std::string> seen(labels.begin(), labels.end());
  if (seen.size() != labels.size()) fail(Errc::BadParameter, "duplicate state labels");
}

}  // namespace

MetricSpace MetricSpace::discrete(std::vector<std::string> labels) {
  check_labels(labels);
  MetricSpace sp;
  sp.kind = MetricKind::Discrete;
  sp.labels = std::move(labels);
  const int n = sp.n();
  kernels::fill_table(n, sp.dist, [](int i, int j) { return Scalar(i == j ? 0 : 1); });
  sp.diameter = Scalar(n > 1 ? 1 : 0);
  sp.validate();
  return sp;
}

MetricSpace MetricSpace::matrix(std::vector<std::string> labels, std::vector<Scalar> dist) {
  check_labels(labels);
  MetricSpace sp;
  sp.kind = MetricKind::Matrix;
  sp.labels = std::move(labels);
  sp.dist = std::move(dist);
  if (sp.dist.size() != static_cast<size_t>(sp.n()) * sp.n())
    fail(Errc::MetricViolation, "distance table has wrong shape");
  sp.diameter = compute_diameter(sp.dist);
  sp.validate();
  return sp;
}

MetricSpace MetricSpace::line(std::vector<std::string> labels, std::vector<Scalar> coords) {
  check_labels(labels);
  if (coords.size() != labels.size()) fail(Errc::BadParameter, "coordinate count mismatch");
  MetricSpace sp;
  sp.kind = MetricKind::Line;
  sp.labels = std::move(labels);
  sp.coords = std::move(coords);
  const int n = sp.n();
  const auto& c = sp.coords;
  kernels::fill_table(n, sp.dist, [&c](int i, int j) { return abs(c[i] - c[j]); });
  sp.diameter = compute_diameter(sp.dist);
  sp.validate();
  return sp;
}

MetricSpace MetricSpace::circle(std::vector<std::string> labels, std::vector<Scalar> turns) {
  check_labels(labels);
  if (turns.size() != labels.size()) fail(Errc::BadParameter, "coordinate count mismatch");
  MetricSpace sp;
  sp.kind = MetricKind::Circle;
  sp.labels = std::move(labels);
  sp.coords.reserve(turns.size());
  for (const Scalar& t : turns) sp.coords.push_back(fractional(t));
  const int n = sp.n();
  const auto& c = sp.coords;
  kernels::fill_table(n, sp.dist, [&c](int i, int j) {
    Scalar g = abs(c[i] - c[j]);
    return Scalar::min(g, Scalar(1) - g);
  });
  sp.diameter = compute_diameter(sp.dist);
  sp.validate();
  return sp;
}

void MetricSpace::validate() const {
  check_labels(labels);
  const int nn = n();
  if (dist.size() != static_cast<size_t>(nn) * nn)
    fail(Errc::MetricViolation, "distance table has wrong shape");
  const Scalar zero(0);
  for (int i = 0; i < nn; ++i) {
    if (d(i, i) != zero) fail(Errc::MetricViolation, "nonzero self-distance at " + labels[i]);
    for (int j = 0; j < nn; ++j) {
      if (d(i, j) != d(j, i))
        fail(Errc::MetricViolation, "asymmetry at (" + labels[i] + "," + labels[j] + ")");
      if (i != j && d(i, j) <= zero)
        fail(Errc::MetricViolation, "nonpositive distance at (" + labels[i] + "," + labels[j] + ")");
    }
  }
  for (int i = 0; i < nn; ++i)
    for (int j = 0; j < nn; ++j)
      for (int k = 0; k < nn; ++k)
        if (d(i, k) > d(i, j) + d(j, k))
          fail(Errc::MetricViolation, "triangle inequality fails at (" + labels[i] + "," +
                                          labels[j] + "," + labels[k] + ")");
}

}  // namespace avgchain
