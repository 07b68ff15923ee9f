#include "avgchain/zoo.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <vector>

namespace avgchain {

namespace {

std::vector<std::string> split_name(const std::string& raw) {
  // Normalize "name(a,b)" to "name:a:b".
  std::string s;
  s.reserve(raw.size());
  for (char c : raw) {
    if (c == '(' || c == ',') c = ':';
    if (c == ')' || c == ' ') continue;
    s.push_back(c);
  }
  while (!s.empty() && s.back() == ':') s.pop_back();
  std::vector<std::string> parts;
  size_t start = 0;
  while (start <= s.size()) {
    size_t pos = s.find(':', start);
    if (pos == std::string::npos) {
      parts.push_back(s.substr(start));
      break;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return parts;
}

long int_arg(const std::vector<std::string>& parts, size_t idx, long fallback) {
  if (parts.size() <= idx || parts[idx].empty()) return fallback;
  try {
    size_t used = 0;
    long v = std::stol(parts[idx], &used);
    if (used != parts[idx].size()) fail(Errc::BadParameter, "bad integer '" + parts[idx] + "'");
    return v;
  } catch (const Error&) {
    throw;
  } catch (...) {
    fail(Errc::BadParameter, "bad integer '" + parts[idx] + "'");
  }
}

CostMode mode_arg(const std::vector<std::string>& parts, size_t idx) {
  if (parts.size() <= idx || parts[idx].empty()) return CostMode::TrueMap;
  if (parts[idx] == "true-map") return CostMode::TrueMap;
  if (parts[idx] == "projected-map") return CostMode::ProjectedMap;
  fail(Errc::BadParameter, "mode must be true-map or projected-map, got '" + parts[idx] + "'");
}

MetricSystem make_swap2() {
  MetricSpace sp = MetricSpace::discrete({"a", "b"});
  return make_system(std::move(sp), {1, 0}, "swap2");
}

MetricSystem make_constant(long n) {
  if (n < 2) fail(Errc::BadParameter, "constant needs >= 2 states");
  std::vector<std::string> labels;
  for (long i = 0; i < n; ++i) labels.push_back("x" + std::to_string(i));
  // Distances in {1, 2}: neighbors at 1, everything else at 2.
  std::vector<Scalar> dist(static_cast<size_t>(n * n), Scalar(0));
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j)
      if (i != j) dist[static_cast<size_t>(i * n + j)] = std::labs(i - j) == 1 ? 1 : 2;
  MetricSpace sp = MetricSpace::matrix(std::move(labels), std::move(dist));
  MetricSystem sys =
      make_system(std::move(sp), std::vector<int>(static_cast<size_t>(n), 0),
                  "constant:" + std::to_string(n));
  sys.notes.push_back("constant map onto x0; distances take the values 1 and 2");
  return sys;
}

MetricSystem make_two_circles(long n) {
  if (n < 2) fail(Errc::BadParameter, "two-circles needs >= 2 points per circle");
  std::vector<std::string> labels;
  for (long i = 0; i < n; ++i) labels.push_back("A" + std::to_string(i));
  for (long i = 0; i < n; ++i) labels.push_back("B" + std::to_string(i));
  const long m = 2 * n;
  std::vector<Scalar> dist(static_cast<size_t>(m * m), Scalar(0));
  auto arc = [&](long i, long j) {
    long k = std::labs(i - j);
    return Scalar(std::min(k, n - k), n);
  };
  for (long i = 0; i < m; ++i)
    for (long j = 0; j < m; ++j) {
      if (i == j) continue;
      bool same = (i < n) == (j < n);
      dist[static_cast<size_t>(i * m + j)] = same ? arc(i % n, j % n) : Scalar(1);
    }
  MetricSpace sp = MetricSpace::matrix(std::move(labels), std::move(dist));
  std::vector<int> ident(static_cast<size_t>(m));
  for (long i = 0; i < m; ++i) ident[static_cast<size_t>(i)] = static_cast<int>(i);
  MetricSystem sys = make_system(std::move(sp), std::move(ident), "two-circles:" + std::to_string(n));
  sys.notes.push_back(
      "identity on two circles of circumference 1 sampled at " + std::to_string(n) +
      " points each (arc-length within a circle); inter-circle distance fixed at 1");
  return sys;
}

MetricSystem make_mod2k(long k) {
  if (k < 1) fail(Errc::BadParameter, "mod2k needs k >= 1");
  const long m = 2 * k;
  std::vector<std::string> labels;
  for (long i = 0; i < m; ++i) labels.push_back(std::to_string(i));
  MetricSpace sp = MetricSpace::discrete(std::move(labels));
  std::vector<int> map(static_cast<size_t>(m));
  for (long i = 0; i < m; ++i) map[static_cast<size_t>(i)] = static_cast<int>((i + 2) % m);
  return make_system(std::move(sp), std::move(map), "mod2k:" + std::to_string(k));
}

MetricSystem make_shift_words(long len) {
  if (len < 1 || len > 12) fail(Errc::BadParameter, "shift-words length must be in [1, 12]");
  const long m = 1L << len;
  std::vector<std::string> labels;
  for (long i = 0; i < m; ++i) {
    std::string w;
    for (long j = len - 1; j >= 0; --j) w.push_back((i >> j) & 1 ? '1' : '0');
    labels.push_back(std::move(w));
  }
  // Word metric 2^{-j}, j the first disagreeing position (0-based).
  std::vector<Scalar> dist(static_cast<size_t>(m * m), Scalar(0));
  for (long i = 0; i < m; ++i)
    for (long j = 0; j < m; ++j) {
      if (i == j) continue;
      long pos = 0;
      while (labels[static_cast<size_t>(i)][static_cast<size_t>(pos)] ==
             labels[static_cast<size_t>(j)][static_cast<size_t>(pos)])
        ++pos;
      dist[static_cast<size_t>(i * m + j)] = Scalar(1, 1L << pos);
    }
  MetricSpace sp = MetricSpace::matrix(std::move(labels), std::move(dist));
  std::vector<int> ident(static_cast<size_t>(m));
  for (long i = 0; i < m; ++i) ident[static_cast<size_t>(i)] = static_cast<int>(i);
  MetricSystem sys =
      make_system(std::move(sp), std::move(ident), "shift-words:" + std::to_string(len));
  sys.notes.push_back("identity on all binary words of length " + std::to_string(len) +
                      "; d(x, y) = 2^-j with j the first disagreeing position");
  return sys;
}

}  // namespace

MetricSystem zoo(const std::string& name) {
  std::vector<std::string> parts = split_name(name);
  if (parts.empty() || parts[0].empty()) fail(Errc::UnknownName, "empty zoo name");
  const std::string& family = parts[0];
  if (family == "swap2") return make_swap2();
  if (family == "constant") return make_constant(int_arg(parts, 1, 5));
  if (family == "two-circles") return make_two_circles(int_arg(parts, 1, 4));
  if (family == "mod2k") return make_mod2k(int_arg(parts, 1, 3));
  if (family == "shift-words") return make_shift_words(int_arg(parts, 1, 2));
  if (family == "tent")
    return sample_map_system(SampledKind::Tent, Scalar(0),
                             static_cast<int>(int_arg(parts, 1, 8)), mode_arg(parts, 2));
  if (family == "doubling")
    return sample_map_system(SampledKind::Doubling, Scalar(0),
                             static_cast<int>(int_arg(parts, 1, 8)), mode_arg(parts, 2));
  if (family == "rotation") {
    if (parts.size() < 2 || parts[1].empty())
      fail(Errc::BadParameter, "rotation needs an angle, e.g. rotation:1/3:8");
    Scalar alpha = Scalar::parse(parts[1]);
    return sample_map_system(SampledKind::Rotation, alpha,
                             static_cast<int>(int_arg(parts, 2, 8)), mode_arg(parts, 3));
  }
  fail(Errc::UnknownName, "unknown zoo system '" + family + "'");
}

std::vector<std::string> zoo_families() {
  return {
      "swap2",
      "constant:<n>",
      "two-circles:<N>",
      "mod2k:<k>",
      "shift-words:<L>",
      "tent:<N>[:<true-map|projected-map>]",
      "doubling:<N>[:<true-map|projected-map>]",
      "rotation:<p/q>:<N>[:<true-map|projected-map>]",
  };
}

std::vector<std::string> zoo_default_suite() {
  return {
      "swap2",          "constant:5",        "two-circles:4",
      "mod2k:3",        "shift-words:1",     "shift-words:2",
      "tent:8:true-map", "doubling:8:true-map", "rotation:1/3:8:true-map",
  };
}

}  // namespace avgchain
