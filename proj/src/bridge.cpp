#include "empsup/bridge.hpp"

#include <cmath>
#include <random>

#include "empsup/errors.hpp"

namespace empsup {

BridgePath sample_bridge(std::size_t m, Engine& stream) {
  if (m < 2) throw OutOfDomain("bridge grid needs m >= 2");
  BridgePath path;
  path.m = m;
  path.nodes.assign(m + 1, 0.0);
  std::normal_distribution<double> step(
      0.0, 1.0 / std::sqrt(static_cast<double>(m)));
  double s = 0.0;
  for (std::size_t k = 1; k <= m; ++k) {
    s += step(stream);
    path.nodes[k] = s;
  }
  const double total = s;
  const double inv_m = 1.0 / static_cast<double>(m);
  for (std::size_t k = 1; k < m; ++k) {
    path.nodes[k] -= static_cast<double>(k) * inv_m * total;
  }
  path.nodes[m] = 0.0;
  return path;
}

BridgeArgmax argmax_abs(const BridgePath& path) {
  if (path.nodes.empty()) throw OutOfDomain("empty bridge path");
  std::size_t best_k = 0;
  double best = std::fabs(path.nodes[0]);
  for (std::size_t k = 1; k < path.nodes.size(); ++k) {
    const double v = std::fabs(path.nodes[k]);
    if (v > best) {
      best = v;
      best_k = k;
    }
  }
  BridgeArgmax out;
  out.value = best;
  out.location =
      static_cast<double>(best_k) / static_cast<double>(path.nodes.size() - 1);
  return out;
}

}  // namespace empsup
