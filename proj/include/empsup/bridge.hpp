#pragma once

#include <cstddef>
#include <vector>

#include "empsup/rng.hpp"

namespace empsup {

// Discretized bridge path on the grid t_k = k/m, k = 0..m, pinned to zero
// at both endpoints.
struct BridgePath {
  std::size_t m = 0;
  std::vector<double> nodes;
};

// (location, value) of the largest absolute node; smallest index on ties.
struct BridgeArgmax {
  double location = 0;
  double value = 0;
};

// Gaussian-walk-minus-drift construction: nodes[k] = S_k - (k/m) S_m with
// i.i.d. N(0, 1/m) increments, exact in distribution at the grid nodes.
// m >= 2. One private stream per concurrent caller.
BridgePath sample_bridge(std::size_t m, Engine& stream);

BridgeArgmax argmax_abs(const BridgePath& path);

}  // namespace empsup
