#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include <doctest.h>

#include "empsup/bridge.hpp"
#include "empsup/errors.hpp"
#include "empsup/harness.hpp"
#include "empsup/limit_laws.hpp"
#include "empsup/rng.hpp"

using namespace empsup;

TEST_CASE("sample_bridge pins the endpoints and has bridge moments") {
  Engine eng = make_stream(11, 0, 0);
  const std::size_t m = 64;
  const std::size_t paths = 100000;

  double sum_abs = 0.0;
  double sum_sq = 0.0;
  for (std::size_t p = 0; p < paths; ++p) {
    const BridgePath path = sample_bridge(m, eng);
    REQUIRE(path.nodes.size() == m + 1);
    REQUIRE(path.nodes.front() == 0.0);
    REQUIRE(path.nodes.back() == 0.0);
    const double mid = path.nodes[m / 2];
    sum_abs += std::fabs(mid);
    sum_sq += mid * mid;
  }
  const double mean_abs = sum_abs / static_cast<double>(paths);
  const double var = sum_sq / static_cast<double>(paths);
  // B(1/2) ~ N(0, 1/4): E|B| = 0.5 sqrt(2/pi), Var = 1/4
  CHECK(mean_abs ==
        doctest::Approx(0.5 * std::sqrt(2.0 / std::numbers::pi)).epsilon(0.03));
  CHECK(var == doctest::Approx(0.25).epsilon(0.04));
}

TEST_CASE("bridge supremum magnitude follows the known distribution") {
  Engine eng = make_stream(12, 0, 0);
  const std::size_t m = 4096;
  const std::size_t paths = 10000;
  std::vector<double> sups;
  sups.reserve(paths);
  for (std::size_t p = 0; p < paths; ++p) {
    sups.push_back(argmax_abs(sample_bridge(m, eng)).value);
  }
  const double d = ks_distance(sups, [](double y) { return kolmogorov_cdf(y); });
  CHECK(d <= 0.03);
}

TEST_CASE("argmax_abs is invariant under pathwise negation") {
  Engine eng = make_stream(13, 0, 0);
  for (int rep = 0; rep < 200; ++rep) {
    const BridgePath path = sample_bridge(128, eng);
    BridgePath neg;
    neg.m = path.m;
    neg.nodes.resize(path.nodes.size());
    for (std::size_t k = 0; k < neg.nodes.size(); ++k) {
      neg.nodes[k] = -path.nodes[k];
    }
    const BridgeArgmax a = argmax_abs(path);
    const BridgeArgmax b = argmax_abs(neg);
    CHECK(a.location == b.location);
    CHECK(a.value == b.value);
  }
}

TEST_CASE("argmax_abs commutes with time reversal") {
  Engine eng = make_stream(14, 0, 0);
  const std::size_t m = 128;
  int lo = 0;
  int hi = 0;
  for (int rep = 0; rep < 20000; ++rep) {
    const BridgePath path = sample_bridge(m, eng);
    BridgePath rev;
    rev.m = path.m;
    rev.nodes.assign(path.nodes.rbegin(), path.nodes.rend());
    const BridgeArgmax a = argmax_abs(path);
    const BridgeArgmax b = argmax_abs(rev);
    CHECK(a.value == b.value);
    CHECK(std::fabs(b.location - (1.0 - a.location)) <=
          1.0 / static_cast<double>(m));
    if (a.location < 0.5) ++lo;
    if (a.location > 0.5) ++hi;
  }
  // reversal symmetry makes the two strict halves equally likely
  const double diff =
      std::fabs(static_cast<double>(lo) - static_cast<double>(hi)) / 20000.0;
  CHECK(diff <= 0.03);
}

TEST_CASE("argmax_abs handles degenerate paths") {
  BridgePath flat;
  flat.m = 64;
  flat.nodes.assign(65, 0.0);
  const BridgeArgmax z = argmax_abs(flat);
  CHECK(z.location == 0.0);
  CHECK(z.value == 0.0);

  BridgePath peak = flat;
  peak.nodes[13] = -0.75;
  const BridgeArgmax p = argmax_abs(peak);
  CHECK(p.location == 13.0 / 64.0);
  CHECK(p.value == 0.75);

  // ties resolve to the earliest node
  BridgePath tie = flat;
  tie.nodes[20] = 0.5;
  tie.nodes[40] = -0.5;
  CHECK(argmax_abs(tie).location == 20.0 / 64.0);
}

TEST_CASE("sample_bridge validates the resolution") {
  Engine eng = make_stream(15, 0, 0);
  CHECK_THROWS_AS(sample_bridge(1, eng), OutOfDomain);
  CHECK_THROWS_AS(sample_bridge(0, eng), OutOfDomain);
}
