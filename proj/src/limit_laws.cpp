#include "empsup/limit_laws.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "empsup/errors.hpp"

namespace empsup {

NormingConstants norming(long long n) {
  if (n < 16) throw TooSmallN("norming constants require n >= 16");
  const double nd = static_cast<double>(n);
  const double two_ll = 2.0 * std::log(std::log(nd));
  NormingConstants out;
  out.n = n;
  out.a = std::sqrt(two_ll);
  out.b = two_ll + 0.5 * std::log(std::log(std::log(nd))) -
          0.5 * std::log(std::numbers::pi);
  return out;
}

double gumbel_cdf(double y) { return std::exp(-2.0 * std::exp(-y)); }

double lemma1_bound(long long n, double a, double lambda) {
  if (n < 1) throw OutOfDomain("bound requires n >= 1");
  if (!(a > 0.0) || !(a <= 0.5)) {
    throw InvalidA("window endpoint a must lie in (0, 1/2]");
  }
  if (!(lambda > 0.0)) throw InvalidLambda("lambda must be positive");
  return 2.0 / (lambda * lambda) / static_cast<double>(n) *
         (std::log((1.0 - a) / a) + 1.0);
}

double psi(double x, double y, const DensitySpec& spec) {
  if (!(x > 0.0) || x > 1.0) throw OutOfDomain("psi requires x in (0,1]");
  if (y < 0.0) throw OutOfDomain("psi requires y >= 0");
  if (spec.truncation_J < 1 || !(spec.term_tolerance > 0.0)) {
    throw OutOfDomain("invalid series truncation");
  }
  if (y == 0.0) return 0.0;

  const double rho = y * y / x;
  double sum = 0.0;
  double prev_term = std::numeric_limits<double>::infinity();
  bool converged = false;
  for (int j = 0; j <= spec.truncation_J; ++j) {
    const double m = 2.0 * j + 1.0;
    const double term = m * std::exp(-0.5 * m * m * rho);
    sum += (j % 2 == 0) ? term : -term;
    if (term < spec.term_tolerance && prev_term < spec.term_tolerance) {
      converged = true;
      break;
    }
    prev_term = term;
  }
  if (!converged) return 0.0;
  const double value = y * sum / (x * std::sqrt(x));
  return value < 0.0 ? 0.0 : value;
}

double density_TW(double x, double y, const DensitySpec& spec) {
  if (!(x > 0.0) || !(x < 1.0)) {
    throw OutOfDomain("density requires x in (0,1)");
  }
  if (y < 0.0) throw OutOfDomain("density requires y >= 0");
  static const double scale = std::sqrt(8.0 / std::numbers::pi);
  // psi(x,.)*psi(1-x,.) commutes bitwise under x -> 1-x whenever 1-x is
  // exact, because multiplication is commutative.
  return scale * (psi(x, y, spec) * psi(1.0 - x, y, spec));
}

double kolmogorov_cdf(double y) {
  if (!(y > 0.0)) return 0.0;
  if (y < 0.75) {
    // transformed series: (sqrt(2 pi)/y) sum_j exp(-(2j+1)^2 pi^2/(8 y^2));
    // converges in a couple of terms for small y where the alternating
    // series is slow
    const double c = std::numbers::pi * std::numbers::pi / (8.0 * y * y);
    double sum = 0.0;
    for (int j = 0; j < 32; ++j) {
      const double m = 2.0 * j + 1.0;
      const double term = std::exp(-m * m * c);
      sum += term;
      if (term < 1e-18 * sum) break;
    }
    const double v = std::sqrt(2.0 * std::numbers::pi) / y * sum;
    return v > 1.0 ? 1.0 : v;
  }
  double sum = 0.0;
  for (int j = 1; j < 256; ++j) {
    const double term = std::exp(-2.0 * static_cast<double>(j) *
                                 static_cast<double>(j) * y * y);
    sum += (j % 2 == 1) ? term : -term;
    if (term < 1e-18) break;
  }
  const double v = 1.0 - 2.0 * sum;
  return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
}

std::vector<double> symmetric_midpoint_grid(std::size_t nx) {
  std::vector<double> xs(nx);
  const double d = static_cast<double>(nx);
  // upper half directly; lower half by subtraction from 1, which is exact
  // for any double in [1/2, 1) and therefore keeps the grid closed under
  // x -> 1-x bit-for-bit
  for (std::size_t i = 0; i < nx; ++i) {
    const std::size_t mirror = nx - 1 - i;
    if (2 * i + 1 >= nx) {
      xs[i] = (static_cast<double>(i) + 0.5) / d;
    } else {
      xs[i] = 1.0 - (static_cast<double>(mirror) + 0.5) / d;
    }
  }
  return xs;
}

QuadratureResult integrate_density(const DensitySpec& spec, double y_max,
                                   std::size_t nodes_x, std::size_t nodes_y) {
  if (!(y_max > 0.0)) throw OutOfDomain("y_max must be positive");
  if (nodes_x < 16 || nodes_y < 16) {
    throw OutOfDomain("quadrature needs at least 16 nodes per axis");
  }
  const std::vector<double> xs = symmetric_midpoint_grid(nodes_x);
  const double dx = 1.0 / static_cast<double>(nodes_x);
  const double dy = y_max / static_cast<double>(nodes_y);

  QuadratureResult out;
  out.y_nodes.resize(nodes_y);
  out.x_marginal.resize(nodes_y);
  double mass = 0.0;
  for (std::size_t j = 0; j < nodes_y; ++j) {
    const double y = (static_cast<double>(j) + 0.5) * dy;
    out.y_nodes[j] = y;
    double slice = 0.0;
    for (std::size_t i = 0; i < nodes_x; ++i) {
      slice += density_TW(xs[i], y, spec);
    }
    out.x_marginal[j] = slice * dx;
    mass += out.x_marginal[j] * dy;
  }
  out.total_mass = mass;
  return out;
}

}  // namespace empsup
