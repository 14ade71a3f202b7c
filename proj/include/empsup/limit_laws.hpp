#pragma once

#include <cstddef>
#include <vector>

namespace empsup {

// Affine norming pair: a = sqrt(2 log log n), b = 2 log log n
// + (1/2) log log log n - (1/2) log pi. Defined for n >= 16 so the iterated
// logarithms stay real.
struct NormingConstants {
  double a = 0;
  double b = 0;
  long long n = 0;
};

// Truncation controls for the alternating theta-type series.
// truncation_J >= 1 terms (j = 0..J); early stop once two consecutive terms
// fall below term_tolerance in absolute value.
struct DensitySpec {
  int truncation_J = 50;
  double term_tolerance = 1e-15;
};

// Quadrature output: total mass over (0,1) x (0, y_max] plus the x-marginal
// slice on the midpoint y-grid for comparison against the differentiated
// distribution of the supremum.
struct QuadratureResult {
  double total_mass = 0;
  std::vector<double> y_nodes;
  std::vector<double> x_marginal;
};

// Throws TooSmallN for n < 16.
NormingConstants norming(long long n);

// Two-sided extreme-value CDF exp(-2 e^{-y}).
double gumbel_cdf(double y);

// Finite-sample maximal-inequality bound 2 lambda^-2 n^-1 (log((1-a)/a) + 1)
// for the window [a, 1-a]. Throws InvalidA for a outside (0, 1/2],
// InvalidLambda for lambda <= 0.
double lemma1_bound(long long n, double a, double lambda);

// Alternating series y x^{-3/2} sum_j (-1)^j (2j+1) exp(-(2j+1)^2 y^2/(2x)),
// x in (0,1], y >= 0. Clamped at 0 from below. If the series has not met the
// two-consecutive-small-terms stop by truncation_J the partial sum carries no
// information (the terms are still O(1)); in that regime the true value is
// far below any representable tolerance, so 0 is returned instead.
double psi(double x, double y, const DensitySpec& spec = {});

// Joint limit density sqrt(8/pi) psi(x,y) psi(1-x,y) of the (location, value)
// pair of the supremum of the reflected bridge; x in (0,1), y >= 0.
double density_TW(double x, double y, const DensitySpec& spec = {});

// CDF of sup |B| for a Brownian bridge B. Series form for moderate/large y,
// dual (transformed) series for small y where the alternating form converges
// slowly. Monotone, in [0,1]; returns 0 for y <= 0.
double kolmogorov_cdf(double y);

// nx midpoints of (0,1) arranged so the set is exactly closed under
// x -> 1-x in double precision: the upper half is computed directly and the
// lower half mirrored by exact subtraction from 1.
std::vector<double> symmetric_midpoint_grid(std::size_t nx);

// Midpoint-composite quadrature of density_TW over (0,1) x (0, y_max].
// nodes_x, nodes_y >= 16.
QuadratureResult integrate_density(const DensitySpec& spec, double y_max,
                                   std::size_t nodes_x, std::size_t nodes_y);

}  // namespace empsup
