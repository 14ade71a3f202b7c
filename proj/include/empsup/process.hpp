#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace empsup {

// Which one-sided value of the jump process attains a supremum at a point:
// the right-continuous value or the limit from the left.
enum class Side { RightValue, LeftLimit };

const char* side_name(Side s);

// A batch of draws in the open unit interval together with its sorted copy.
// Invariants: every entry lies strictly in (0,1); order_stats is a
// nondecreasing permutation of values; both have length n.
struct Sample {
  std::size_t n = 0;
  std::vector<double> values;
  std::vector<double> order_stats;
};

// Supremum of the (weighted or unweighted) scaled empirical process.
// value >= 0 and carries the sqrt(n) scale; location is the maximizing
// point (always an order statistic); index is the 1-based rank of that
// order statistic, 0 reserved for a degenerate boundary attainment that
// cannot occur for n >= 1; side records whether the right value or the
// left limit attains the supremum.
struct SupResult {
  double value = 0;
  double location = 0;
  std::size_t index = 0;
  Side side = Side::RightValue;
};

// Supremum split between the interior window [alpha, 1-alpha] and the
// boundary region (0,alpha) u (1-alpha,1); the max of the two parts equals
// the full supremum of the same sample.
struct BoundarySplit {
  double interior_sup = 0;
  double boundary_sup = 0;
  double alpha = 0;
};

// Validates entries and attaches the sorted copy. The original order is
// preserved in values. Throws EmptySample / OutOfDomain.
Sample order_statistics(std::vector<double> values);

// Exact supremum of the variance-standardized process from the two-branch
// order-statistic formula; O(n) after sorting. Ties resolve to the smallest
// index, and within an index to LeftLimit.
SupResult sup_weighted(const Sample& sample);

// Exact supremum of the unweighted scaled process |F_n(t) - t| * sqrt(n),
// same tie conventions.
SupResult sup_unweighted(const Sample& sample);

// Pointwise process value at t in (0,1). RightValue uses the count of
// entries <= t, LeftLimit the count of entries < t. Shares its arithmetic
// with the suprema above, so re-evaluating a SupResult at (location, side)
// reproduces value bit-for-bit. Throws OutOfDomain for t outside (0,1).
double eval_Q(const Sample& sample, double t, Side side, bool weighted = true);

// Brute-force check: evaluates the process on a uniform grid over
// [eps, 1-eps] with eps = 1/(2*grid_points) AND at both sides of every
// order statistic. Because the supremum is attained at an order statistic,
// the result must coincide with sup_weighted / sup_unweighted.
SupResult grid_oracle_sup(const Sample& sample, std::size_t grid_points,
                          bool weighted);

// Supremum of the weighted process over the closed window [alpha, 1-alpha],
// alpha in (0, 1/2]; alpha = 1/2 degenerates to the single point t = 1/2
// whose left limit lies outside the window and is excluded.
double interior_sup(const Sample& sample, double alpha);

// Interior/boundary decomposition at alpha in (0, 1/2) strictly.
// Throws InvalidAlpha otherwise.
BoundarySplit boundary_split(const Sample& sample, double alpha);

}  // namespace empsup
