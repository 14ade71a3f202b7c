#include "empsup/process.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "empsup/errors.hpp"

namespace empsup {

const char* side_name(Side s) {
  return s == Side::RightValue ? "RightValue" : "LeftLimit";
}

namespace {

// All process values funnel through these two helpers so that the formula
// scan, the pointwise evaluator, the grid oracle and the window split agree
// bit-for-bit wherever they evaluate the same point.
//
// signed_excess(n, t, c) = c - n*t with a single rounding (fma), so the
// reflected pair (t, c) -> (1-t, n-c) reproduces the same double exactly
// whenever 1-t is exact, which holds for every dyadic k*2^-53 draw.
inline double signed_excess(double n, double t, double c) {
  return std::fma(-n, t, c);
}

// value = num / (sqrt(n) * w); w = sqrt(t*(1-t)) for the weighted process,
// 1 for the unweighted one. t*(1-t) commutes under t -> 1-t, keeping the
// denominator reflection-exact as well.
inline double scaled(double num, double sqrt_n, double w) {
  return num / (sqrt_n * w);
}

inline double weight_at(double t, bool weighted) {
  return weighted ? std::sqrt(t * (1.0 - t)) : 1.0;
}

void validate_sample(const Sample& sample) {
  if (sample.n == 0 || sample.values.empty()) throw EmptySample();
}

// Shared two-branch scan. Branch order per order statistic is LeftLimit
// first, then RightValue, ascending in index, with strictly-greater
// replacement; this realizes the tie rule (smallest index, then LeftLimit).
SupResult formula_sup(const Sample& sample, bool weighted) {
  validate_sample(sample);
  const double n = static_cast<double>(sample.n);
  const double sqrt_n = std::sqrt(n);
  SupResult best;
  bool have = false;
  for (std::size_t i = 1; i <= sample.n; ++i) {
    const double x = sample.order_stats[i - 1];
    const double w = weight_at(x, weighted);
    // left limit: count of entries strictly below x is i-1 for distinct
    // samples; the branch value is (n*x - (i-1)) / (sqrt(n)*w)
    double num_left = -signed_excess(n, x, static_cast<double>(i - 1));
    double num_right = signed_excess(n, x, static_cast<double>(i));
    if (!weighted) {
      num_left = std::fabs(num_left);
      num_right = std::fabs(num_right);
    }
    const double left = scaled(num_left, sqrt_n, w);
    const double right = scaled(num_right, sqrt_n, w);
    if (!have || left > best.value) {
      best = {left, x, i, Side::LeftLimit};
      have = true;
    }
    if (right > best.value) {
      best = {right, x, i, Side::RightValue};
    }
  }
  return best;
}

std::size_t count_le(const std::vector<double>& sorted, double t) {
  return static_cast<std::size_t>(
      std::upper_bound(sorted.begin(), sorted.end(), t) - sorted.begin());
}

std::size_t count_lt(const std::vector<double>& sorted, double t) {
  return static_cast<std::size_t>(
      std::lower_bound(sorted.begin(), sorted.end(), t) - sorted.begin());
}

// Absolute process value at (t, side) from the entry counts; the form used
// by eval_Q and by every non-formula candidate below.
double point_value(const Sample& sample, double t, Side side, bool weighted) {
  const double n = static_cast<double>(sample.n);
  const double sqrt_n = std::sqrt(n);
  const std::size_t c = side == Side::RightValue
                            ? count_le(sample.order_stats, t)
                            : count_lt(sample.order_stats, t);
  const double num =
      std::fabs(signed_excess(n, t, static_cast<double>(c)));
  return scaled(num, sqrt_n, weight_at(t, weighted));
}

}  // namespace

Sample order_statistics(std::vector<double> values) {
  if (values.empty()) throw EmptySample();
  for (double v : values) {
    if (!(v > 0.0) || !(v < 1.0)) {
      throw OutOfDomain("sample entries must lie strictly in (0,1)");
    }
  }
  Sample s;
  s.n = values.size();
  s.order_stats = values;
  std::stable_sort(s.order_stats.begin(), s.order_stats.end());
  s.values = std::move(values);
  return s;
}

SupResult sup_weighted(const Sample& sample) { return formula_sup(sample, true); }

SupResult sup_unweighted(const Sample& sample) {
  return formula_sup(sample, false);
}

double eval_Q(const Sample& sample, double t, Side side, bool weighted) {
  validate_sample(sample);
  if (!(t > 0.0) || !(t < 1.0)) {
    throw OutOfDomain("evaluation point must lie strictly in (0,1)");
  }
  return point_value(sample, t, side, weighted);
}

SupResult grid_oracle_sup(const Sample& sample, std::size_t grid_points,
                          bool weighted) {
  validate_sample(sample);
  if (grid_points < 2) throw OutOfDomain("grid_points must be >= 2");

  SupResult best;
  bool have = false;
  auto offer = [&](double value, double loc, std::size_t index, Side side) {
    if (!have || value > best.value) {
      best = {value, loc, index, side};
      have = true;
    }
  };

  // Order-statistic candidates first (ascending, LeftLimit before
  // RightValue) so they win exact ties against grid points, mirroring the
  // formula's tie rule.
  for (std::size_t i = 1; i <= sample.n; ++i) {
    const double x = sample.order_stats[i - 1];
    offer(point_value(sample, x, Side::LeftLimit, weighted), x, i,
          Side::LeftLimit);
    offer(point_value(sample, x, Side::RightValue, weighted), x, i,
          Side::RightValue);
  }

  const double eps = 1.0 / (2.0 * static_cast<double>(grid_points));
  const double step =
      (1.0 - 2.0 * eps) / static_cast<double>(grid_points - 1);
  for (std::size_t j = 0; j < grid_points; ++j) {
    const double t = eps + static_cast<double>(j) * step;
    if (!(t > 0.0) || !(t < 1.0)) continue;
    offer(point_value(sample, t, Side::RightValue, weighted), t,
          count_le(sample.order_stats, t), Side::RightValue);
  }
  return best;
}

double interior_sup(const Sample& sample, double alpha) {
  validate_sample(sample);
  if (!(alpha > 0.0) || !(alpha <= 0.5)) {
    throw InvalidAlpha("interior window requires alpha in (0, 1/2]");
  }
  const double lo = alpha;
  const double hi = 1.0 - alpha;
  double best = point_value(sample, lo, Side::RightValue, true);
  auto offer = [&](double v) {
    if (v > best) best = v;
  };
  offer(point_value(sample, hi, Side::RightValue, true));
  // The left limit at the upper endpoint is the supremum over approaches
  // from inside the window; it exists only when the window has interior.
  if (hi > lo) offer(point_value(sample, hi, Side::LeftLimit, true));
  for (std::size_t i = 1; i <= sample.n; ++i) {
    const double x = sample.order_stats[i - 1];
    if (x <= lo || x >= hi) continue;
    offer(point_value(sample, x, Side::LeftLimit, true));
    offer(point_value(sample, x, Side::RightValue, true));
  }
  return best;
}

BoundarySplit boundary_split(const Sample& sample, double alpha) {
  validate_sample(sample);
  if (!(alpha > 0.0) || !(alpha < 0.5)) {
    throw InvalidAlpha("boundary split requires alpha in (0, 1/2)");
  }
  BoundarySplit out;
  out.alpha = alpha;
  out.interior_sup = interior_sup(sample, alpha);

  const double lo = alpha;
  const double hi = 1.0 - alpha;
  // sup over (0, lo): attained at an order statistic inside or approaching
  // lo from below; the process vanishes toward t = 0.
  double b = point_value(sample, lo, Side::LeftLimit, true);
  // sup over (hi, 1): the right-continuous value at hi is the supremum of
  // approaches from above; the process vanishes toward t = 1.
  const double right_of_hi = point_value(sample, hi, Side::RightValue, true);
  if (right_of_hi > b) b = right_of_hi;
  for (std::size_t i = 1; i <= sample.n; ++i) {
    const double x = sample.order_stats[i - 1];
    if (!((x < lo) || (x > hi))) continue;
    const double l = point_value(sample, x, Side::LeftLimit, true);
    const double r = point_value(sample, x, Side::RightValue, true);
    if (l > b) b = l;
    if (r > b) b = r;
  }
  out.boundary_sup = b;
  return out;
}

}  // namespace empsup
