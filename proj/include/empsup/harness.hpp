#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "empsup/process.hpp"

namespace empsup {

// Interior-window rule: LogLog sets alpha_n = 1/log log n per sample size
// (valid only for n >= 16, where log log n > 0); Fixed uses one alpha in
// (0, 1/2) for every n.
enum class AlphaRule { LogLog, Fixed };

struct ExperimentConfig {
  std::vector<long long> n_values;
  long long replications = 1;
  std::uint64_t master_seed = 0;
  AlphaRule alpha_rule = AlphaRule::LogLog;
  double fixed_alpha = 0.1;
  bool weighted = true;
};

// One supremum computation. normalized = a_n v - b_n is present only in
// weighted mode with n >= 16 (the norming constants do not exist below).
struct ReplicationRecord {
  long long n = 0;
  long long replication = 0;
  double v = 0;
  double tau = 0;
  long long r_index = 0;
  double r_over_n = 0;
  std::optional<double> normalized;
  Side side = Side::RightValue;
};

// Counts of pairs falling in the half-open cells of an edge grid; the last
// cell along each axis is closed so boundary points are kept.
struct Histogram2D {
  std::vector<double> x_edges;
  std::vector<double> y_edges;
  std::vector<std::vector<long long>> counts;
  long long total_in_box = 0;
};

struct Lemma1Report {
  double lhs_hat = 0;
  double stderr_hat = 0;
  double rhs = 0;
  bool pass = false;
};

struct TableRow {
  long long n = 0;
  double ks_to_gumbel = 0;
  double mass_interior = 0;
  double p_tau_le_half = 0;
  double mean_v_over_an = 0;
  double independence_tv = 0;
};

void validate_config(const ExperimentConfig& config);

// alpha_n for one sample size under the rule. LogLog requires n >= 16.
double alpha_for(AlphaRule rule, double fixed_alpha, long long n);

// Runs replications for every n in config order. Replication k of sample
// size n always uses the stream derived from (master_seed, n, k), and the
// output is ordered by (position of n in n_values, k); both facts make the
// result byte-identical for any worker count.
std::vector<ReplicationRecord> run_experiment(const ExperimentConfig& config,
                                              int workers = 1);

// Regenerates the exact sample used by record (n, k) of a config.
Sample regenerate_sample(const ExperimentConfig& config, long long n,
                         long long k);

// sup over sorted samples of max(|i/N - cdf(x_i)|, |cdf(x_i) - (i-1)/N|).
double ks_distance(std::vector<double> samples,
                   const std::function<double(double)>& cdf);

// Total-variation-style distance between the joint empirical law of
// (1{tau > x_cut}, binned normalized value) and the product of its
// marginals, from a 2 x (#bins) contingency table. Requires >= 1000
// records, each carrying a normalized value.
double independence_tv(const std::vector<ReplicationRecord>& records,
                       double x_cut, const std::vector<double>& y_edges);

// Decile edges of the Gumbel limit law with infinite outer edges; the
// default probe grid for independence_tv.
std::vector<double> default_gumbel_decile_edges();

// Monte Carlo check of the finite-sample maximal inequality on [a, 1-a]:
// lhs_hat estimates P(sup of the unnormalized weighted process > lambda),
// i.e. interior_sup / sqrt(n) against lambda; pass iff
// lhs_hat <= rhs + 3 stderr.
Lemma1Report verify_lemma1(long long n, double a, double lambda,
                           long long replications, std::uint64_t master_seed,
                           int workers = 1);

std::vector<TableRow> convergence_table_from_records(
    const std::vector<ReplicationRecord>& records,
    const ExperimentConfig& config, const std::vector<double>& y_edges);

// One row per n: KS distance of the normalized values to the Gumbel CDF,
// interior mass P(tau in (alpha_n, 1-alpha_n)), P(tau <= 1/2), mean v/a_n,
// and the contingency TV. Requires weighted mode, every n >= 16 and
// increasing, and replications >= 1000 (the contingency needs them).
std::vector<TableRow> convergence_table(const ExperimentConfig& config,
                                        const std::vector<double>& y_edges,
                                        int workers = 1);

Histogram2D histogram2d(const std::vector<double>& xs,
                        const std::vector<double>& ys,
                        const std::vector<double>& x_edges,
                        const std::vector<double>& y_edges);

}  // namespace empsup
