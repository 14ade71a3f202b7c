#include "empsup/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "empsup/errors.hpp"
#include "empsup/limit_laws.hpp"
#include "empsup/rng.hpp"

namespace empsup {

namespace {

// Index-sharded parallel loop; every index is processed exactly once and
// results land in preallocated slots, so the schedule cannot leak into the
// output.
void parallel_for(long long count, int workers,
                  const std::function<void(long long)>& body) {
  if (count <= 0) return;
  int k = workers < 1 ? 1 : workers;
  if (static_cast<long long>(k) > count) k = static_cast<int>(count);
  if (k == 1) {
    for (long long i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(k);
  for (int w = 0; w < k; ++w) {
    pool.emplace_back([&, w]() {
      for (long long i = w; i < count; i += k) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

Sample draw_sample(std::uint64_t master, long long n, long long k) {
  Engine eng = make_stream(master, static_cast<std::uint64_t>(n),
                           static_cast<std::uint64_t>(k));
  std::vector<double> values(static_cast<std::size_t>(n));
  for (auto& v : values) v = uniform_open01(eng);
  return order_statistics(std::move(values));
}

}  // namespace

void validate_config(const ExperimentConfig& config) {
  if (config.n_values.empty()) {
    throw OutOfDomain("config needs at least one sample size");
  }
  for (long long n : config.n_values) {
    if (n < 1) throw OutOfDomain("sample sizes must be >= 1");
  }
  if (config.replications < 1) {
    throw OutOfDomain("replications must be >= 1");
  }
  if (config.alpha_rule == AlphaRule::Fixed &&
      (!(config.fixed_alpha > 0.0) || !(config.fixed_alpha < 0.5))) {
    throw InvalidAlpha("fixed alpha must lie in (0, 1/2)");
  }
}

double alpha_for(AlphaRule rule, double fixed_alpha, long long n) {
  if (rule == AlphaRule::Fixed) {
    if (!(fixed_alpha > 0.0) || !(fixed_alpha < 0.5)) {
      throw InvalidAlpha("fixed alpha must lie in (0, 1/2)");
    }
    return fixed_alpha;
  }
  // 1/log log n is positive and finite only once log n > 1, i.e. n >= 16
  // among integers (e^e < 16).
  if (n < 16) throw InvalidAlpha("log-log alpha rule needs n >= 16");
  return 1.0 / std::log(std::log(static_cast<double>(n)));
}

std::vector<ReplicationRecord> run_experiment(const ExperimentConfig& config,
                                              int workers) {
  validate_config(config);
  const long long reps = config.replications;
  std::vector<ReplicationRecord> records(
      static_cast<std::size_t>(reps) * config.n_values.size());

  for (std::size_t ni = 0; ni < config.n_values.size(); ++ni) {
    const long long n = config.n_values[ni];
    const bool with_norming = config.weighted && n >= 16;
    double an = 0.0, bn = 0.0;
    if (with_norming) {
      const NormingConstants nc = norming(n);
      an = nc.a;
      bn = nc.b;
    }
    parallel_for(reps, workers, [&](long long k) {
      const Sample sample = draw_sample(config.master_seed, n, k);
      const SupResult sup =
          config.weighted ? sup_weighted(sample) : sup_unweighted(sample);
      ReplicationRecord rec;
      rec.n = n;
      rec.replication = k;
      rec.v = sup.value;
      rec.tau = sup.location;
      rec.r_index = static_cast<long long>(sup.index);
      rec.r_over_n = static_cast<double>(rec.r_index) / static_cast<double>(n);
      if (with_norming) rec.normalized = an * sup.value - bn;
      rec.side = sup.side;
      records[ni * static_cast<std::size_t>(reps) +
              static_cast<std::size_t>(k)] = rec;
    });
  }
  return records;
}

Sample regenerate_sample(const ExperimentConfig& config, long long n,
                         long long k) {
  return draw_sample(config.master_seed, n, k);
}

double ks_distance(std::vector<double> samples,
                   const std::function<double(double)>& cdf) {
  if (samples.empty()) throw EmptySample();
  std::sort(samples.begin(), samples.end());
  const double N = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 1; i <= samples.size(); ++i) {
    const double f = cdf(samples[i - 1]);
    const double hi = std::fabs(static_cast<double>(i) / N - f);
    const double lo = std::fabs(f - (static_cast<double>(i) - 1.0) / N);
    d = std::max(d, std::max(hi, lo));
  }
  return d;
}

double independence_tv(const std::vector<ReplicationRecord>& records,
                       double x_cut, const std::vector<double>& y_edges) {
  if (records.size() < 1000) {
    throw TooFewRecords("independence contingency needs >= 1000 records");
  }
  if (y_edges.size() < 2 ||
      !std::is_sorted(y_edges.begin(), y_edges.end())) {
    throw OutOfDomain("y_edges must be increasing with >= 2 entries");
  }
  const std::size_t bins = y_edges.size() - 1;
  std::vector<std::vector<double>> joint(2, std::vector<double>(bins, 0.0));
  double total = 0.0;
  for (const auto& rec : records) {
    if (!rec.normalized.has_value()) {
      throw OutOfDomain("independence contingency needs normalized values");
    }
    const double y = *rec.normalized;
    if (y < y_edges.front() || y > y_edges.back()) continue;
    std::size_t b = static_cast<std::size_t>(
        std::upper_bound(y_edges.begin(), y_edges.end(), y) -
        y_edges.begin());
    if (b == 0) b = 1;
    if (b > bins) b = bins;
    const std::size_t row = rec.tau > x_cut ? 1 : 0;
    joint[row][b - 1] += 1.0;
    total += 1.0;
  }
  if (total == 0.0) return 0.0;
  double tv = 0.0;
  for (std::size_t r = 0; r < 2; ++r) {
    double row_mass = 0.0;
    for (std::size_t b = 0; b < bins; ++b) row_mass += joint[r][b];
    for (std::size_t b = 0; b < bins; ++b) {
      double col_mass = joint[0][b] + joint[1][b];
      const double p = joint[r][b] / total;
      const double q = (row_mass / total) * (col_mass / total);
      tv += std::fabs(p - q);
    }
  }
  return 0.5 * tv;
}

std::vector<double> default_gumbel_decile_edges() {
  std::vector<double> edges;
  edges.push_back(-std::numeric_limits<double>::infinity());
  for (int i = 1; i <= 9; ++i) {
    const double p = static_cast<double>(i) / 10.0;
    // invert exp(-2 e^{-y}) = p
    edges.push_back(-std::log(-0.5 * std::log(p)));
  }
  edges.push_back(std::numeric_limits<double>::infinity());
  return edges;
}

Lemma1Report verify_lemma1(long long n, double a, double lambda,
                           long long replications, std::uint64_t master_seed,
                           int workers) {
  if (n < 1) throw OutOfDomain("n must be >= 1");
  if (!(a > 0.0) || !(a <= 0.5)) {
    throw InvalidA("window endpoint a must lie in (0, 1/2]");
  }
  if (!(lambda > 0.0)) throw InvalidLambda("lambda must be positive");
  if (replications < 1) throw OutOfDomain("replications must be >= 1");

  const double sqrt_n = std::sqrt(static_cast<double>(n));
  std::vector<unsigned char> hit(static_cast<std::size_t>(replications), 0);
  parallel_for(replications, workers, [&](long long k) {
    const Sample sample = draw_sample(master_seed, n, k);
    // the bound concerns the unnormalized process, so the sqrt(n) scale
    // carried by interior_sup is divided out here, in exactly one place
    const double unnormalized = interior_sup(sample, a) / sqrt_n;
    hit[static_cast<std::size_t>(k)] = unnormalized > lambda ? 1 : 0;
  });
  long long count = 0;
  for (unsigned char h : hit) count += h;

  Lemma1Report rep;
  rep.lhs_hat =
      static_cast<double>(count) / static_cast<double>(replications);
  rep.stderr_hat = std::sqrt(rep.lhs_hat * (1.0 - rep.lhs_hat) /
                             static_cast<double>(replications));
  rep.rhs = lemma1_bound(n, a, lambda);
  rep.pass = rep.lhs_hat <= rep.rhs + 3.0 * rep.stderr_hat;
  return rep;
}

std::vector<TableRow> convergence_table_from_records(
    const std::vector<ReplicationRecord>& records,
    const ExperimentConfig& config, const std::vector<double>& y_edges) {
  validate_config(config);
  if (!config.weighted) {
    throw OutOfDomain("convergence table requires the weighted process");
  }
  for (std::size_t i = 0; i < config.n_values.size(); ++i) {
    if (config.n_values[i] < 16) {
      throw TooSmallN("convergence table requires every n >= 16");
    }
    if (i > 0 && config.n_values[i] <= config.n_values[i - 1]) {
      throw OutOfDomain("n_values must be strictly increasing");
    }
  }

  std::vector<TableRow> rows;
  rows.reserve(config.n_values.size());
  for (long long n : config.n_values) {
    std::vector<ReplicationRecord> subset;
    subset.reserve(static_cast<std::size_t>(config.replications));
    for (const auto& rec : records) {
      if (rec.n == n) subset.push_back(rec);
    }
    const double count = static_cast<double>(subset.size());
    if (subset.empty()) throw EmptySample();

    const NormingConstants nc = norming(n);
    const double alpha = alpha_for(config.alpha_rule, config.fixed_alpha, n);

    std::vector<double> normalized;
    normalized.reserve(subset.size());
    double interior = 0.0, le_half = 0.0, mean_ratio = 0.0;
    for (const auto& rec : subset) {
      if (!rec.normalized.has_value()) {
        throw TooSmallN("records lack norming; rerun with weighted n >= 16");
      }
      normalized.push_back(*rec.normalized);
      if (rec.tau > alpha && rec.tau < 1.0 - alpha) interior += 1.0;
      if (rec.tau <= 0.5) le_half += 1.0;
      mean_ratio += rec.v / nc.a;
    }

    TableRow row;
    row.n = n;
    row.ks_to_gumbel =
        ks_distance(std::move(normalized), [](double y) { return gumbel_cdf(y); });
    row.mass_interior = interior / count;
    row.p_tau_le_half = le_half / count;
    row.mean_v_over_an = mean_ratio / count;
    row.independence_tv = independence_tv(subset, 0.5, y_edges);
    rows.push_back(row);
  }
  return rows;
}

std::vector<TableRow> convergence_table(const ExperimentConfig& config,
                                        const std::vector<double>& y_edges,
                                        int workers) {
  const std::vector<ReplicationRecord> records =
      run_experiment(config, workers);
  return convergence_table_from_records(records, config, y_edges);
}

Histogram2D histogram2d(const std::vector<double>& xs,
                        const std::vector<double>& ys,
                        const std::vector<double>& x_edges,
                        const std::vector<double>& y_edges) {
  if (xs.size() != ys.size()) {
    throw OutOfDomain("coordinate vectors must have equal length");
  }
  if (x_edges.size() < 2 || y_edges.size() < 2 ||
      !std::is_sorted(x_edges.begin(), x_edges.end()) ||
      !std::is_sorted(y_edges.begin(), y_edges.end())) {
    throw OutOfDomain("histogram edges must be increasing with >= 2 entries");
  }
  Histogram2D h;
  h.x_edges = x_edges;
  h.y_edges = y_edges;
  h.counts.assign(x_edges.size() - 1,
                  std::vector<long long>(y_edges.size() - 1, 0));

  auto locate = [](const std::vector<double>& edges, double v,
                   std::size_t* out) {
    if (v < edges.front() || v > edges.back()) return false;
    std::size_t b = static_cast<std::size_t>(
        std::upper_bound(edges.begin(), edges.end(), v) - edges.begin());
    if (b == 0) b = 1;                      // v == front edge
    if (b > edges.size() - 1) b = edges.size() - 1;  // v == back edge
    *out = b - 1;
    return true;
  };

  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::size_t bx = 0, by = 0;
    if (!locate(h.x_edges, xs[i], &bx)) continue;
    if (!locate(h.y_edges, ys[i], &by)) continue;
    ++h.counts[bx][by];
    ++h.total_in_box;
  }
  return h;
}

}  // namespace empsup
