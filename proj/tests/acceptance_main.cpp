// Acceptance gate: nine checks, one report line each, exit code = number of
// failed checks. Every check is deterministic: seeds are fixed constants.
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "empsup/bridge.hpp"
#include "empsup/errors.hpp"
#include "empsup/harness.hpp"
#include "empsup/io.hpp"
#include "empsup/limit_laws.hpp"
#include "empsup/process.hpp"
#include "empsup/rng.hpp"
#include "empsup/version.hpp"

using namespace empsup;

namespace {

constexpr std::uint64_t kOracleSeed = 101;
constexpr std::uint64_t kReflectionSeed = 202;
constexpr std::uint64_t kExperimentSeed = 1;
constexpr std::uint64_t kLemmaSeed = 303;
constexpr std::uint64_t kUnweightedSeed = 1;
constexpr std::uint64_t kBridgeSeed = 7;
constexpr std::uint64_t kDeterminismSeed = 707;
constexpr int kWorkers = 8;

int failures = 0;

void report(int k, bool pass, const std::string& text) {
  std::printf("CRITERION %d: %s - %s\n", k, pass ? "PASS" : "FAIL",
              text.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* format, ...) {
  char buf[768];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

Sample random_sample(std::uint64_t seed, std::uint64_t id, std::size_t n) {
  Engine eng = make_stream(seed, id, 0);
  std::vector<double> values(n);
  for (auto& v : values) v = uniform_open01(eng);
  return order_statistics(std::move(values));
}

void criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  double max_rel = 0.0;
  Engine size_rng = make_stream(kOracleSeed, 0, 0);
  for (int s = 0; s < 1000; ++s) {
    const std::size_t n = 1 + static_cast<std::size_t>(size_rng() % 50);
    const Sample sample =
        random_sample(kOracleSeed, 1000 + static_cast<std::uint64_t>(s), n);
    for (const bool weighted : {true, false}) {
      const SupResult fast =
          weighted ? sup_weighted(sample) : sup_unweighted(sample);
      const SupResult slow = grid_oracle_sup(sample, 100000, weighted);
      const double rel = std::fabs(fast.value - slow.value) / slow.value;
      if (rel > max_rel) max_rel = rel;
      if (rel > 1e-12 || fast.location != slow.location ||
          fast.index != slow.index) {
        ok = false;
      }
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  ok = ok && secs < 60.0;
  report(1, ok,
         fmt("closed-form supremum equals the 1e5-point grid oracle on 1000 "
             "samples, n in 1..50, weighted and unweighted (max rel value "
             "diff %.2e, location/index exact, %.1f s)",
             max_rel, secs));
}

void criterion2(const std::vector<TableRow>& rows,
                const std::string& shared_err) {
  bool reflect_ok = true;
  for (int i = 0; i < 10000 && reflect_ok; ++i) {
    const std::size_t n = 1 + static_cast<std::size_t>(i % 300);
    const Sample sample =
        random_sample(kReflectionSeed, static_cast<std::uint64_t>(i), n);
    std::vector<double> mirrored(sample.values.size());
    for (std::size_t j = 0; j < mirrored.size(); ++j) {
      mirrored[j] = 1.0 - sample.values[j];
    }
    const SupResult a = sup_weighted(sample);
    const SupResult b = sup_weighted(order_statistics(std::move(mirrored)));
    if (b.value != a.value || b.location != 1.0 - a.location ||
        b.index != sample.n + 1 - a.index || b.side == a.side) {
      reflect_ok = false;
    }
  }

  if (!shared_err.empty()) {
    report(2, false, "shared experiment failed: " + shared_err);
    return;
  }
  bool bands_ok = rows.size() == 3;
  for (const auto& row : rows) {
    if (std::fabs(row.p_tau_le_half - 0.5) > 0.015) bands_ok = false;
  }
  report(2, reflect_ok && bands_ok,
         fmt("sample reflection flips (tau, index, side) bitwise on 10^4 "
             "samples [%s]; P(tau <= 1/2) = %.4f / %.4f / %.4f at n = "
             "100/1000/10000, all within 0.5 +- 0.015 [%s]",
             reflect_ok ? "ok" : "violated",
             rows.size() == 3 ? rows[0].p_tau_le_half : -1.0,
             rows.size() == 3 ? rows[1].p_tau_le_half : -1.0,
             rows.size() == 3 ? rows[2].p_tau_le_half : -1.0,
             bands_ok ? "ok" : "violated"));
}

void criterion3() {
  const long long ns[] = {100, 1000, 10000};
  const double as[] = {0.01, 0.1, 0.5};
  const double lambdas[] = {0.05, 0.15, 0.5};
  bool ok = true;
  double worst_margin = 1e300;
  for (long long n : ns) {
    for (double a : as) {
      for (double lambda : lambdas) {
        const Lemma1Report rep =
            verify_lemma1(n, a, lambda, 10000, kLemmaSeed, kWorkers);
        const double margin = rep.rhs + 3.0 * rep.stderr_hat - rep.lhs_hat;
        if (margin < worst_margin) worst_margin = margin;
        if (!rep.pass) ok = false;
      }
    }
  }
  report(3, ok,
         fmt("maximal-inequality bound holds on all 27 cells of n in "
             "{100,1000,10000} x a in {0.01,0.1,0.5} x lambda in "
             "{0.05,0.15,0.5}, 10^4 replications each (worst margin "
             "rhs+3se-lhs = %.4f)",
             worst_margin));
}

void criterion4(const std::vector<TableRow>& rows,
                const std::string& shared_err) {
  if (!shared_err.empty()) {
    report(4, false, "shared experiment failed: " + shared_err);
    return;
  }
  const bool trend = rows.size() == 3 &&
                     rows[0].ks_to_gumbel >= rows[1].ks_to_gumbel &&
                     rows[1].ks_to_gumbel >= rows[2].ks_to_gumbel;
  const bool final_ok = rows.size() == 3 && rows[2].ks_to_gumbel <= 0.25;
  report(4, trend && final_ok,
         fmt("KS distance of the normalized supremum to its Gumbel limit is "
             "weakly decreasing and ends <= 0.25: %.4f >= %.4f >= %.4f at "
             "n = 100/1000/10000",
             rows.size() == 3 ? rows[0].ks_to_gumbel : -1.0,
             rows.size() == 3 ? rows[1].ks_to_gumbel : -1.0,
             rows.size() == 3 ? rows[2].ks_to_gumbel : -1.0));
}

void criterion5(const std::vector<ReplicationRecord>& records,
                const std::vector<TableRow>& rows,
                const std::string& shared_err) {
  if (!shared_err.empty()) {
    report(5, false, "shared experiment failed: " + shared_err);
    return;
  }
  const long long ns[] = {100, 1000, 10000};
  double conc[3] = {0.0, 0.0, 0.0};
  for (int i = 0; i < 3; ++i) {
    double inside = 0.0, total = 0.0;
    for (const auto& rec : records) {
      if (rec.n != ns[i]) continue;
      total += 1.0;
      if (rec.r_over_n > 0.25 && rec.r_over_n < 0.75) inside += 1.0;
    }
    conc[i] = total > 0.0 ? inside / total : -1.0;
  }
  const bool mass_trend = rows.size() == 3 &&
                          rows[0].mass_interior >= rows[1].mass_interior &&
                          rows[1].mass_interior >= rows[2].mass_interior;
  const bool conc_trend = conc[0] >= conc[1] && conc[1] >= conc[2];
  report(5, mass_trend && conc_trend,
         fmt("interior mass with alpha_n = 1/log log n weakly decreasing: "
             "%.4f / %.4f / %.4f [%s]; P(r/n in (0.25,0.75)) weakly "
             "decreasing: %.4f >= %.4f >= %.4f [%s]",
             rows.size() == 3 ? rows[0].mass_interior : -1.0,
             rows.size() == 3 ? rows[1].mass_interior : -1.0,
             rows.size() == 3 ? rows[2].mass_interior : -1.0,
             mass_trend ? "ok" : "violated", conc[0], conc[1], conc[2],
             conc_trend ? "ok" : "violated"));
}

void criterion6() {
  const DensitySpec spec;
  const QuadratureResult q = integrate_density(spec, 3.0, 256, 256);
  const bool mass_ok = std::fabs(q.total_mass - 1.0) <= 1e-3;

  bool sym_ok = true;
  const std::vector<double> xs = symmetric_midpoint_grid(101);
  for (int j = 0; j < 101 && sym_ok; ++j) {
    const double y = 3.0 * static_cast<double>(j) / 100.0;
    for (double x : xs) {
      if (density_TW(x, y, spec) != density_TW(1.0 - x, y, spec)) {
        sym_ok = false;
        break;
      }
    }
  }
  report(6, mass_ok && sym_ok,
         fmt("joint density integrates to 1 +- 1e-3 over (0,1) x (0,3) with "
             "J=50 on 256x256 nodes (mass = %.8f) and f(x,y) = f(1-x,y) "
             "bitwise on a 101x101 grid [%s]",
             q.total_mass, sym_ok ? "ok" : "violated"));
}

void criterion7() {
  const DensitySpec spec;
  double max_diff = 0.0;
  for (double y : {0.5, 1.0, 1.5, 2.0}) {
    const QuadratureResult q = integrate_density(spec, y, 256, 256);
    const double diff = std::fabs(q.total_mass - kolmogorov_cdf(y));
    if (diff > max_diff) max_diff = diff;
  }
  report(7, max_diff <= 2e-3,
         fmt("cumulative quadrature of the joint density matches the "
             "supremum CDF within 2e-3 at y in {0.5,1,1.5,2} (max diff "
             "%.2e)",
             max_diff));
}

// TV between the empirical 10x10 histogram of (location, value) over
// (0,1) x (0,3) and the quadrature cell masses of the joint density, both
// renormalized over the box.
double joint_tv(const std::vector<double>& locs,
                const std::vector<double>& vals) {
  const int nb = 10;
  std::vector<double> xe(nb + 1), ye(nb + 1);
  for (int i = 0; i <= nb; ++i) {
    xe[static_cast<std::size_t>(i)] = static_cast<double>(i) / nb;
    ye[static_cast<std::size_t>(i)] = 3.0 * static_cast<double>(i) / nb;
  }
  const Histogram2D h = histogram2d(locs, vals, xe, ye);

  const DensitySpec spec;
  const int sub = 32;
  std::vector<std::vector<double>> q(nb, std::vector<double>(nb, 0.0));
  double qtot = 0.0;
  for (int i = 0; i < nb; ++i) {
    for (int j = 0; j < nb; ++j) {
      const double dx = (xe[i + 1] - xe[i]) / sub;
      const double dy = (ye[j + 1] - ye[j]) / sub;
      double mass = 0.0;
      for (int u = 0; u < sub; ++u) {
        for (int v = 0; v < sub; ++v) {
          mass += density_TW(xe[i] + (u + 0.5) * dx, ye[j] + (v + 0.5) * dy,
                             spec);
        }
      }
      q[i][j] = mass * dx * dy;
      qtot += q[i][j];
    }
  }

  double tv = 0.0;
  for (int i = 0; i < nb; ++i) {
    for (int j = 0; j < nb; ++j) {
      const double p =
          static_cast<double>(h.counts[i][j]) /
          static_cast<double>(h.total_in_box > 0 ? h.total_in_box : 1);
      tv += std::fabs(p - q[i][j] / qtot);
    }
  }
  return 0.5 * tv;
}

void criterion8() {
  // empirical side: unweighted supremum and maximizer at n = 5000
  ExperimentConfig cfg;
  cfg.n_values = {5000};
  cfg.replications = 10000;
  cfg.master_seed = kUnweightedSeed;
  cfg.weighted = false;
  const auto records = run_experiment(cfg, kWorkers);
  std::vector<double> vals, locs;
  vals.reserve(records.size());
  locs.reserve(records.size());
  for (const auto& rec : records) {
    vals.push_back(rec.v);
    locs.push_back(rec.tau);
  }
  const double ks_emp =
      ks_distance(vals, [](double y) { return kolmogorov_cdf(y); });
  const double tv_emp = joint_tv(locs, vals);

  // oracle side: argmax of |bridge| on 4096 segments
  Engine eng = make_stream(kBridgeSeed, 0, 0);
  std::vector<double> bvals, blocs;
  bvals.reserve(10000);
  blocs.reserve(10000);
  for (int p = 0; p < 10000; ++p) {
    const BridgePath path = sample_bridge(4096, eng);
    const BridgeArgmax am = argmax_abs(path);
    bvals.push_back(am.value);
    blocs.push_back(am.location);
  }
  const double ks_br =
      ks_distance(bvals, [](double y) { return kolmogorov_cdf(y); });
  const double tv_br = joint_tv(blocs, bvals);

  const bool ok =
      ks_emp <= 0.02 && tv_emp <= 0.1 && ks_br <= 0.02 && tv_br <= 0.1;
  report(8, ok,
         fmt("unweighted supremum at n=5000 and the bridge oracle at m=4096 "
             "both match the limit (KS %.4f / %.4f <= 0.02; joint 10x10 TV "
             "%.4f / %.4f <= 0.1, 10^4 replications each)",
             ks_emp, ks_br, tv_emp, tv_br));
}

void criterion9() {
  ExperimentConfig cfg;
  cfg.n_values = {50, 200};
  cfg.replications = 500;
  cfg.master_seed = kDeterminismSeed;
  const std::string csv1 = records_to_csv(run_experiment(cfg, 1));

  RunManifest manifest;
  manifest.command = "experiment";
  manifest.config = cfg;
  manifest.workers = 8;
  manifest.library_version = library_version;
  const RunManifest back = manifest_from_json(manifest_to_json(manifest));
  const std::string csv8 = records_to_csv(run_experiment(back.config, back.workers));

  const bool ok = !csv1.empty() && csv1 == csv8;
  report(9, ok,
         fmt("manifest round-trip rerun reproduces byte-identical CSV with "
             "worker counts 1 and 8 (%zu bytes)",
             csv1.size()));
}

}  // namespace

int main() {
  try {
    criterion1();
  } catch (const std::exception& e) {
    report(1, false, std::string("exception: ") + e.what());
  }

  ExperimentConfig shared;
  shared.n_values = {100, 1000, 10000};
  shared.replications = 10000;
  shared.master_seed = kExperimentSeed;
  std::vector<ReplicationRecord> records;
  std::vector<TableRow> rows;
  std::string shared_err;
  try {
    records = run_experiment(shared, kWorkers);
    rows = convergence_table_from_records(records, shared,
                                          default_gumbel_decile_edges());
  } catch (const std::exception& e) {
    shared_err = e.what();
  }

  try {
    criterion2(rows, shared_err);
  } catch (const std::exception& e) {
    report(2, false, std::string("exception: ") + e.what());
  }
  try {
    criterion3();
  } catch (const std::exception& e) {
    report(3, false, std::string("exception: ") + e.what());
  }
  try {
    criterion4(rows, shared_err);
  } catch (const std::exception& e) {
    report(4, false, std::string("exception: ") + e.what());
  }
  try {
    criterion5(records, rows, shared_err);
  } catch (const std::exception& e) {
    report(5, false, std::string("exception: ") + e.what());
  }
  try {
    criterion6();
  } catch (const std::exception& e) {
    report(6, false, std::string("exception: ") + e.what());
  }
  try {
    criterion7();
  } catch (const std::exception& e) {
    report(7, false, std::string("exception: ") + e.what());
  }
  try {
    criterion8();
  } catch (const std::exception& e) {
    report(8, false, std::string("exception: ") + e.what());
  }
  try {
    criterion9();
  } catch (const std::exception& e) {
    report(9, false, std::string("exception: ") + e.what());
  }
  return failures;
}
