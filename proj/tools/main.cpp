#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "empsup/errors.hpp"
#include "empsup/harness.hpp"
#include "empsup/io.hpp"
#include "empsup/limit_laws.hpp"
#include "empsup/process.hpp"
#include "empsup/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitStatFail = 1;
constexpr int kExitUsage = 2;

std::vector<double> read_sample_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw empsup::OutOfDomain("cannot open input file: " + path);
  std::vector<double> values;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    // tolerate surrounding whitespace and skip blank lines
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    const std::string token = line.substr(first, last - first + 1);
    try {
      std::size_t used = 0;
      const double v = std::stod(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
      values.push_back(v);
    } catch (const std::exception&) {
      throw empsup::OutOfDomain("malformed float on line " +
                                std::to_string(lineno) + ": " + token);
    }
  }
  return values;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

bool parse_grid(const std::string& text, std::size_t* gx, std::size_t* gy) {
  const auto pos = text.find('x');
  if (pos == std::string::npos || pos == 0 || pos + 1 >= text.size()) {
    return false;
  }
  try {
    std::size_t ua = 0, ub = 0;
    const long a = std::stol(text.substr(0, pos), &ua);
    const long b = std::stol(text.substr(pos + 1), &ub);
    if (ua != pos || ub != text.size() - pos - 1 || a < 1 || b < 1) {
      return false;
    }
    *gx = static_cast<std::size_t>(a);
    *gy = static_cast<std::size_t>(b);
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

struct CommonOpts {
  std::uint64_t seed = 0;
  long long reps = 1000;
  std::vector<long long> n_values;
  std::string alpha = "loglog";
  std::string weighted = "true";
  std::string out_dir = ".";
  int workers = 1;
  int trunc_j = 50;
  double ymax = 3.0;
  std::string grid = "256x256";
  std::string from_manifest;
};

void apply_alpha(const std::string& text, empsup::ExperimentConfig* config) {
  if (text == "loglog") {
    config->alpha_rule = empsup::AlphaRule::LogLog;
    return;
  }
  try {
    std::size_t used = 0;
    const double a = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    config->alpha_rule = empsup::AlphaRule::Fixed;
    config->fixed_alpha = a;
  } catch (const std::exception&) {
    throw empsup::InvalidAlpha("--alpha expects 'loglog' or a float, got " +
                               text);
  }
}

bool parse_weighted(const std::string& text) {
  if (text == "true") return true;
  if (text == "false") return false;
  throw empsup::OutOfDomain("--weighted expects true or false, got " + text);
}

// Builds the manifest skeleton for a command; timestamps filled by caller.
empsup::RunManifest make_manifest(const std::string& command,
                                  const empsup::ExperimentConfig& config,
                                  const CommonOpts& opts, std::size_t gx,
                                  std::size_t gy) {
  empsup::RunManifest m;
  m.command = command;
  m.config = config;
  m.density_spec.truncation_J = opts.trunc_j;
  m.density_spec.term_tolerance = 1e-15;
  m.y_max = opts.ymax;
  m.grid_x = gx;
  m.grid_y = gy;
  m.workers = opts.workers;
  m.library_version = empsup::library_version;
  return m;
}

int run_sup(const std::vector<double>& inline_values, const std::string& path,
            bool weighted) {
  std::vector<double> values = inline_values;
  if (!path.empty()) {
    if (!values.empty()) {
      throw empsup::OutOfDomain("provide either --in or inline values");
    }
    values = read_sample_file(path);
  }
  const empsup::Sample sample = empsup::order_statistics(std::move(values));
  const empsup::SupResult sup =
      weighted ? empsup::sup_weighted(sample) : empsup::sup_unweighted(sample);
  nlohmann::json j;
  j["n"] = sample.n;
  j["value"] = sup.value;
  j["location"] = sup.location;
  j["index"] = sup.index;
  j["side"] = empsup::side_name(sup.side);
  std::cout << j.dump() << "\n";
  return kExitOk;
}

int run_experiment_cmd(empsup::RunManifest manifest) {
  empsup::validate_config(manifest.config);
  if (manifest.workers < 1) {
    throw empsup::OutOfDomain("--workers must be >= 1");
  }
  manifest.started_at = empsup::iso8601_now();
  const auto records =
      empsup::run_experiment(manifest.config, manifest.workers);
  const std::string csv = empsup::records_to_csv(records);
  manifest.finished_at = empsup::iso8601_now();

  const std::string csv_path = manifest.output_paths.front();
  write_file(csv_path, csv);
  write_file(manifest.output_paths.back(), empsup::manifest_to_json(manifest));
  std::cout << csv_path << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"supremum and maximizer of the standardized empirical process"};
  app.require_subcommand(1);

  CommonOpts opts;

  // sup
  auto* sup_cmd = app.add_subcommand(
      "sup", "supremum/argmax of one sample (JSON to stdout)");
  std::vector<double> sup_values;
  std::string sup_in;
  std::string sup_weighted_s = "true";
  sup_cmd->add_option("values", sup_values, "sample values in (0,1)");
  sup_cmd->add_option("--in", sup_in, "file with one float per line");
  sup_cmd->add_option("--weighted", sup_weighted_s, "true|false");

  // experiment
  auto* exp_cmd = app.add_subcommand(
      "experiment", "replicated supremum records (CSV + manifest)");
  exp_cmd->add_option("--seed", opts.seed, "master seed");
  exp_cmd->add_option("--reps", opts.reps, "replications per n");
  exp_cmd->add_option("--n", opts.n_values, "sample sizes")->delimiter(',');
  exp_cmd->add_option("--alpha", opts.alpha, "loglog or float in (0,1/2)");
  exp_cmd->add_option("--weighted", opts.weighted, "true|false");
  exp_cmd->add_option("--out", opts.out_dir, "output directory");
  exp_cmd->add_option("--workers", opts.workers, "parallel workers");
  exp_cmd->add_option("--from-manifest", opts.from_manifest,
                      "rerun a previous experiment manifest");

  // verify
  auto* ver_cmd = app.add_subcommand(
      "verify", "Monte Carlo check of the maximal-inequality bound");
  long long ver_n = 1000;
  double ver_a = 0.1, ver_lambda = 0.5;
  ver_cmd->add_option("--n", ver_n, "sample size");
  ver_cmd->add_option("--a", ver_a, "window endpoint in (0,1/2]");
  ver_cmd->add_option("--lambda", ver_lambda, "threshold > 0");
  ver_cmd->add_option("--reps", opts.reps, "replications");
  ver_cmd->add_option("--seed", opts.seed, "master seed");
  ver_cmd->add_option("--workers", opts.workers, "parallel workers");

  // density
  auto* den_cmd = app.add_subcommand(
      "density", "joint limit density on a grid (CSV + manifest)");
  den_cmd->add_option("--grid", opts.grid, "AxB nodes, e.g. 256x256");
  den_cmd->add_option("--ymax", opts.ymax, "upper y limit");
  den_cmd->add_option("--trunc-j", opts.trunc_j, "series truncation");
  den_cmd->add_option("--out", opts.out_dir, "output directory");
  den_cmd->add_option("--from-manifest", opts.from_manifest,
                      "rerun a previous density manifest");

  // table
  auto* tab_cmd = app.add_subcommand(
      "table", "convergence diagnostics per sample size (CSV + manifest)");
  tab_cmd->add_option("--seed", opts.seed, "master seed");
  tab_cmd->add_option("--reps", opts.reps, "replications per n (>= 1000)");
  tab_cmd->add_option("--n", opts.n_values, "sample sizes")->delimiter(',');
  tab_cmd->add_option("--alpha", opts.alpha, "loglog or float in (0,1/2)");
  tab_cmd->add_option("--weighted", opts.weighted, "true|false");
  tab_cmd->add_option("--out", opts.out_dir, "output directory");
  tab_cmd->add_option("--workers", opts.workers, "parallel workers");
  tab_cmd->add_option("--from-manifest", opts.from_manifest,
                      "rerun a previous table manifest");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  namespace fs = std::filesystem;
  try {
    if (sup_cmd->parsed()) {
      return run_sup(sup_values, sup_in, parse_weighted(sup_weighted_s));
    }

    if (ver_cmd->parsed()) {
      if (opts.workers < 1) throw empsup::OutOfDomain("--workers must be >= 1");
      const empsup::Lemma1Report rep = empsup::verify_lemma1(
          ver_n, ver_a, ver_lambda, opts.reps, opts.seed, opts.workers);
      nlohmann::json j;
      j["lhs_hat"] = rep.lhs_hat;
      j["stderr"] = rep.stderr_hat;
      j["rhs"] = rep.rhs;
      j["pass"] = rep.pass;
      std::cout << j.dump() << "\n";
      return rep.pass ? kExitOk : kExitStatFail;
    }

    if (exp_cmd->parsed()) {
      empsup::RunManifest manifest;
      if (!opts.from_manifest.empty()) {
        std::ifstream in(opts.from_manifest);
        if (!in) {
          throw empsup::OutOfDomain("cannot open manifest: " +
                                    opts.from_manifest);
        }
        std::stringstream ss;
        ss << in.rdbuf();
        manifest = empsup::manifest_from_json(ss.str());
        if (manifest.command != "experiment") {
          throw empsup::OutOfDomain("manifest describes command '" +
                                    manifest.command + "', not experiment");
        }
        if (exp_cmd->count("--workers")) manifest.workers = opts.workers;
      } else {
        if (opts.n_values.empty()) {
          throw empsup::OutOfDomain("--n requires at least one sample size");
        }
        empsup::ExperimentConfig config;
        config.n_values = opts.n_values;
        config.replications = opts.reps;
        config.master_seed = opts.seed;
        config.weighted = parse_weighted(opts.weighted);
        apply_alpha(opts.alpha, &config);
        manifest = make_manifest("experiment", config, opts, 0, 0);
      }
      fs::create_directories(opts.out_dir);
      manifest.output_paths = {
          (fs::path(opts.out_dir) / "experiment.csv").string(),
          (fs::path(opts.out_dir) / "experiment.manifest.json").string()};
      return run_experiment_cmd(std::move(manifest));
    }

    if (den_cmd->parsed()) {
      empsup::RunManifest manifest;
      if (!opts.from_manifest.empty()) {
        std::ifstream in(opts.from_manifest);
        if (!in) {
          throw empsup::OutOfDomain("cannot open manifest: " +
                                    opts.from_manifest);
        }
        std::stringstream ss;
        ss << in.rdbuf();
        manifest = empsup::manifest_from_json(ss.str());
        if (manifest.command != "density") {
          throw empsup::OutOfDomain("manifest describes command '" +
                                    manifest.command + "', not density");
        }
      } else {
        std::size_t gx = 0, gy = 0;
        if (!parse_grid(opts.grid, &gx, &gy)) {
          throw empsup::OutOfDomain("--grid expects AxB, got " + opts.grid);
        }
        if (gy < 2) throw empsup::OutOfDomain("--grid needs >= 2 y nodes");
        if (!(opts.ymax > 0.0)) throw empsup::OutOfDomain("--ymax must be > 0");
        if (opts.trunc_j < 1) throw empsup::OutOfDomain("--trunc-j must be >= 1");
        empsup::ExperimentConfig unused;
        unused.n_values = {16};
        manifest = make_manifest("density", unused, opts, gx, gy);
      }
      manifest.started_at = empsup::iso8601_now();
      const std::vector<double> xs =
          empsup::symmetric_midpoint_grid(manifest.grid_x);
      std::vector<double> ys(manifest.grid_y);
      for (std::size_t j = 0; j < manifest.grid_y; ++j) {
        // inclusive endpoints so the y = 0 row is part of the grid
        ys[j] = manifest.y_max * static_cast<double>(j) /
                static_cast<double>(manifest.grid_y - 1);
      }
      const std::string csv =
          empsup::density_to_csv(xs, ys, manifest.density_spec);
      manifest.finished_at = empsup::iso8601_now();
      fs::create_directories(opts.out_dir);
      const std::string csv_path =
          (fs::path(opts.out_dir) / "density.csv").string();
      manifest.output_paths = {
          csv_path, (fs::path(opts.out_dir) / "density.manifest.json").string()};
      write_file(csv_path, csv);
      write_file(manifest.output_paths.back(),
                 empsup::manifest_to_json(manifest));
      std::cout << csv_path << "\n";
      return kExitOk;
    }

    if (tab_cmd->parsed()) {
      empsup::RunManifest manifest;
      if (!opts.from_manifest.empty()) {
        std::ifstream in(opts.from_manifest);
        if (!in) {
          throw empsup::OutOfDomain("cannot open manifest: " +
                                    opts.from_manifest);
        }
        std::stringstream ss;
        ss << in.rdbuf();
        manifest = empsup::manifest_from_json(ss.str());
        if (manifest.command != "table") {
          throw empsup::OutOfDomain("manifest describes command '" +
                                    manifest.command + "', not table");
        }
        if (tab_cmd->count("--workers")) manifest.workers = opts.workers;
      } else {
        if (opts.n_values.empty()) {
          throw empsup::OutOfDomain("--n requires at least one sample size");
        }
        if (!parse_weighted(opts.weighted)) {
          throw empsup::OutOfDomain("table requires --weighted true");
        }
        empsup::ExperimentConfig config;
        config.n_values = opts.n_values;
        config.replications = opts.reps;
        config.master_seed = opts.seed;
        config.weighted = true;
        apply_alpha(opts.alpha, &config);
        manifest = make_manifest("table", config, opts, 0, 0);
      }
      if (manifest.workers < 1) {
        throw empsup::OutOfDomain("--workers must be >= 1");
      }
      if (manifest.config.replications < 1000) {
        throw empsup::OutOfDomain(
            "table needs --reps >= 1000 for the contingency column");
      }
      manifest.started_at = empsup::iso8601_now();
      const auto rows = empsup::convergence_table(
          manifest.config, empsup::default_gumbel_decile_edges(),
          manifest.workers);
      const std::string csv = empsup::table_to_csv(rows);
      manifest.finished_at = empsup::iso8601_now();
      fs::create_directories(opts.out_dir);
      const std::string csv_path =
          (fs::path(opts.out_dir) / "table.csv").string();
      manifest.output_paths = {
          csv_path, (fs::path(opts.out_dir) / "table.manifest.json").string()};
      write_file(csv_path, csv);
      write_file(manifest.output_paths.back(),
                 empsup::manifest_to_json(manifest));
      std::cout << csv_path << "\n";
      return kExitOk;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
