#include "empsup/io.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <stdexcept>

#include <json.hpp>

#include "empsup/errors.hpp"
#include "empsup/version.hpp"

namespace empsup {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string records_to_csv(const std::vector<ReplicationRecord>& records) {
  std::string out = "n,replication,v,tau,r_index,r_over_n,normalized,side\n";
  for (const auto& rec : records) {
    out += std::to_string(rec.n);
    out += ',';
    out += std::to_string(rec.replication);
    out += ',';
    out += format_double(rec.v);
    out += ',';
    out += format_double(rec.tau);
    out += ',';
    out += std::to_string(rec.r_index);
    out += ',';
    out += format_double(rec.r_over_n);
    out += ',';
    if (rec.normalized.has_value()) out += format_double(*rec.normalized);
    out += ',';
    out += side_name(rec.side);
    out += '\n';
  }
  return out;
}

std::string table_to_csv(const std::vector<TableRow>& rows) {
  std::string out =
      "n,ks_to_gumbel,mass_interior,p_tau_le_half,mean_v_over_an,"
      "independence_tv\n";
  for (const auto& row : rows) {
    out += std::to_string(row.n);
    out += ',';
    out += format_double(row.ks_to_gumbel);
    out += ',';
    out += format_double(row.mass_interior);
    out += ',';
    out += format_double(row.p_tau_le_half);
    out += ',';
    out += format_double(row.mean_v_over_an);
    out += ',';
    out += format_double(row.independence_tv);
    out += '\n';
  }
  return out;
}

std::string density_to_csv(const std::vector<double>& xs,
                           const std::vector<double>& ys,
                           const DensitySpec& spec) {
  std::string out = "x,y,f\n";
  for (double x : xs) {
    for (double y : ys) {
      out += format_double(x);
      out += ',';
      out += format_double(y);
      out += ',';
      out += format_double(density_TW(x, y, spec));
      out += '\n';
    }
  }
  return out;
}

namespace {

const char* alpha_rule_name(AlphaRule rule) {
  return rule == AlphaRule::LogLog ? "loglog" : "fixed";
}

AlphaRule alpha_rule_from(const std::string& name) {
  if (name == "loglog") return AlphaRule::LogLog;
  if (name == "fixed") return AlphaRule::Fixed;
  throw OutOfDomain("unknown alpha rule: " + name);
}

}  // namespace

std::string manifest_to_json(const RunManifest& manifest) {
  nlohmann::json j;
  j["command"] = manifest.command;
  j["config"] = {
      {"n_values", manifest.config.n_values},
      {"replications", manifest.config.replications},
      {"master_seed", manifest.config.master_seed},
      {"alpha_rule", alpha_rule_name(manifest.config.alpha_rule)},
      {"fixed_alpha", manifest.config.fixed_alpha},
      {"weighted", manifest.config.weighted},
  };
  j["density_spec"] = {
      {"truncation_J", manifest.density_spec.truncation_J},
      {"term_tolerance", manifest.density_spec.term_tolerance},
  };
  j["y_max"] = manifest.y_max;
  j["grid_x"] = manifest.grid_x;
  j["grid_y"] = manifest.grid_y;
  j["workers"] = manifest.workers;
  j["library_version"] = manifest.library_version.empty()
                             ? library_version
                             : manifest.library_version;
  j["started_at"] = manifest.started_at;
  j["finished_at"] = manifest.finished_at;
  j["output_paths"] = manifest.output_paths;
  return j.dump(2) + "\n";
}

RunManifest manifest_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  RunManifest m;
  m.command = j.at("command").get<std::string>();
  const auto& c = j.at("config");
  m.config.n_values = c.at("n_values").get<std::vector<long long>>();
  m.config.replications = c.at("replications").get<long long>();
  m.config.master_seed = c.at("master_seed").get<std::uint64_t>();
  m.config.alpha_rule = alpha_rule_from(c.at("alpha_rule").get<std::string>());
  m.config.fixed_alpha = c.at("fixed_alpha").get<double>();
  m.config.weighted = c.at("weighted").get<bool>();
  const auto& d = j.at("density_spec");
  m.density_spec.truncation_J = d.at("truncation_J").get<int>();
  m.density_spec.term_tolerance = d.at("term_tolerance").get<double>();
  m.y_max = j.at("y_max").get<double>();
  m.grid_x = j.at("grid_x").get<std::size_t>();
  m.grid_y = j.at("grid_y").get<std::size_t>();
  m.workers = j.at("workers").get<int>();
  m.library_version = j.at("library_version").get<std::string>();
  m.started_at = j.at("started_at").get<std::string>();
  m.finished_at = j.at("finished_at").get<std::string>();
  m.output_paths = j.at("output_paths").get<std::vector<std::string>>();
  return m;
}

std::string iso8601_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm_utc{};
  gmtime_r(&t, &tm_utc);
  char buf[72];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ",
                tm_utc.tm_year + 1900, tm_utc.tm_mon + 1, tm_utc.tm_mday,
                tm_utc.tm_hour, tm_utc.tm_min, tm_utc.tm_sec);
  return buf;
}

}  // namespace empsup
