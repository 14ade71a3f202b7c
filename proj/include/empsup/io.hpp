#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "empsup/harness.hpp"
#include "empsup/limit_laws.hpp"

namespace empsup {

// Shortest text that parses back to the identical double (printf %.17g).
std::string format_double(double v);

// CSV with header n,replication,v,tau,r_index,r_over_n,normalized,side and
// LF line endings; the normalized field is empty when absent. Byte-stable
// for identical records.
std::string records_to_csv(const std::vector<ReplicationRecord>& records);

// CSV with header n,ks_to_gumbel,mass_interior,p_tau_le_half,
// mean_v_over_an,independence_tv.
std::string table_to_csv(const std::vector<TableRow>& rows);

// CSV with header x,y,f over the full grid, x-major.
std::string density_to_csv(const std::vector<double>& xs,
                           const std::vector<double>& ys,
                           const DensitySpec& spec);

// Reproduction manifest serialized next to every file output. The config
// block is sufficient to regenerate the output bytes; timestamps and paths
// are informational.
struct RunManifest {
  std::string command;
  ExperimentConfig config;
  DensitySpec density_spec;
  double y_max = 3.0;
  std::size_t grid_x = 0;
  std::size_t grid_y = 0;
  int workers = 1;
  std::string library_version;
  std::string started_at;
  std::string finished_at;
  std::vector<std::string> output_paths;
};

std::string manifest_to_json(const RunManifest& manifest);
RunManifest manifest_from_json(const std::string& text);

std::string iso8601_now();

}  // namespace empsup
