#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "roughsim/experiment.hpp"

namespace rough {

inline constexpr const char* kVersion = "0.1.0";

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flat key-value run configuration: one `key = value` per line, `#` comments,
// comma-separated lists. Keys: d, L, p, runtime_factor, samples, master_seed,
// workers, output_dir, outcome_mode, time_window (optional), save_raw
// (optional).
struct RunConfig {
  ProtocolConfig base;      // p is filled in per ensemble from `ps`
  std::vector<double> ps;
  std::string output_dir = ".";
  bool save_raw = false;
};

RunConfig parse_run_config(const std::string& path);
RunConfig parse_run_config_text(const std::string& text);

// Ensemble profile CSV: L,d,p,t,x,mean_S,std_S,n_samples.
void write_profile_csv(const std::string& path, const EnsembleSummary& s);

struct ProfileRow {
  std::size_t L, d;
  double p;
  std::size_t t;
  long x;
  double mean_S, std_S;
  std::size_t n_samples;
};
std::vector<ProfileRow> read_profile_csv(const std::string& path);

// Companion observables CSV with the per-realization step-cost statistics
// that cannot be reconstructed from the profile aggregates:
// L,d,p,t,mean_dS1,std_dS1,mean_dS2,std_dS2,cov_dS12,r12,r1d1,n_samples.
void write_observables_csv(const std::string& path, const EnsembleSummary& s);

struct ObservablesRow {
  std::size_t L, d;
  double p;
  std::size_t t;
  DeltaStats stats;
  std::size_t n_samples;
};
std::vector<ObservablesRow> read_observables_csv(const std::string& path);

// Raw per-realization record, one file per sample index.
void write_record_csv(const std::string& path, const EntropyRecord& r,
                      const ProtocolConfig& config);
EntropyRecord read_record_csv(const std::string& path);

struct RunManifest {
  RunConfig config;
  std::vector<std::uint64_t> sample_seeds;
  std::vector<std::string> outputs;
  double wall_time_s = 0;
  std::string version = kVersion;
};

void write_manifest(const std::string& path, const RunManifest& m);
RunManifest read_manifest(const std::string& path);

std::string format_double(double v);

}  // namespace rough
