#pragma once

#include <cstdint>
#include <vector>

#include "roughsim/circuit.hpp"
#include "roughsim/lattice.hpp"
#include "roughsim/rng.hpp"
#include "roughsim/tableau.hpp"

namespace rough {

enum class OutcomeMode { forced, sampled };

struct ProtocolConfig {
  std::size_t L = 0;
  std::size_t d = 3;
  double p = 0.0;
  std::size_t runtime_factor = 2;  // T = runtime_factor * L
  std::size_t samples = 1;
  std::uint64_t master_seed = 0;
  // Even times at which profiles are recorded; empty means all even t <= T
  // (including t = 0).
  std::vector<std::size_t> time_window;
  OutcomeMode outcome_mode = OutcomeMode::forced;
  std::size_t workers = 1;

  std::size_t runtime() const { return runtime_factor * L; }
  std::vector<std::size_t> recorded_times() const;
  void validate() const;
};

// S(x,t) for one disorder realization. profiles[k][c] is the entropy of the
// first c x-slabs at recorded time times[k]; reported cut coordinate x = c - 2L.
struct EntropyRecord {
  std::uint64_t sample_seed = 0;
  std::vector<std::size_t> times;
  std::vector<std::vector<std::size_t>> profiles;
};

struct DeltaStats {
  double mean_d1 = 0, mean_d2 = 0;
  double sd_d1 = 0, sd_d2 = 0, cov_d12 = 0;
  double r12 = 0, r1d1 = 0;
  bool sd_valid = false;    // false when samples < 2
  bool r12_valid = false;   // false when the denominator vanishes
  bool r1d1_valid = false;  // false when sd_d1 vanishes
};

struct EnsembleSummary {
  ProtocolConfig config;
  std::size_t samples = 0;
  std::vector<std::size_t> times;
  std::vector<std::vector<double>> mean_S;  // [time][cut]
  std::vector<std::vector<double>> std_S;   // [time][cut]
  std::vector<DeltaStats> delta;            // [time]
  // Per-sample symmetrized entropy costs, kept for bootstrap re-analysis.
  std::vector<std::vector<double>> ds1_samples;  // [time][sample]
  std::vector<std::vector<double>> ds2_samples;  // [time][sample]
};

// Per-sample symmetrized step costs averaged over a time window; the unit
// handed to the analysis ratios.
struct DeltaEnsemble {
  std::size_t L = 0, d = 0;
  double p = 0;
  double t = 0;  // scale variable used in collapses (= runtime)
  std::vector<double> ds1, ds2;
};

// Two independently scrambled halves joined at the central cut; the cross-cut
// entropy of the result is exactly zero.
StabilizerTableau prepare_initial_state(const ProtocolConfig& config, Rng& rng);

EntropyRecord run_realization(const ProtocolConfig& config,
                              std::uint64_t sample_seed);

// Runs `samples` independent realizations (seed i = derive_seed(master, i))
// on a worker pool; the aggregate is identical for any worker count.
EnsembleSummary run_ensemble(const ProtocolConfig& config);

// Aggregation of already-computed records, in record order. Used by
// run_ensemble and by re-analysis of persisted raw records.
EnsembleSummary summarize_records(const ProtocolConfig& config,
                                  const std::vector<EntropyRecord>& records);

struct WindowObservables {
  std::vector<std::size_t> times_used;
  std::vector<double> mean_S;  // per cut, averaged over the window
  DeltaStats delta;
};

// Averages the per-time observables over even times in
// [center - half_width, center + half_width].
WindowObservables time_window_average(const EnsembleSummary& summary,
                                      std::size_t center_time,
                                      std::size_t half_width);

// Window-averaged per-sample deltas (averaged within each realization first).
DeltaEnsemble window_delta_ensemble(const EnsembleSummary& summary,
                                    std::size_t center_time,
                                    std::size_t half_width);

// The default analysis window {2L-4, 2L-2, 2L} clipped to available times.
std::vector<std::size_t> default_analysis_window(const ProtocolConfig& config);

DeltaStats compute_delta_stats(const std::vector<double>& ds1,
                               const std::vector<double>& ds2);

}  // namespace rough
