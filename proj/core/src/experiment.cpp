#include "roughsim/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace rough {

std::vector<std::size_t> ProtocolConfig::recorded_times() const {
  std::vector<std::size_t> times;
  if (time_window.empty()) {
    for (std::size_t t = 0; t <= runtime(); t += 2) times.push_back(t);
  } else {
    times = time_window;
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
  }
  return times;
}

void ProtocolConfig::validate() const {
  if (L < 2 || L % 2 != 0)
    throw std::invalid_argument("ProtocolConfig: L must be even and >= 2");
  if (d < 1) throw std::invalid_argument("ProtocolConfig: d must be >= 1");
  if (p < 0.0 || p > 1.0)
    throw std::invalid_argument("ProtocolConfig: p outside [0,1]");
  if (runtime_factor < 1)
    throw std::invalid_argument("ProtocolConfig: runtime_factor must be >= 1");
  if (samples < 1)
    throw std::invalid_argument("ProtocolConfig: samples must be >= 1");
  if (workers < 1)
    throw std::invalid_argument("ProtocolConfig: workers must be >= 1");
  for (auto t : time_window) {
    if (t % 2 != 0 || t > runtime())
      throw std::invalid_argument(
          "ProtocolConfig: window times must be even and <= T");
  }
}

StabilizerTableau prepare_initial_state(const ProtocolConfig& config, Rng& rng) {
  const LatticeSpec spec = LatticeSpec::experiment(config.d, config.L);
  const std::size_t n = spec.num_qubits();
  StabilizerTableau tableau = StabilizerTableau::computational_basis(n);
  const std::size_t half = n / 2;
  std::vector<std::size_t> left(half), right(half);
  for (std::size_t i = 0; i < half; ++i) {
    left[i] = i;
    right[i] = half + i;
  }
  tableau.scramble_random_clifford(left, rng);
  tableau.scramble_random_clifford(right, rng);
  return tableau;
}

EntropyRecord run_realization(const ProtocolConfig& config,
                              std::uint64_t sample_seed) {
  config.validate();
  const LatticeSpec spec = LatticeSpec::experiment(config.d, config.L);
  const auto groups = spec.cut_prefix_groups();

  // Independent streams so the event sequence is unchanged by the outcome
  // mode and profiles with forced outcomes match sampled-outcome runs.
  Rng scramble_rng(derive_seed(sample_seed, 1));
  const std::uint64_t circuit_seed = derive_seed(sample_seed, 2);
  Rng outcome_rng(derive_seed(sample_seed, 3));

  StabilizerTableau tableau = prepare_initial_state(config, scramble_rng);

  EntropyRecord record;
  record.sample_seed = sample_seed;
  const std::vector<std::size_t> times = config.recorded_times();
  auto want = [&](std::size_t t) {
    return std::binary_search(times.begin(), times.end(), t);
  };
  if (want(0)) {
    record.times.push_back(0);
    record.profiles.push_back(tableau.entropy_profile(groups));
  }
  const std::size_t upto = times.empty() ? 0 : times.back();
  if (upto > 0) {
    CircuitRealization circuit =
        sample_realization(spec, config.p, upto, circuit_seed);
    apply_realization(
        circuit, tableau, upto,
        [&](std::size_t t, const StabilizerTableau& tab) {
          if (want(t)) {
            record.times.push_back(t);
            record.profiles.push_back(tab.entropy_profile(groups));
          }
        },
        config.outcome_mode == OutcomeMode::forced, &outcome_rng);
  }
  return record;
}

DeltaStats compute_delta_stats(const std::vector<double>& ds1,
                               const std::vector<double>& ds2) {
  DeltaStats out;
  const std::size_t n = ds1.size();
  if (n == 0) return out;
  for (std::size_t i = 0; i < n; ++i) {
    out.mean_d1 += ds1[i];
    out.mean_d2 += ds2[i];
  }
  out.mean_d1 /= double(n);
  out.mean_d2 /= double(n);
  if (n >= 2) {
    double v1 = 0, v2 = 0, c12 = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double a = ds1[i] - out.mean_d1;
      const double b = ds2[i] - out.mean_d2;
      v1 += a * a;
      v2 += b * b;
      c12 += a * b;
    }
    out.sd_d1 = std::sqrt(v1 / double(n - 1));
    out.sd_d2 = std::sqrt(v2 / double(n - 1));
    out.cov_d12 = c12 / double(n - 1);
    out.sd_valid = true;
  }
  if (out.mean_d2 != 0.0) {
    out.r12 = out.mean_d1 / out.mean_d2;
    out.r12_valid = true;
  }
  if (out.sd_valid && out.sd_d1 > 0.0) {
    out.r1d1 = out.mean_d1 / out.sd_d1;
    out.r1d1_valid = true;
  }
  return out;
}

EnsembleSummary summarize_records(const ProtocolConfig& config,
                                  const std::vector<EntropyRecord>& records) {
  EnsembleSummary out;
  out.config = config;
  out.samples = records.size();
  if (records.empty()) return out;
  out.times = records.front().times;
  const std::size_t nt = out.times.size();
  const std::size_t ncut = records.front().profiles.empty()
                               ? 0
                               : records.front().profiles.front().size();
  const std::size_t center = (ncut - 1) / 2;

  out.mean_S.assign(nt, std::vector<double>(ncut, 0.0));
  out.std_S.assign(nt, std::vector<double>(ncut, 0.0));
  out.ds1_samples.assign(nt, {});
  out.ds2_samples.assign(nt, {});
  for (auto& v : out.ds1_samples) v.reserve(records.size());
  for (auto& v : out.ds2_samples) v.reserve(records.size());

  for (const auto& rec : records) {
    if (rec.times != out.times)
      throw std::invalid_argument("summarize_records: inconsistent record times");
    for (std::size_t k = 0; k < nt; ++k) {
      const auto& prof = rec.profiles[k];
      for (std::size_t c = 0; c < ncut; ++c) out.mean_S[k][c] += double(prof[c]);
      const double s0 = double(prof[center]);
      out.ds1_samples[k].push_back(
          0.5 * (double(prof[center + 1]) + double(prof[center - 1])) - s0);
      out.ds2_samples[k].push_back(
          0.5 * (double(prof[center + 2]) + double(prof[center - 2])) - s0);
    }
  }
  const double n = double(records.size());
  for (std::size_t k = 0; k < nt; ++k)
    for (std::size_t c = 0; c < ncut; ++c) out.mean_S[k][c] /= n;
  if (records.size() >= 2) {
    for (const auto& rec : records) {
      for (std::size_t k = 0; k < nt; ++k) {
        for (std::size_t c = 0; c < ncut; ++c) {
          const double d = double(rec.profiles[k][c]) - out.mean_S[k][c];
          out.std_S[k][c] += d * d;
        }
      }
    }
    for (std::size_t k = 0; k < nt; ++k)
      for (std::size_t c = 0; c < ncut; ++c)
        out.std_S[k][c] = std::sqrt(out.std_S[k][c] / (n - 1.0));
  }
  out.delta.resize(nt);
  for (std::size_t k = 0; k < nt; ++k)
    out.delta[k] = compute_delta_stats(out.ds1_samples[k], out.ds2_samples[k]);
  return out;
}

EnsembleSummary run_ensemble(const ProtocolConfig& config) {
  config.validate();
  std::vector<EntropyRecord> records(config.samples);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= config.samples) return;
      records[i] = run_realization(config, derive_seed(config.master_seed, i));
    }
  };
  const std::size_t nw = std::min(config.workers, config.samples);
  if (nw <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nw);
    for (std::size_t i = 0; i < nw; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return summarize_records(config, records);
}

namespace {

std::vector<std::size_t> window_indices(const EnsembleSummary& summary,
                                        std::size_t center_time,
                                        std::size_t half_width) {
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < summary.times.size(); ++k) {
    const std::size_t t = summary.times[k];
    if (t + half_width >= center_time && t <= center_time + half_width)
      idx.push_back(k);
  }
  if (idx.empty())
    throw std::invalid_argument("time window contains no recorded times");
  return idx;
}

}  // namespace

WindowObservables time_window_average(const EnsembleSummary& summary,
                                      std::size_t center_time,
                                      std::size_t half_width) {
  const auto idx = window_indices(summary, center_time, half_width);
  WindowObservables out;
  const std::size_t ncut = summary.mean_S.empty() ? 0 : summary.mean_S[0].size();
  out.mean_S.assign(ncut, 0.0);
  const double nw = double(idx.size());
  DeltaStats& d = out.delta;
  d.sd_valid = d.r12_valid = d.r1d1_valid = true;
  for (auto k : idx) {
    out.times_used.push_back(summary.times[k]);
    for (std::size_t c = 0; c < ncut; ++c) out.mean_S[c] += summary.mean_S[k][c];
    const DeltaStats& s = summary.delta[k];
    d.mean_d1 += s.mean_d1;
    d.mean_d2 += s.mean_d2;
    d.sd_d1 += s.sd_d1;
    d.sd_d2 += s.sd_d2;
    d.cov_d12 += s.cov_d12;
    d.r12 += s.r12;
    d.r1d1 += s.r1d1;
    d.sd_valid = d.sd_valid && s.sd_valid;
    d.r12_valid = d.r12_valid && s.r12_valid;
    d.r1d1_valid = d.r1d1_valid && s.r1d1_valid;
  }
  for (auto& v : out.mean_S) v /= nw;
  d.mean_d1 /= nw;
  d.mean_d2 /= nw;
  d.sd_d1 /= nw;
  d.sd_d2 /= nw;
  d.cov_d12 /= nw;
  d.r12 /= nw;
  d.r1d1 /= nw;
  return out;
}

DeltaEnsemble window_delta_ensemble(const EnsembleSummary& summary,
                                    std::size_t center_time,
                                    std::size_t half_width) {
  const auto idx = window_indices(summary, center_time, half_width);
  DeltaEnsemble out;
  out.L = summary.config.L;
  out.d = summary.config.d;
  out.p = summary.config.p;
  out.t = double(summary.config.runtime());
  const std::size_t n = summary.samples;
  out.ds1.assign(n, 0.0);
  out.ds2.assign(n, 0.0);
  for (auto k : idx) {
    for (std::size_t i = 0; i < n; ++i) {
      out.ds1[i] += summary.ds1_samples[k][i];
      out.ds2[i] += summary.ds2_samples[k][i];
    }
  }
  const double nw = double(idx.size());
  for (auto& v : out.ds1) v /= nw;
  for (auto& v : out.ds2) v /= nw;
  return out;
}

std::vector<std::size_t> default_analysis_window(const ProtocolConfig& config) {
  const std::size_t T = config.runtime();
  std::vector<std::size_t> out;
  for (std::size_t back = 4;; back -= 2) {
    if (back <= T) out.push_back(T - back);
    if (back == 0) break;
  }
  return out;
}

}  // namespace rough
