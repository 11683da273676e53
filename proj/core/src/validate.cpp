#include "roughsim/validate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>

#include "roughsim/circuit.hpp"
#include "roughsim/experiment.hpp"
#include "roughsim/lattice.hpp"
#include "roughsim/rng.hpp"
#include "roughsim/statevector.hpp"
#include "roughsim/tableau.hpp"

namespace rough {

namespace {

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

SuiteResult vacuous(const char* name) {
  SuiteResult r;
  r.name = name;
  r.detail = "warning: zero trials requested, vacuous pass";
  return r;
}

PauliOperator random_pauli(std::size_t n, Rng& rng) {
  for (;;) {
    PauliOperator op(n);
    for (std::size_t q = 0; q < n; ++q) {
      op.set_x(q, rng.bit());
      op.set_z(q, rng.bit());
    }
    op.set_negative(rng.bit());
    if (!op.is_identity()) return op;
  }
}

// One tableau-vs-state-vector trial: build a random circuit from trial_seed,
// apply its first gate_limit gates to both engines, compare measurement
// outcomes as they happen and all prefix-cut entropies at the end. Returns a
// mismatch description, or nothing on agreement. total_gates reports the full
// circuit length so callers can shrink.
std::optional<std::string> run_oracle_trial(std::uint64_t trial_seed,
                                            std::size_t max_qubits,
                                            std::size_t gate_limit,
                                            FaultInjection fault,
                                            std::size_t* total_gates) {
  Rng rng(trial_seed);
  const std::size_t n = 2 + rng.below(max_qubits - 1);
  const std::size_t len = 3 * n + rng.below(3 * n);
  if (total_gates) *total_gates = len;

  StateVector sv(n);
  StabilizerTableau tab = StabilizerTableau::computational_basis(n);

  for (std::size_t g = 0; g < std::min(len, gate_limit); ++g) {
    const std::size_t kind = rng.below(3);
    if (kind == 0) {
      const std::size_t q = rng.below(n);
      sv.apply_hadamard(q);
      tab.apply_hadamard(q);
    } else if (kind == 1) {
      const std::size_t c = rng.below(n);
      std::size_t t = rng.below(n - 1);
      if (t >= c) ++t;
      sv.apply_cnot(c, t);
      tab.apply_cnot(c, t);
    } else {
      const PauliOperator op = random_pauli(n, rng);
      const int ref = sv.measure_pauli(op, +1);
      const int forced =
          fault == FaultInjection::flip_measurement_sign ? -1 : +1;
      const int got = tab.measure_pauli(op, forced);
      if (got != ref)
        return fmt("gate %zu: outcome mismatch measuring %s (tableau %+d, "
                   "state vector %+d)",
                   g, op.to_string().c_str(), got, ref);
      // Post-measurement the operator stabilizes the state with sign ref.
      const double e = sv.expectation(op);
      if (std::abs(e - double(ref)) > 1e-9)
        return fmt("gate %zu: state-vector expectation %.3g after outcome %+d",
                   g, e, ref);
    }
  }

  if (!tab.check_invariants()) return "tableau invariants violated";

  CutSpec cut;
  for (std::size_t k = 1; k < n; ++k) {
    cut.subsystem.push_back(k - 1);
    const std::size_t si = tab.entropy_of_cut(cut);
    const double sd = sv.entropy_of_cut(cut);
    if (std::abs(sd - double(si)) > 1e-6)
      return fmt("prefix cut of %zu: tableau %zu bits, state vector %.6f",
                 k, si, sd);
  }
  for (int rep = 0; rep < 4; ++rep) {
    CutSpec rc;
    for (std::size_t q = 0; q < n; ++q)
      if (rng.bit()) rc.subsystem.push_back(q);
    if (rc.subsystem.empty() || rc.subsystem.size() == n) continue;
    const std::size_t si = tab.entropy_of_cut(rc);
    const double sd = sv.entropy_of_cut(rc);
    if (std::abs(sd - double(si)) > 1e-6)
      return fmt("random cut of %zu qubits: tableau %zu bits, state vector "
                 "%.6f",
                 rc.subsystem.size(), si, sd);
  }
  return std::nullopt;
}

}  // namespace

SuiteResult suite_oracle_equivalence(std::size_t max_qubits, std::size_t trials,
                                     std::uint64_t seed, FaultInjection fault) {
  if (trials == 0) return vacuous("oracle-equivalence");
  if (max_qubits < 2 || max_qubits > 12)
    throw std::invalid_argument(
        "suite_oracle_equivalence: max_qubits must be in [2, 12]");
  SuiteResult r;
  r.name = "oracle-equivalence";
  r.trials = trials;
  for (std::size_t i = 0; i < trials; ++i) {
    const std::uint64_t trial_seed = derive_seed(seed, i);
    std::size_t len = 0;
    auto bad = run_oracle_trial(trial_seed, max_qubits, SIZE_MAX, fault, &len);
    if (!bad) continue;
    r.failures = 1;
    r.repro_seed = trial_seed;
    // Shrink to the shortest failing gate prefix of the same circuit.
    std::size_t limit = len;
    for (std::size_t g = 1; g <= len; ++g) {
      if (run_oracle_trial(trial_seed, max_qubits, g, fault, nullptr)) {
        limit = g;
        break;
      }
    }
    r.detail = fmt("trial %zu (seed %llu) fails within the first %zu gates: ",
                   i, (unsigned long long)trial_seed, limit) +
               *bad;
    return r;
  }
  r.detail = fmt("%zu random circuits agree with the dense oracle", trials);
  return r;
}

SuiteResult suite_layer_commutation(std::size_t trials, std::uint64_t seed) {
  if (trials == 0) return vacuous("layer-commutation");
  SuiteResult r;
  r.name = "layer-commutation";
  r.trials = trials;
  for (std::size_t i = 0; i < trials; ++i) {
    const std::uint64_t trial_seed = derive_seed(seed, i);
    Rng rng(trial_seed);

    // Random small lattice, capped at 64 qubits.
    std::vector<std::size_t> extents;
    std::vector<Boundary> bnd;
    for (;;) {
      extents.clear();
      bnd.clear();
      const std::size_t d = 1 + rng.below(3);
      extents.push_back(2 * (1 + rng.below(3)));
      bnd.push_back(rng.bit() ? Boundary::open : Boundary::periodic);
      for (std::size_t a = 1; a < d; ++a) {
        extents.push_back(2 * (1 + rng.below(2)));
        bnd.push_back(rng.bit() ? Boundary::open : Boundary::periodic);
      }
      std::size_t q = 1;
      for (auto e : extents) q *= e;
      if (q <= 64) break;
    }
    const LatticeSpec spec(extents, bnd);
    const std::size_t T = 2 * (1 + rng.below(2));
    CircuitRealization circ =
        sample_realization(spec, 0.0, T, derive_seed(trial_seed, 1));

    Rng scramble(derive_seed(trial_seed, 2));
    StabilizerTableau base =
        StabilizerTableau::computational_basis(spec.num_qubits());
    std::vector<std::size_t> all(spec.num_qubits());
    for (std::size_t q = 0; q < all.size(); ++q) all[q] = q;
    base.scramble_random_clifford(all, scramble);

    StabilizerTableau ordered = base;
    apply_realization(circ, ordered, T);

    // Shuffle events within each time step (p = 0: all CNOTs, all commuting).
    CircuitRealization shuffled = circ;
    auto begin = shuffled.events.begin();
    while (begin != shuffled.events.end()) {
      auto end = begin;
      while (end != shuffled.events.end() && end->time == begin->time) ++end;
      std::shuffle(begin, end, rng.engine());
      begin = end;
    }
    StabilizerTableau permuted = base;
    apply_realization(shuffled, permuted, T);

    if (!(ordered == permuted)) {
      r.failures = 1;
      r.repro_seed = trial_seed;
      r.detail = fmt("trial %zu (seed %llu): within-layer shuffle changed the "
                     "final tableau",
                     i, (unsigned long long)trial_seed);
      return r;
    }
  }
  r.detail = fmt("%zu shuffled realizations left the tableau invariant", trials);
  return r;
}

SuiteResult suite_prefix_rank(std::size_t trials, std::uint64_t seed) {
  if (trials == 0) return vacuous("prefix-rank");
  SuiteResult r;
  r.name = "prefix-rank";
  r.trials = trials;
  for (std::size_t i = 0; i < trials; ++i) {
    const std::uint64_t trial_seed = derive_seed(seed, i);
    Rng rng(trial_seed);
    const std::size_t n = 4 + rng.below(21);

    StabilizerTableau tab = StabilizerTableau::computational_basis(n);
    std::vector<std::size_t> all(n);
    for (std::size_t q = 0; q < n; ++q) all[q] = q;
    tab.scramble_random_clifford(all, rng);

    // Random ordered partition into contiguous-size groups over a random
    // qubit permutation.
    std::vector<std::size_t> perm = all;
    std::shuffle(perm.begin(), perm.end(), rng.engine());
    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t at = 0; at < n;) {
      const std::size_t take = std::min(n - at, 1 + rng.below(4));
      groups.emplace_back(perm.begin() + at, perm.begin() + at + take);
      at += take;
    }

    const auto profile = tab.entropy_profile(groups);
    CutSpec cut;
    for (std::size_t g = 0; g <= groups.size(); ++g) {
      if (g > 0)
        cut.subsystem.insert(cut.subsystem.end(), groups[g - 1].begin(),
                             groups[g - 1].end());
      const std::size_t direct = tab.entropy_of_cut(cut);
      if (profile[g] != direct) {
        r.failures = 1;
        r.repro_seed = trial_seed;
        r.detail = fmt("trial %zu (seed %llu): prefix %zu sweep %zu bits, "
                       "direct rank %zu bits",
                       i, (unsigned long long)trial_seed, g, profile[g], direct);
        return r;
      }
    }
  }
  r.detail = fmt("%zu profiles match direct per-cut ranks", trials);
  return r;
}

SuiteResult suite_outcome_mode(std::size_t trials, std::uint64_t seed) {
  if (trials == 0) return vacuous("outcome-mode");
  SuiteResult r;
  r.name = "outcome-mode";
  r.trials = trials;
  for (std::size_t i = 0; i < trials; ++i) {
    const std::uint64_t trial_seed = derive_seed(seed, i);
    Rng rng(trial_seed);
    ProtocolConfig cfg;
    cfg.d = 1 + rng.below(2);
    cfg.L = 2 + 2 * rng.below(2);
    cfg.p = 0.05 + 0.1 * rng.uniform01();
    cfg.runtime_factor = 2;

    ProtocolConfig forced = cfg;
    forced.outcome_mode = OutcomeMode::forced;
    ProtocolConfig sampled = cfg;
    sampled.outcome_mode = OutcomeMode::sampled;

    const EntropyRecord a = run_realization(forced, trial_seed);
    const EntropyRecord b = run_realization(sampled, trial_seed);
    if (a.times != b.times || a.profiles != b.profiles) {
      r.failures = 1;
      r.repro_seed = trial_seed;
      r.detail = fmt("trial %zu (seed %llu): forced and sampled outcomes give "
                     "different entropy records (d=%zu L=%zu p=%.3f)",
                     i, (unsigned long long)trial_seed, cfg.d, cfg.L, cfg.p);
      return r;
    }
  }
  r.detail = fmt("%zu realizations have outcome-independent profiles", trials);
  return r;
}

std::vector<SuiteResult> run_all_suites(std::size_t max_qubits,
                                        std::size_t trials,
                                        std::uint64_t seed) {
  std::vector<SuiteResult> out;
  out.push_back(suite_oracle_equivalence(max_qubits, trials, derive_seed(seed, 11)));
  out.push_back(suite_layer_commutation(trials, derive_seed(seed, 12)));
  out.push_back(suite_prefix_rank(trials, derive_seed(seed, 13)));
  out.push_back(suite_outcome_mode(std::min<std::size_t>(trials, 25),
                                   derive_seed(seed, 14)));
  return out;
}

}  // namespace rough
