#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rough {

// Result of one validation suite. A suite with zero trials passes vacuously
// and says so in `detail`. On the first mismatch the suite stops, shrinks the
// failing circuit to its shortest failing prefix, and records the trial seed
// that reproduces it.
struct SuiteResult {
  std::string name;
  std::size_t trials = 0;
  std::size_t failures = 0;
  std::uint64_t repro_seed = 0;  // seed of the first failing trial
  std::string detail;

  bool passed() const { return failures == 0; }
};

// Test hook: deliberately corrupt the tableau side of the oracle comparison
// so the suite's failure path can be exercised.
enum class FaultInjection {
  none,
  flip_measurement_sign,  // tableau measures with the opposite forced outcome
};

// Random H/CNOT/measurement circuits on <= max_qubits qubits, tableau vs
// dense state vector: outcomes, measured-operator expectations, and the
// entropy of every prefix cut and a handful of random cuts must agree.
SuiteResult suite_oracle_equivalence(std::size_t max_qubits, std::size_t trials,
                                     std::uint64_t seed,
                                     FaultInjection fault = FaultInjection::none);

// p = 0 realizations on random small lattices: shuffling the two-qubit events
// within each layer must leave the final tableau bit-identical.
SuiteResult suite_layer_commutation(std::size_t trials, std::uint64_t seed);

// Random stabilizer states: the one-pass entropy profile must match
// independent per-cut rank evaluations at every prefix.
SuiteResult suite_prefix_rank(std::size_t trials, std::uint64_t seed);

// Forced vs sampled measurement outcomes on the same realization: the entropy
// records must be identical.
SuiteResult suite_outcome_mode(std::size_t trials, std::uint64_t seed);

std::vector<SuiteResult> run_all_suites(std::size_t max_qubits,
                                        std::size_t trials, std::uint64_t seed);

}  // namespace rough
