#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "roughsim/pauli.hpp"
#include "roughsim/rng.hpp"

namespace rough {

// Bipartition: the subsystem is an explicit set of qubit indices.
struct CutSpec {
  std::vector<std::size_t> subsystem;
};

// Aaronson-Gottesman style tableau: n stabilizer generators plus n
// destabilizers. Destabilizer i anticommutes with stabilizer i and commutes
// with every other stabilizer; entropies use the stabilizer rows only.
class StabilizerTableau {
 public:
  // |0...0> on n qubits: stabilizers {Z_i}, destabilizers {X_i}.
  static StabilizerTableau computational_basis(std::size_t n);

  std::size_t num_qubits() const { return n_; }

  const PauliOperator& stabilizer(std::size_t i) const { return stabs_[i]; }
  const PauliOperator& destabilizer(std::size_t i) const { return destabs_[i]; }

  void apply_hadamard(std::size_t q);
  void apply_cnot(std::size_t control, std::size_t target);

  // Projective measurement of a Hermitian Pauli product. If the operator
  // commutes with every stabilizer the outcome is determined and the state is
  // unchanged (forced_outcome is ignored). Otherwise the outcome is
  // forced_outcome when given, else drawn from rng (+1/-1 equiprobable).
  int measure_pauli(const PauliOperator& op, std::optional<int> forced_outcome,
                    Rng* outcome_rng = nullptr);

  // Replaces the marginal state on `qubits` with a uniformly random pure
  // stabilizer state; the rest of the system is untouched. Requires the
  // current state to be a product across the boundary of the set (every
  // generator supported entirely inside or outside), which holds for the
  // freshly prepared states this is used on.
  void scramble_random_clifford(const std::vector<std::size_t>& qubits, Rng& rng);

  // S_A = rank_GF2(stabilizers restricted to A) - |A|, in bits.
  std::size_t entropy_of_cut(const CutSpec& cut) const;

  // Entropies of all prefixes of the group list (including the empty prefix),
  // computed in one elimination pass. Groups must partition the qubits.
  std::vector<std::size_t> entropy_profile(
      const std::vector<std::vector<std::size_t>>& ordered_groups) const;

  // Text form used by golden tests: one signed Pauli string per generator,
  // stabilizers then destabilizers.
  std::string dump() const;

  bool operator==(const StabilizerTableau&) const = default;

  // Consistency checks (O(n^3)); used by tests and the validation suites.
  bool check_invariants() const;

 private:
  StabilizerTableau() = default;

  std::size_t n_ = 0;
  std::vector<PauliOperator> stabs_;
  std::vector<PauliOperator> destabs_;
};

}  // namespace rough
