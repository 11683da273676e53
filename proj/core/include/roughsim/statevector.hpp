#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "roughsim/pauli.hpp"
#include "roughsim/rng.hpp"
#include "roughsim/tableau.hpp"

namespace rough {

// Brute-force dense simulator for small systems. Used only as an oracle to
// cross-check the tableau engine; deliberately shares no code with it.
class StateVector {
 public:
  explicit StateVector(std::size_t n);

  std::size_t num_qubits() const { return n_; }

  void apply_hadamard(std::size_t q);
  void apply_cnot(std::size_t control, std::size_t target);

  // Real expectation value of a Hermitian Pauli.
  double expectation(const PauliOperator& op) const;

  // Projective measurement; deterministic outcomes are reported as such and
  // forced_outcome is ignored for them.
  int measure_pauli(const PauliOperator& op, std::optional<int> forced_outcome,
                    Rng* outcome_rng = nullptr);

  // Von Neumann entropy of the subsystem, in bits.
  double entropy_of_cut(const CutSpec& cut) const;

  const std::vector<std::complex<double>>& amplitudes() const { return amp_; }

 private:
  std::size_t n_;
  std::vector<std::complex<double>> amp_;
};

}  // namespace rough
