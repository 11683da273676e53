#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "roughsim/gf2.hpp"

namespace rough {

// An n-qubit Hermitian Pauli: global sign in {+1, -1} times a tensor product
// of {I, X, Y, Z}. Per-qubit encoding: (x, z) bits with (1,1) = Y, i.e. the
// qubit factor is i^{xz} X^x Z^z.
class PauliOperator {
 public:
  PauliOperator() = default;
  explicit PauliOperator(std::size_t n)
      : n_(n), x_(gf2::words_for(n), 0), z_(gf2::words_for(n), 0) {}

  std::size_t num_qubits() const { return n_; }
  bool negative() const { return neg_; }
  void set_negative(bool v) { neg_ = v; }
  int sign() const { return neg_ ? -1 : +1; }

  bool x_bit(std::size_t q) const { return (x_[q / 64] >> (q % 64)) & 1u; }
  bool z_bit(std::size_t q) const { return (z_[q / 64] >> (q % 64)) & 1u; }
  void set_x(std::size_t q, bool v);
  void set_z(std::size_t q, bool v);

  const std::vector<std::uint64_t>& x_words() const { return x_; }
  const std::vector<std::uint64_t>& z_words() const { return z_; }
  std::vector<std::uint64_t>& x_words() { return x_; }
  std::vector<std::uint64_t>& z_words() { return z_; }

  bool is_identity() const;

  bool commutes_with(const PauliOperator& other) const;

  // this <- this * other. Requires that the product is Hermitian with a real
  // sign (always the case when the factors commute); throws otherwise.
  void multiply_by(const PauliOperator& other);

  // Qubits where the operator acts nontrivially.
  std::vector<std::size_t> support() const;

  // Leading sign then one of {I,X,Y,Z} per qubit, e.g. "-XIZY".
  std::string to_string() const;

  bool operator==(const PauliOperator&) const = default;

  // Single-qubit constructors on n qubits.
  static PauliOperator single_x(std::size_t n, std::size_t q);
  static PauliOperator single_z(std::size_t n, std::size_t q);

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> x_;
  std::vector<std::uint64_t> z_;
  bool neg_ = false;
};

}  // namespace rough
