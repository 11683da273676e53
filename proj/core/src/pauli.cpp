#include "roughsim/pauli.hpp"

#include <bit>
#include <stdexcept>

namespace rough {

void PauliOperator::set_x(std::size_t q, bool v) {
  if (q >= n_) throw std::out_of_range("PauliOperator::set_x: qubit out of range");
  std::uint64_t m = std::uint64_t(1) << (q % 64);
  if (v)
    x_[q / 64] |= m;
  else
    x_[q / 64] &= ~m;
}

void PauliOperator::set_z(std::size_t q, bool v) {
  if (q >= n_) throw std::out_of_range("PauliOperator::set_z: qubit out of range");
  std::uint64_t m = std::uint64_t(1) << (q % 64);
  if (v)
    z_[q / 64] |= m;
  else
    z_[q / 64] &= ~m;
}

bool PauliOperator::is_identity() const {
  for (auto w : x_)
    if (w) return false;
  for (auto w : z_)
    if (w) return false;
  return true;
}

bool PauliOperator::commutes_with(const PauliOperator& other) const {
  if (n_ != other.n_)
    throw std::invalid_argument("PauliOperator::commutes_with: size mismatch");
  std::uint64_t parity = 0;
  for (std::size_t w = 0; w < x_.size(); ++w) {
    parity ^= std::uint64_t(std::popcount(x_[w] & other.z_[w]));
    parity ^= std::uint64_t(std::popcount(z_[w] & other.x_[w]));
  }
  return (parity & 1u) == 0;
}

void PauliOperator::multiply_by(const PauliOperator& other) {
  if (n_ != other.n_)
    throw std::invalid_argument("PauliOperator::multiply_by: size mismatch");
  // Phase of i accumulated per qubit:
  //   C(x1,z1) C(x2,z2) = i^phi C(x1^x2, z1^z2),
  //   phi = x1 z1 + x2 z2 + 3 (x1^x2)(z1^z2) + 2 z1 x2   (mod 4).
  std::uint64_t phase = 0;
  for (std::size_t w = 0; w < x_.size(); ++w) {
    const std::uint64_t x1 = x_[w], z1 = z_[w];
    const std::uint64_t x2 = other.x_[w], z2 = other.z_[w];
    phase += std::uint64_t(std::popcount(x1 & z1));
    phase += std::uint64_t(std::popcount(x2 & z2));
    phase += 3u * std::uint64_t(std::popcount((x1 ^ x2) & (z1 ^ z2)));
    phase += 2u * std::uint64_t(std::popcount(z1 & x2));
    x_[w] = x1 ^ x2;
    z_[w] = z1 ^ z2;
  }
  phase += 2u * (std::uint64_t(neg_) + std::uint64_t(other.neg_));
  phase &= 3u;
  if (phase & 1u)
    throw std::invalid_argument("PauliOperator::multiply_by: imaginary phase");
  neg_ = (phase == 2u);
}

std::vector<std::size_t> PauliOperator::support() const {
  std::vector<std::size_t> out;
  for (std::size_t q = 0; q < n_; ++q)
    if (x_bit(q) || z_bit(q)) out.push_back(q);
  return out;
}

std::string PauliOperator::to_string() const {
  std::string s;
  s.reserve(n_ + 1);
  s.push_back(neg_ ? '-' : '+');
  for (std::size_t q = 0; q < n_; ++q) {
    bool x = x_bit(q), z = z_bit(q);
    s.push_back(x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I'));
  }
  return s;
}

PauliOperator PauliOperator::single_x(std::size_t n, std::size_t q) {
  PauliOperator p(n);
  p.set_x(q, true);
  return p;
}

PauliOperator PauliOperator::single_z(std::size_t n, std::size_t q) {
  PauliOperator p(n);
  p.set_z(q, true);
  return p;
}

}  // namespace rough
