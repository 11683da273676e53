#include "roughsim/statevector.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace rough {

namespace {

constexpr double kTol = 1e-9;

// op|b> = sign * i^{|x&z|} * (-1)^{popcount(z & b)} |b ^ x>
struct PauliAction {
  std::uint64_t x_mask = 0;
  std::uint64_t z_mask = 0;
  std::complex<double> base_phase;

  explicit PauliAction(const PauliOperator& op) {
    for (std::size_t q = 0; q < op.num_qubits(); ++q) {
      if (op.x_bit(q)) x_mask |= std::uint64_t(1) << q;
      if (op.z_bit(q)) z_mask |= std::uint64_t(1) << q;
    }
    static const std::complex<double> ipow[4] = {
        {1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    base_phase = double(op.sign()) * ipow[std::popcount(x_mask & z_mask) % 4];
  }

  std::complex<double> phase(std::uint64_t b) const {
    return (std::popcount(z_mask & b) & 1) ? -base_phase : base_phase;
  }
};

}  // namespace

StateVector::StateVector(std::size_t n) : n_(n) {
  if (n == 0 || n > 24)
    throw std::invalid_argument("StateVector: qubit count out of supported range");
  amp_.assign(std::size_t(1) << n, {0, 0});
  amp_[0] = 1.0;
}

void StateVector::apply_hadamard(std::size_t q) {
  if (q >= n_) throw std::out_of_range("StateVector::apply_hadamard");
  const std::uint64_t m = std::uint64_t(1) << q;
  const double s = 1.0 / std::sqrt(2.0);
  for (std::uint64_t b = 0; b < amp_.size(); ++b) {
    if (b & m) continue;
    const auto a0 = amp_[b], a1 = amp_[b | m];
    amp_[b] = s * (a0 + a1);
    amp_[b | m] = s * (a0 - a1);
  }
}

void StateVector::apply_cnot(std::size_t control, std::size_t target) {
  if (control >= n_ || target >= n_) throw std::out_of_range("StateVector::apply_cnot");
  if (control == target) throw std::invalid_argument("StateVector::apply_cnot");
  const std::uint64_t mc = std::uint64_t(1) << control;
  const std::uint64_t mt = std::uint64_t(1) << target;
  for (std::uint64_t b = 0; b < amp_.size(); ++b) {
    if ((b & mc) && !(b & mt)) std::swap(amp_[b], amp_[b | mt]);
  }
}

double StateVector::expectation(const PauliOperator& op) const {
  if (op.num_qubits() != n_) throw std::invalid_argument("StateVector::expectation");
  PauliAction act(op);
  std::complex<double> e = 0;
  for (std::uint64_t b = 0; b < amp_.size(); ++b) {
    e += std::conj(amp_[b ^ act.x_mask]) * act.phase(b) * amp_[b];
  }
  return e.real();
}

int StateVector::measure_pauli(const PauliOperator& op,
                               std::optional<int> forced_outcome,
                               Rng* outcome_rng) {
  const double e = expectation(op);
  if (e > 1.0 - kTol) return +1;
  if (e < -1.0 + kTol) return -1;

  int outcome;
  if (forced_outcome) {
    outcome = *forced_outcome;
  } else {
    if (!outcome_rng)
      throw std::invalid_argument("StateVector::measure_pauli: rng required");
    outcome = (outcome_rng->uniform01() < (1.0 + e) / 2.0) ? +1 : -1;
  }

  PauliAction act(op);
  std::vector<std::complex<double>> next(amp_.size());
  for (std::uint64_t b = 0; b < amp_.size(); ++b) {
    next[b] = 0.5 * (amp_[b] + double(outcome) * act.phase(b ^ act.x_mask) *
                                   amp_[b ^ act.x_mask]);
  }
  double norm2 = 0;
  for (const auto& a : next) norm2 += std::norm(a);
  if (norm2 < kTol)
    throw std::logic_error("StateVector::measure_pauli: zero-probability outcome");
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& a : next) a *= inv;
  amp_ = std::move(next);
  return outcome;
}

double StateVector::entropy_of_cut(const CutSpec& cut) const {
  std::vector<bool> in(n_, false);
  for (auto q : cut.subsystem) {
    if (q >= n_) throw std::out_of_range("StateVector::entropy_of_cut");
    in[q] = true;
  }
  std::vector<std::size_t> a_bits, b_bits;
  for (std::size_t q = 0; q < n_; ++q) (in[q] ? a_bits : b_bits).push_back(q);

  const std::size_t ra = std::size_t(1) << a_bits.size();
  const std::size_t rb = std::size_t(1) << b_bits.size();
  Eigen::MatrixXcd m(ra, rb);
  for (std::uint64_t b = 0; b < amp_.size(); ++b) {
    std::size_t ia = 0, ib = 0;
    for (std::size_t k = 0; k < a_bits.size(); ++k)
      if (b & (std::uint64_t(1) << a_bits[k])) ia |= std::size_t(1) << k;
    for (std::size_t k = 0; k < b_bits.size(); ++k)
      if (b & (std::uint64_t(1) << b_bits[k])) ib |= std::size_t(1) << k;
    m(ia, ib) = amp_[b];
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  double s = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i) {
    const double p = svd.singularValues()[i] * svd.singularValues()[i];
    if (p > 1e-12) s -= p * std::log2(p);
  }
  return s;
}

}  // namespace rough
