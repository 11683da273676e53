#include "roughsim/tableau.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace rough {

namespace {

// Spread the low 32 bits of v to the even bit positions of a 64-bit word.
std::uint64_t spread_bits(std::uint64_t v) {
  v &= 0xffffffffULL;
  v = (v | (v << 16)) & 0x0000ffff0000ffffULL;
  v = (v | (v << 8)) & 0x00ff00ff00ff00ffULL;
  v = (v | (v << 4)) & 0x0f0f0f0f0f0f0f0fULL;
  v = (v | (v << 2)) & 0x3333333333333333ULL;
  v = (v | (v << 1)) & 0x5555555555555555ULL;
  return v;
}

using WordVec = std::vector<std::uint64_t>;

bool get_bit(const WordVec& v, std::size_t i) {
  return (v[i / 64] >> (i % 64)) & 1u;
}
void flip_bit(WordVec& v, std::size_t i) { v[i / 64] ^= std::uint64_t(1) << (i % 64); }
void clear_bit(WordVec& v, std::size_t i) { v[i / 64] &= ~(std::uint64_t(1) << (i % 64)); }
void xor_into(WordVec& dst, const WordVec& src) {
  for (std::size_t w = 0; w < dst.size(); ++w) dst[w] ^= src[w];
}
bool parity_and(const WordVec& a, const WordVec& b) {
  std::uint64_t p = 0;
  for (std::size_t w = 0; w < a.size(); ++w)
    p ^= std::uint64_t(std::popcount(a[w] & b[w]));
  return p & 1u;
}
bool all_zero(const WordVec& v) {
  for (auto w : v)
    if (w) return false;
  return true;
}

// Reduced row echelon basis over GF(2) with one pivot per row; rows carry an
// optional transform word-vector so linear systems in the original rows can be
// solved after reduction.
struct Rref {
  std::size_t width_words;
  std::size_t transform_words;
  std::vector<WordVec> rows;
  std::vector<WordVec> transform;
  std::vector<std::size_t> pivots;

  Rref(std::size_t width_bits, std::size_t transform_bits)
      : width_words((width_bits + 63) / 64),
        transform_words((transform_bits + 63) / 64) {}

  // Reduces v (and t alongside) by the stored rows.
  void reduce(WordVec& v, WordVec* t) const {
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (get_bit(v, pivots[j])) {
        xor_into(v, rows[j]);
        if (t) xor_into(*t, transform[j]);
      }
    }
  }

  bool contains(WordVec v) const {
    reduce(v, nullptr);
    return all_zero(v);
  }

  // Inserts v; returns false if v was dependent. t_index tags the transform
  // unit vector for this row.
  bool insert(WordVec v, std::size_t t_index) {
    WordVec t(transform_words, 0);
    if (transform_words) flip_bit(t, t_index);
    reduce(v, transform_words ? &t : nullptr);
    std::size_t pivot = width_words * 64;
    for (std::size_t w = 0; w < width_words; ++w) {
      if (v[w]) {
        pivot = w * 64 + std::size_t(std::countr_zero(v[w]));
        break;
      }
    }
    if (pivot == width_words * 64) return false;
    // Back-eliminate the new pivot from existing rows.
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (get_bit(rows[j], pivot)) {
        xor_into(rows[j], v);
        if (transform_words) xor_into(transform[j], t);
      }
    }
    rows.push_back(std::move(v));
    if (transform_words) transform.push_back(std::move(t));
    pivots.push_back(pivot);
    return true;
  }

  // Uniform sample from the nullspace of the stored rows.
  WordVec sample_nullspace(std::size_t width_bits, Rng& rng) const {
    WordVec v(width_words, 0);
    for (std::size_t w = 0; w < width_words; ++w) v[w] = rng.word();
    if (width_bits % 64) v.back() &= (std::uint64_t(1) << (width_bits % 64)) - 1;
    for (auto p : pivots) clear_bit(v, p);
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (parity_and(rows[j], v)) flip_bit(v, pivots[j]);
    }
    return v;
  }

  // Solution of (original rows) * d = e_i, with free coordinates zero.
  WordVec solve_unit(std::size_t i) const {
    WordVec d(width_words, 0);
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (get_bit(transform[j], i)) flip_bit(d, pivots[j]);
    }
    return d;
  }
};

// Swap the x half (bits [0,m)) and z half (bits [m,2m)) of a local
// symplectic vector.
WordVec symplectic_dual(const WordVec& v, std::size_t m) {
  WordVec out(v.size(), 0);
  for (std::size_t i = 0; i < m; ++i) {
    if (get_bit(v, i)) flip_bit(out, m + i);
    if (get_bit(v, m + i)) flip_bit(out, i);
  }
  return out;
}

}  // namespace

StabilizerTableau StabilizerTableau::computational_basis(std::size_t n) {
  if (n == 0)
    throw std::invalid_argument("StabilizerTableau: n must be >= 1");
  StabilizerTableau t;
  t.n_ = n;
  t.stabs_.reserve(n);
  t.destabs_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    t.stabs_.push_back(PauliOperator::single_z(n, i));
    t.destabs_.push_back(PauliOperator::single_x(n, i));
  }
  return t;
}

void StabilizerTableau::apply_hadamard(std::size_t q) {
  if (q >= n_) throw std::out_of_range("apply_hadamard: qubit out of range");
  const std::size_t w = q / 64;
  const std::uint64_t m = std::uint64_t(1) << (q % 64);
  auto conj = [&](PauliOperator& row) {
    std::uint64_t& x = row.x_words()[w];
    std::uint64_t& z = row.z_words()[w];
    const bool xb = x & m, zb = z & m;
    if (xb && zb) row.set_negative(!row.negative());  // Y -> -Y
    if (xb != zb) {
      x ^= m;
      z ^= m;
    }
  };
  for (auto& r : stabs_) conj(r);
  for (auto& r : destabs_) conj(r);
}

void StabilizerTableau::apply_cnot(std::size_t control, std::size_t target) {
  if (control >= n_ || target >= n_)
    throw std::out_of_range("apply_cnot: qubit out of range");
  if (control == target)
    throw std::invalid_argument("apply_cnot: control == target");
  const std::size_t wc = control / 64, wt = target / 64;
  const std::uint64_t mc = std::uint64_t(1) << (control % 64);
  const std::uint64_t mt = std::uint64_t(1) << (target % 64);
  auto conj = [&](PauliOperator& row) {
    auto& X = row.x_words();
    auto& Z = row.z_words();
    const bool xc = X[wc] & mc, zc = Z[wc] & mc;
    const bool xt = X[wt] & mt, zt = Z[wt] & mt;
    if (xc && zt && (xt == zc)) row.set_negative(!row.negative());
    if (xc) X[wt] ^= mt;
    if (zt) Z[wc] ^= mc;
  };
  for (auto& r : stabs_) conj(r);
  for (auto& r : destabs_) conj(r);
}

int StabilizerTableau::measure_pauli(const PauliOperator& op,
                                     std::optional<int> forced_outcome,
                                     Rng* outcome_rng) {
  if (op.num_qubits() != n_)
    throw std::invalid_argument("measure_pauli: operator size mismatch");

  std::size_t pivot = n_;
  for (std::size_t i = 0; i < n_; ++i) {
    if (!stabs_[i].commutes_with(op)) {
      pivot = i;
      break;
    }
  }

  if (pivot == n_) {
    // Determined outcome: op = +/- product of the stabilizers whose
    // destabilizer partner anticommutes with it.
    PauliOperator accum(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      if (!destabs_[i].commutes_with(op)) accum.multiply_by(stabs_[i]);
    }
    if (accum.x_words() != op.x_words() || accum.z_words() != op.z_words())
      throw std::logic_error("measure_pauli: commuting operator outside group");
    return accum.negative() == op.negative() ? +1 : -1;
  }

  int outcome;
  if (forced_outcome) {
    if (*forced_outcome != 1 && *forced_outcome != -1)
      throw std::invalid_argument("measure_pauli: forced outcome must be +/-1");
    outcome = *forced_outcome;
  } else {
    if (!outcome_rng)
      throw std::invalid_argument("measure_pauli: random outcome requires an rng");
    outcome = outcome_rng->bit() ? -1 : +1;
  }

  const PauliOperator pivot_row = stabs_[pivot];
  for (std::size_t i = pivot + 1; i < n_; ++i) {
    if (!stabs_[i].commutes_with(op)) stabs_[i].multiply_by(pivot_row);
  }
  for (std::size_t i = 0; i < n_; ++i) {
    if (i != pivot && !destabs_[i].commutes_with(op))
      destabs_[i].multiply_by(pivot_row);
  }
  destabs_[pivot] = pivot_row;
  stabs_[pivot] = op;
  if (outcome < 0) stabs_[pivot].set_negative(!op.negative());
  return outcome;
}

void StabilizerTableau::scramble_random_clifford(
    const std::vector<std::size_t>& qubits, Rng& rng) {
  if (qubits.empty())
    throw std::invalid_argument("scramble_random_clifford: empty qubit set");
  std::vector<bool> inside(n_, false);
  for (auto q : qubits) {
    if (q >= n_) throw std::out_of_range("scramble_random_clifford: qubit out of range");
    if (inside[q]) throw std::invalid_argument("scramble_random_clifford: duplicate qubit");
    inside[q] = true;
  }
  const std::size_t m = qubits.size();

  auto classify = [&](const PauliOperator& row) -> int {
    // 1 = fully inside, 0 = fully outside, -1 = straddles.
    bool in = false, out = false;
    for (std::size_t q = 0; q < n_; ++q) {
      if (row.x_bit(q) || row.z_bit(q)) (inside[q] ? in : out) = true;
    }
    if (in && out) return -1;
    return in ? 1 : 0;
  };

  std::vector<std::size_t> positions;
  for (std::size_t i = 0; i < n_; ++i) {
    const int cs = classify(stabs_[i]);
    const int cd = classify(destabs_[i]);
    if (cs < 0 || cd < 0 || cs != cd)
      throw std::invalid_argument(
          "scramble_random_clifford: state is entangled across the target set");
    if (cs == 1) positions.push_back(i);
  }
  if (positions.size() != m)
    throw std::invalid_argument(
        "scramble_random_clifford: target set is not in a pure product state");

  // Sample a uniformly random stabilizer group on m qubits: each generator is
  // a uniform element of the symplectic complement of the previous ones,
  // rejected if dependent. Every maximal group is produced by the same number
  // of ordered generator sequences, so the group distribution is uniform.
  const std::size_t width = 2 * m;
  Rref span(width, 0);           // chosen generators, for independence tests
  Rref commutant(width, m);      // dual rows, for complement sampling + solves
  std::vector<WordVec> gens;
  std::vector<bool> gen_negs;
  gens.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    WordVec v;
    do {
      v = commutant.sample_nullspace(width, rng);
    } while (all_zero(v) || span.contains(v));
    span.insert(v, 0);
    commutant.insert(symplectic_dual(v, m), k);
    gens.push_back(std::move(v));
    gen_negs.push_back(rng.bit());
  }

  auto embed = [&](const WordVec& local, bool neg) {
    PauliOperator p(n_);
    for (std::size_t j = 0; j < m; ++j) {
      if (get_bit(local, j)) p.set_x(qubits[j], true);
      if (get_bit(local, m + j)) p.set_z(qubits[j], true);
    }
    p.set_negative(neg);
    return p;
  };

  for (std::size_t k = 0; k < m; ++k) {
    stabs_[positions[k]] = embed(gens[k], gen_negs[k]);
    destabs_[positions[k]] = embed(commutant.solve_unit(k), false);
  }
}

std::size_t StabilizerTableau::entropy_of_cut(const CutSpec& cut) const {
  std::vector<bool> seen(n_, false);
  for (auto q : cut.subsystem) {
    if (q >= n_) throw std::out_of_range("entropy_of_cut: qubit out of range");
    if (seen[q]) throw std::invalid_argument("entropy_of_cut: duplicate qubit");
    seen[q] = true;
  }
  const std::size_t a = cut.subsystem.size();
  gf2::BitMatrix m(n_, 2 * a);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < a; ++j) {
      const std::size_t q = cut.subsystem[j];
      if (stabs_[i].x_bit(q)) m.set(i, 2 * j, true);
      if (stabs_[i].z_bit(q)) m.set(i, 2 * j + 1, true);
    }
  }
  return gf2::rank_destructive(m) - a;
}

std::vector<std::size_t> StabilizerTableau::entropy_profile(
    const std::vector<std::vector<std::size_t>>& ordered_groups) const {
  std::vector<bool> seen(n_, false);
  std::size_t total = 0;
  bool identity_order = true;
  for (const auto& g : ordered_groups) {
    if (g.empty())
      throw std::invalid_argument("entropy_profile: empty group");
    for (auto q : g) {
      if (q >= n_ || seen[q])
        throw std::invalid_argument("entropy_profile: groups are not a partition");
      seen[q] = true;
      if (q != total) identity_order = false;
      ++total;
    }
  }
  if (total != n_)
    throw std::invalid_argument("entropy_profile: groups are not a partition");

  // Columns qubit-major (x and z adjacent) in group order, so every spatial
  // cut is a column prefix and one elimination pass serves all cuts.
  gf2::BitMatrix m(n_, 2 * n_);
  if (identity_order) {
    const std::size_t src_words = gf2::words_for(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      const auto& xw = stabs_[i].x_words();
      const auto& zw = stabs_[i].z_words();
      gf2::Word* dst = m.row(i);
      for (std::size_t w = 0; w < src_words; ++w) {
        if (2 * w < m.row_words())
          dst[2 * w] = spread_bits(xw[w]) | (spread_bits(zw[w]) << 1);
        if (2 * w + 1 < m.row_words())
          dst[2 * w + 1] = spread_bits(xw[w] >> 32) | (spread_bits(zw[w] >> 32) << 1);
      }
    }
  } else {
    std::size_t col = 0;
    for (const auto& g : ordered_groups) {
      for (auto q : g) {
        for (std::size_t i = 0; i < n_; ++i) {
          if (stabs_[i].x_bit(q)) m.set(i, col, true);
          if (stabs_[i].z_bit(q)) m.set(i, col + 1, true);
        }
        col += 2;
      }
    }
  }

  std::vector<std::size_t> boundaries;
  std::vector<std::size_t> prefix_sizes;
  boundaries.reserve(ordered_groups.size() + 1);
  std::size_t cum = 0;
  boundaries.push_back(0);
  prefix_sizes.push_back(0);
  for (const auto& g : ordered_groups) {
    cum += g.size();
    boundaries.push_back(2 * cum);
    prefix_sizes.push_back(cum);
  }

  std::vector<std::size_t> out;
  std::vector<std::size_t> ranks;
  {
    gf2::BitMatrix copy = std::move(m);
    ranks = gf2::prefix_ranks(copy, boundaries);
  }
  out.reserve(ranks.size());
  for (std::size_t k = 0; k < ranks.size(); ++k)
    out.push_back(ranks[k] - prefix_sizes[k]);
  return out;
}

std::string StabilizerTableau::dump() const {
  std::string s;
  for (const auto& r : stabs_) {
    s += r.to_string();
    s += '\n';
  }
  s += "----\n";
  for (const auto& r : destabs_) {
    s += r.to_string();
    s += '\n';
  }
  return s;
}

bool StabilizerTableau::check_invariants() const {
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      if (!stabs_[i].commutes_with(stabs_[j])) return false;
    }
    for (std::size_t j = 0; j < n_; ++j) {
      const bool should_commute = (i != j);
      if (destabs_[j].commutes_with(stabs_[i]) != should_commute) return false;
    }
  }
  gf2::BitMatrix m(n_, 2 * n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t q = 0; q < n_; ++q) {
      if (stabs_[i].x_bit(q)) m.set(i, q, true);
      if (stabs_[i].z_bit(q)) m.set(i, n_ + q, true);
    }
  }
  return gf2::rank_destructive(m) == n_;
}

}  // namespace rough
