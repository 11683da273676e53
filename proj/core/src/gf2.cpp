#include "roughsim/gf2.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace rough::gf2 {

void BitMatrix::row_xor_in_place(std::size_t dst, std::size_t src) {
  if (dst >= rows_ || src >= rows_)
    throw std::out_of_range("BitMatrix::row_xor_in_place: row index out of range");
  if (dst == src)
    throw std::invalid_argument("BitMatrix::row_xor_in_place: dst == src");
  Word* d = row(dst);
  const Word* s = row(src);
  for (std::size_t w = 0; w < row_words_; ++w) d[w] ^= s[w];
}

void BitMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a >= rows_ || b >= rows_)
    throw std::out_of_range("BitMatrix::swap_rows: row index out of range");
  if (a == b) return;
  std::swap_ranges(row(a), row(a) + row_words_, row(b));
}

namespace {

// Column-ordered elimination. Invariant: every still-active row is zero in
// all columns left of the current one, so XORs may start at the current word.
std::size_t eliminate(BitMatrix& m, const std::vector<std::size_t>* boundaries,
                      std::vector<std::size_t>* out) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  const std::size_t row_words = m.row_words();

  std::vector<std::size_t> active(rows);
  for (std::size_t r = 0; r < rows; ++r) active[r] = r;

  std::size_t rank = 0;
  std::size_t next_boundary = 0;
  for (std::size_t c = 0; c < cols; ++c) {
    if (boundaries) {
      while (next_boundary < boundaries->size() &&
             (*boundaries)[next_boundary] == c) {
        out->push_back(rank);
        ++next_boundary;
      }
    }
    const std::size_t cw = c / kWordBits;
    const Word cmask = Word(1) << (c % kWordBits);

    std::size_t pivot_pos = active.size();
    for (std::size_t i = 0; i < active.size(); ++i) {
      if (m.row(active[i])[cw] & cmask) {
        pivot_pos = i;
        break;
      }
    }
    if (pivot_pos == active.size()) continue;

    const Word* p = m.row(active[pivot_pos]);
    for (std::size_t i = pivot_pos + 1; i < active.size(); ++i) {
      Word* r = m.row(active[i]);
      if (r[cw] & cmask) {
        for (std::size_t w = cw; w < row_words; ++w) r[w] ^= p[w];
      }
    }
    active.erase(active.begin() + pivot_pos);
    ++rank;
    if (active.empty()) break;
  }
  if (boundaries) {
    while (next_boundary < boundaries->size()) {
      out->push_back(rank);
      ++next_boundary;
    }
  }
  return rank;
}

}  // namespace

std::size_t rank_destructive(BitMatrix& m) { return eliminate(m, nullptr, nullptr); }

std::size_t rank(const BitMatrix& m) {
  BitMatrix copy = m;
  return rank_destructive(copy);
}

std::vector<std::size_t> prefix_ranks(const BitMatrix& m,
                                      const std::vector<std::size_t>& boundaries) {
  for (std::size_t i = 0; i < boundaries.size(); ++i) {
    if (boundaries[i] > m.cols())
      throw std::out_of_range("prefix_ranks: boundary exceeds cols");
    if (i > 0 && boundaries[i] <= boundaries[i - 1])
      throw std::invalid_argument("prefix_ranks: boundaries not strictly increasing");
  }
  // The elimination above records the rank just before processing column b,
  // i.e. the rank of the first b columns: ranks are monotone and a pivot in
  // column >= b never changes the rank of the prefix.
  BitMatrix copy = m;
  std::vector<std::size_t> out;
  out.reserve(boundaries.size());
  eliminate(copy, &boundaries, &out);
  return out;
}

}  // namespace rough::gf2
