#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace rough::gf2 {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

inline std::size_t words_for(std::size_t bits) {
  return (bits + kWordBits - 1) / kWordBits;
}

// Dense GF(2) matrix, row-major, 64 columns per word. Trailing bits beyond
// `cols` in the last word of each row are kept zero.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), row_words_(words_for(cols)),
        data_(rows * row_words_, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t row_words() const { return row_words_; }

  Word* row(std::size_t r) { return data_.data() + r * row_words_; }
  const Word* row(std::size_t r) const { return data_.data() + r * row_words_; }

  bool get(std::size_t r, std::size_t c) const {
    return (row(r)[c / kWordBits] >> (c % kWordBits)) & 1u;
  }
  void set(std::size_t r, std::size_t c, bool v) {
    Word mask = Word(1) << (c % kWordBits);
    if (v)
      row(r)[c / kWordBits] |= mask;
    else
      row(r)[c / kWordBits] &= ~mask;
  }

  // dst ^= src, word-wise. Requires dst != src.
  void row_xor_in_place(std::size_t dst, std::size_t src);

  void swap_rows(std::size_t a, std::size_t b);

  bool operator==(const BitMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t row_words_ = 0;
  std::vector<Word> data_;
};

// GF(2) rank by Gaussian elimination; the input is copied.
std::size_t rank(const BitMatrix& m);

// In-place variant; leaves m in (unspecified) eliminated form.
std::size_t rank_destructive(BitMatrix& m);

// Ranks of the column-prefix submatrices m[:, :b] for each boundary b, in a
// single left-to-right elimination pass. Boundaries must be strictly
// increasing and each <= cols.
std::vector<std::size_t> prefix_ranks(const BitMatrix& m,
                                      const std::vector<std::size_t>& boundaries);

}  // namespace rough::gf2
