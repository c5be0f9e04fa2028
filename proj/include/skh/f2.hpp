#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

// Bit-packed linear algebra over the two-element field.
namespace skh::f2 {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

constexpr std::size_t words_for(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t size) : size_(size), words_(words_for(size), 0) {}
  BitVector(std::size_t size, std::span<const Word> words);

  std::size_t size() const { return size_; }
  bool get(std::size_t i) const { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
  void set(std::size_t i, bool v = true);
  void flip(std::size_t i) { words_[i / kWordBits] ^= Word{1} << (i % kWordBits); }

  bool any() const;
  std::size_t count() const;
  /// Index of the lowest set bit, or size() if none.
  std::size_t lowest() const;

  std::span<const Word> words() const { return words_; }
  std::span<Word> words() { return words_; }

  BitVector& operator^=(const BitVector& o);
  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<Word> words_;
};

/// Dense matrix with bit-packed rows.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), stride_(words_for(cols)), data_(rows * stride_, 0) {}

  static BitMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool get(std::size_t r, std::size_t c) const { return (data_[r * stride_ + c / kWordBits] >> (c % kWordBits)) & 1U; }
  void set(std::size_t r, std::size_t c, bool v = true);
  void flip(std::size_t r, std::size_t c) { data_[r * stride_ + c / kWordBits] ^= Word{1} << (c % kWordBits); }

  std::span<const Word> row(std::size_t r) const { return {data_.data() + r * stride_, stride_}; }
  std::span<Word> row(std::size_t r) { return {data_.data() + r * stride_, stride_}; }
  BitVector row_vector(std::size_t r) const { return BitVector(cols_, row(r)); }
  BitVector column_vector(std::size_t c) const;

  bool is_zero() const;
  std::size_t count() const;
  BitMatrix transpose() const;

  /// Matrix-vector product; v.size() must equal cols().
  BitVector apply(const BitVector& v) const;

  BitMatrix& operator+=(const BitMatrix& o);
  friend BitMatrix operator+(BitMatrix a, const BitMatrix& b) { return a += b; }
  friend BitMatrix operator*(const BitMatrix& a, const BitMatrix& b);
  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t stride_ = 0;
  std::vector<Word> data_;
};

/// Rank by Gaussian elimination.
std::size_t rank(BitMatrix m);

/// Basis of the null space {v : m v = 0}, one vector per free column, in
/// increasing order of free column.
std::vector<BitVector> kernel_basis(const BitMatrix& m);

/// Incrementally built echelon basis of a subspace. Every stored row
/// remembers which inserted generators it combines, so membership tests
/// also return coordinates.
class EchelonSpan {
 public:
  explicit EchelonSpan(std::size_t ambient) : ambient_(ambient) {}

  std::size_t dimension() const { return rows_.size(); }
  std::size_t generators() const { return generators_; }

  /// Adds v; returns true when v was independent of the current span.
  /// Independent tracked vectors are numbered 0, 1, ... in insertion order
  /// and reduce() reports coordinates over them; dependent ones are dropped.
  bool insert(const BitVector& v, bool tracked);

  struct Reduction {
    bool in_span = false;
    BitVector coordinates;  // over the tracked generators
  };
  Reduction reduce(BitVector v) const;

 private:
  struct Row {
    BitVector vector;
    std::vector<Word> combination;  // bitset over tracked generator ids
  };

  std::size_t ambient_;
  std::size_t generators_ = 0;
  std::vector<Row> rows_;
  std::vector<std::int64_t> pivot_row_;  // by column, -1 if free
};

}  // namespace skh::f2
