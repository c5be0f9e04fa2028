#include "skh/f2.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace skh::f2 {

namespace {

void xor_into(std::span<Word> dst, std::span<const Word> src) {
  for (std::size_t k = 0; k < dst.size(); ++k) dst[k] ^= src[k];
}

void xor_grow(std::vector<Word>& dst, const std::vector<Word>& src) {
  if (dst.size() < src.size()) dst.resize(src.size(), 0);
  for (std::size_t k = 0; k < src.size(); ++k) dst[k] ^= src[k];
}

}  // namespace

BitVector::BitVector(std::size_t size, std::span<const Word> words) : size_(size), words_(words.begin(), words.end()) {
  words_.resize(words_for(size), 0);
}

void BitVector::set(std::size_t i, bool v) {
  const Word mask = Word{1} << (i % kWordBits);
  if (v) {
    words_[i / kWordBits] |= mask;
  } else {
    words_[i / kWordBits] &= ~mask;
  }
}

bool BitVector::any() const {
  return std::any_of(words_.begin(), words_.end(), [](Word w) { return w != 0; });
}

std::size_t BitVector::count() const {
  std::size_t n = 0;
  for (Word w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::size_t BitVector::lowest() const {
  for (std::size_t k = 0; k < words_.size(); ++k) {
    if (words_[k] != 0) return k * kWordBits + static_cast<std::size_t>(std::countr_zero(words_[k]));
  }
  return size_;
}

BitVector& BitVector::operator^=(const BitVector& o) {
  if (o.size_ != size_) throw std::invalid_argument("BitVector size mismatch");
  xor_into(words_, o.words_);
  return *this;
}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

void BitMatrix::set(std::size_t r, std::size_t c, bool v) {
  Word& w = data_[r * stride_ + c / kWordBits];
  const Word mask = Word{1} << (c % kWordBits);
  w = v ? (w | mask) : (w & ~mask);
}

BitVector BitMatrix::column_vector(std::size_t c) const {
  BitVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    if (get(r, c)) v.set(r);
  }
  return v;
}

bool BitMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Word w) { return w == 0; });
}

std::size_t BitMatrix::count() const {
  std::size_t n = 0;
  for (Word w : data_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

BitMatrix BitMatrix::transpose() const {
  BitMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    auto words = row(r);
    for (std::size_t k = 0; k < words.size(); ++k) {
      for (Word w = words[k]; w != 0; w &= w - 1) {
        t.set(k * kWordBits + static_cast<std::size_t>(std::countr_zero(w)), r);
      }
    }
  }
  return t;
}

BitVector BitMatrix::apply(const BitVector& v) const {
  if (v.size() != cols_) throw std::invalid_argument("BitMatrix::apply shape mismatch");
  BitVector out(rows_);
  auto vw = v.words();
  for (std::size_t r = 0; r < rows_; ++r) {
    auto words = row(r);
    int parity = 0;
    for (std::size_t k = 0; k < stride_; ++k) parity ^= std::popcount(words[k] & vw[k]) & 1;
    if (parity) out.set(r);
  }
  return out;
}

BitMatrix& BitMatrix::operator+=(const BitMatrix& o) {
  if (o.rows_ != rows_ || o.cols_ != cols_) throw std::invalid_argument("BitMatrix sum shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] ^= o.data_[k];
  return *this;
}

BitMatrix operator*(const BitMatrix& a, const BitMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("BitMatrix product shape mismatch");
  BitMatrix out(a.rows_, b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r) {
    auto dst = out.row(r);
    auto words = a.row(r);
    for (std::size_t k = 0; k < words.size(); ++k) {
      for (Word w = words[k]; w != 0; w &= w - 1) {
        xor_into(dst, b.row(k * kWordBits + static_cast<std::size_t>(std::countr_zero(w))));
      }
    }
  }
  return out;
}

std::size_t rank(BitMatrix m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    const std::size_t word = c / kWordBits;
    const Word mask = Word{1} << (c % kWordBits);
    std::size_t pivot = r;
    while (pivot < rows && (m.row(pivot)[word] & mask) == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != r) std::swap_ranges(m.row(pivot).begin(), m.row(pivot).end(), m.row(r).begin());
    // Columns before c are already cleared below r, so only words from
    // `word` onward can change.
    auto src = m.row(r).subspan(word);
    for (std::size_t k = r + 1; k < rows; ++k) {
      auto dst = m.row(k).subspan(word);
      if (dst[0] & mask) xor_into(dst, src);
    }
    ++r;
  }
  return r;
}

std::vector<BitVector> kernel_basis(const BitMatrix& input) {
  BitMatrix m = input;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    const std::size_t word = c / kWordBits;
    const Word mask = Word{1} << (c % kWordBits);
    std::size_t pivot = r;
    while (pivot < rows && (m.row(pivot)[word] & mask) == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != r) std::swap_ranges(m.row(pivot).begin(), m.row(pivot).end(), m.row(r).begin());
    for (std::size_t k = 0; k < rows; ++k) {
      if (k != r && (m.row(k)[word] & mask)) xor_into(m.row(k), m.row(r));
    }
    pivot_cols.push_back(c);
    ++r;
  }

  // Reduced row echelon form: each free column f gives e_f + sum of pivot
  // columns whose row has a 1 in column f.
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : pivot_cols) is_pivot[c] = true;
  std::vector<BitVector> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    BitVector v(cols);
    v.set(f);
    for (std::size_t k = 0; k < pivot_cols.size(); ++k) {
      if (m.get(k, f)) v.set(pivot_cols[k]);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

bool EchelonSpan::insert(const BitVector& v, bool tracked) {
  if (v.size() != ambient_) throw std::invalid_argument("EchelonSpan vector size mismatch");
  if (pivot_row_.empty()) pivot_row_.assign(ambient_, -1);
  Row row{v, {}};
  if (tracked) {
    const std::size_t id = generators_;
    row.combination.assign(words_for(id + 1), 0);
    row.combination[id / kWordBits] |= Word{1} << (id % kWordBits);
  }
  for (std::size_t p = row.vector.lowest(); p < ambient_; p = row.vector.lowest()) {
    const std::int64_t existing = pivot_row_[p];
    if (existing < 0) {
      pivot_row_[p] = static_cast<std::int64_t>(rows_.size());
      rows_.push_back(std::move(row));
      if (tracked) ++generators_;
      return true;
    }
    const Row& other = rows_[static_cast<std::size_t>(existing)];
    row.vector ^= other.vector;
    xor_grow(row.combination, other.combination);
  }
  return false;
}

EchelonSpan::Reduction EchelonSpan::reduce(BitVector v) const {
  if (v.size() != ambient_) throw std::invalid_argument("EchelonSpan vector size mismatch");
  std::vector<Word> combination;
  for (std::size_t p = v.lowest(); p < ambient_; p = v.lowest()) {
    const std::int64_t existing = pivot_row_.empty() ? -1 : pivot_row_[p];
    if (existing < 0) return Reduction{false, BitVector(generators_)};
    const Row& other = rows_[static_cast<std::size_t>(existing)];
    v ^= other.vector;
    xor_grow(combination, other.combination);
  }
  combination.resize(words_for(generators_), 0);
  return Reduction{true, BitVector(generators_, std::span<const Word>(combination))};
}

}  // namespace skh::f2
