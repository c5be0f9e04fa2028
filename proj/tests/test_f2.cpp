#include <doctest.h>

#include <random>

#include "skh/f2.hpp"

using namespace skh::f2;

namespace {

BitMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, double density) {
  std::bernoulli_distribution bit(density);
  BitMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (bit(rng)) m.set(r, c);
    }
  }
  return m;
}

// Plain elimination on bool rows.
std::size_t naive_rank(const BitMatrix& m) {
  std::vector<std::vector<bool>> a(m.rows(), std::vector<bool>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) a[r][c] = m.get(r, c);
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < a.size(); ++c) {
    std::size_t p = rank;
    while (p < a.size() && !a[p][c]) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r != rank && a[r][c]) {
        for (std::size_t k = 0; k < m.cols(); ++k) a[r][k] = a[r][k] != a[rank][k];
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace

TEST_CASE("vectors") {
  BitVector v(130);
  CHECK_FALSE(v.any());
  CHECK(v.lowest() == 130);
  v.set(129);
  v.set(64);
  CHECK(v.count() == 2);
  CHECK(v.lowest() == 64);
  v.flip(64);
  CHECK(v.lowest() == 129);
  BitVector w(130);
  w.set(129);
  CHECK(v == w);
  v ^= w;
  CHECK_FALSE(v.any());
}

TEST_CASE("rank of simple matrices") {
  CHECK(rank(BitMatrix::identity(3)) == 3);
  CHECK(rank(BitMatrix(4, 5)) == 0);
  CHECK(rank(BitMatrix(0, 0)) == 0);
  BitMatrix m(2, 2);
  m.set(0, 0);
  m.set(0, 1);
  m.set(1, 0);
  m.set(1, 1);
  CHECK(rank(m) == 1);
}

TEST_CASE("rank agrees with naive elimination") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rows = std::uniform_int_distribution<std::size_t>(1, 90)(rng);
    const std::size_t cols = std::uniform_int_distribution<std::size_t>(1, 150)(rng);
    const BitMatrix m = random_matrix(rng, rows, cols, trial % 2 ? 0.05 : 0.5);
    CHECK(rank(m) == naive_rank(m));
    CHECK(rank(m.transpose()) == rank(m));
  }
}

TEST_CASE("products, sums, transpose") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const BitMatrix a = random_matrix(rng, 7, 70, 0.3);
    const BitMatrix b = random_matrix(rng, 70, 9, 0.3);
    const BitMatrix ab = a * b;
    for (std::size_t r = 0; r < 7; ++r) {
      for (std::size_t c = 0; c < 9; ++c) {
        bool v = false;
        for (std::size_t k = 0; k < 70; ++k) v ^= a.get(r, k) && b.get(k, c);
        CHECK(ab.get(r, c) == v);
      }
    }
    CHECK((a * b).transpose() == b.transpose() * a.transpose());
    CHECK((a + a).is_zero());
    CHECK(BitMatrix::identity(7) * a == a);
    for (std::size_t c = 0; c < 9; ++c) CHECK(a.apply(b.column_vector(c)) == ab.column_vector(c));
  }
}

TEST_CASE("kernel basis") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t rows = std::uniform_int_distribution<std::size_t>(1, 40)(rng);
    const std::size_t cols = std::uniform_int_distribution<std::size_t>(1, 100)(rng);
    const BitMatrix m = random_matrix(rng, rows, cols, 0.2);
    const auto kernel = kernel_basis(m);
    // rank-nullity
    CHECK(kernel.size() + rank(m) == cols);
    BitMatrix k(kernel.size(), cols);
    for (std::size_t r = 0; r < kernel.size(); ++r) {
      CHECK_FALSE(m.apply(kernel[r]).any());
      for (std::size_t c = 0; c < cols; ++c) {
        if (kernel[r].get(c)) k.set(r, c);
      }
    }
    CHECK(rank(k) == kernel.size());
  }
  CHECK(kernel_basis(BitMatrix(0, 3)).size() == 3);
}

TEST_CASE("echelon span with coordinates") {
  std::mt19937 rng(9);
  const std::size_t n = 100;
  EchelonSpan span(n);
  std::vector<BitVector> tracked;
  for (int k = 0; k < 20; ++k) {
    BitMatrix row = random_matrix(rng, 1, n, 0.1);
    if (span.insert(row.row_vector(0), false)) continue;
  }
  const std::size_t untracked = span.dimension();
  for (int k = 0; k < 30; ++k) {
    BitVector v = random_matrix(rng, 1, n, 0.1).row_vector(0);
    if (span.insert(v, true)) tracked.push_back(v);
  }
  CHECK(span.generators() == tracked.size());
  CHECK(span.dimension() == untracked + tracked.size());
  // A sum of tracked generators reduces to exactly those coordinates.
  for (int trial = 0; trial < 50; ++trial) {
    BitVector v(n), want(tracked.size());
    for (std::size_t g = 0; g < tracked.size(); ++g) {
      if (std::bernoulli_distribution(0.5)(rng)) {
        v ^= tracked[g];
        want.set(g);
      }
    }
    const auto red = span.reduce(v);
    CHECK(red.in_span);
    BitVector got(tracked.size());
    for (std::size_t g = 0; g < tracked.size(); ++g) {
      if (g < red.coordinates.size() && red.coordinates.get(g)) got.set(g);
    }
    // Untracked contributions may be added freely but do not change coordinates.
    CHECK(got == want);
  }
  CHECK(span.insert(tracked.empty() ? BitVector(n) : tracked[0], true) == false);
  CHECK(span.generators() == tracked.size());
}
