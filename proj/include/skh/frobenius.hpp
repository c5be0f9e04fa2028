#pragma once

#include <cstdint>

// The graded Frobenius algebra A = F2[x]/(x^2) with basis {1, x},
// deg 1 = +1 and deg x = -1. Elements are bit vectors over the basis.
namespace skh::frobenius {

enum class Label : std::uint8_t { One = 0, X = 1 };

constexpr int degree(Label l) { return l == Label::One ? 1 : -1; }

/// Element of A: bit 0 is the coefficient of 1, bit 1 that of x.
class AlgElem {
 public:
  constexpr AlgElem() = default;
  constexpr explicit AlgElem(std::uint8_t bits) : bits_(bits & 0x3U) {}
  constexpr AlgElem(Label l) : bits_(static_cast<std::uint8_t>(1U << static_cast<unsigned>(l))) {}

  static constexpr AlgElem zero() { return AlgElem(); }
  static constexpr AlgElem one() { return AlgElem(Label::One); }
  static constexpr AlgElem x() { return AlgElem(Label::X); }

  constexpr std::uint8_t bits() const { return bits_; }
  constexpr bool has(Label l) const { return (bits_ >> static_cast<unsigned>(l)) & 1U; }
  constexpr bool is_zero() const { return bits_ == 0; }

  constexpr AlgElem operator+(AlgElem o) const { return AlgElem(static_cast<std::uint8_t>(bits_ ^ o.bits_)); }
  constexpr bool operator==(const AlgElem&) const = default;

 private:
  std::uint8_t bits_ = 0;
};

/// Element of A (x) A: bit (2*left + right) is the coefficient of the basis
/// tensor left (x) right, labels encoded as One = 0, X = 1.
class TensorElem {
 public:
  constexpr TensorElem() = default;
  constexpr explicit TensorElem(std::uint8_t bits) : bits_(bits & 0xFU) {}

  static constexpr TensorElem basis(Label left, Label right) {
    return TensorElem(static_cast<std::uint8_t>(1U << (2U * static_cast<unsigned>(left) + static_cast<unsigned>(right))));
  }

  constexpr std::uint8_t bits() const { return bits_; }
  constexpr bool has(Label left, Label right) const {
    return (bits_ >> (2U * static_cast<unsigned>(left) + static_cast<unsigned>(right))) & 1U;
  }
  constexpr bool is_zero() const { return bits_ == 0; }

  constexpr TensorElem operator+(TensorElem o) const { return TensorElem(static_cast<std::uint8_t>(bits_ ^ o.bits_)); }
  constexpr bool operator==(const TensorElem&) const = default;

 private:
  std::uint8_t bits_ = 0;
};

/// Bilinear a (x) b.
constexpr TensorElem tensor(AlgElem a, AlgElem b) {
  TensorElem out;
  for (Label l : {Label::One, Label::X}) {
    for (Label r : {Label::One, Label::X}) {
      if (a.has(l) && b.has(r)) out = out + TensorElem::basis(l, r);
    }
  }
  return out;
}

/// Multiplication: 1*1 = 1, 1*x = x*1 = x, x*x = 0.
constexpr AlgElem mu(TensorElem t) {
  AlgElem out;
  if (t.has(Label::One, Label::One)) out = out + AlgElem::one();
  if (t.has(Label::One, Label::X)) out = out + AlgElem::x();
  if (t.has(Label::X, Label::One)) out = out + AlgElem::x();
  return out;
}

/// Comultiplication: D(1) = x (x) 1 + 1 (x) x, D(x) = x (x) x.
constexpr TensorElem delta(AlgElem a) {
  TensorElem out;
  if (a.has(Label::One)) out = out + TensorElem::basis(Label::X, Label::One) + TensorElem::basis(Label::One, Label::X);
  if (a.has(Label::X)) out = out + TensorElem::basis(Label::X, Label::X);
  return out;
}

/// Genus-1 cobordism between two distinct circles labelled p and q: D(pq).
constexpr TensorElem genus1_local(AlgElem p, AlgElem q) { return delta(mu(tensor(p, q))); }

/// Genus-1 cobordism on a single circle: m(D(p)), identically zero over F2.
constexpr AlgElem genus1_local_same_circle(AlgElem p) { return mu(delta(p)); }

}  // namespace skh::frobenius
