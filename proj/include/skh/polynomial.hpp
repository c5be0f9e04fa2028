#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "skh/bidegree.hpp"
#include "skh/diagram.hpp"

namespace skh {

/// Laurent polynomial in q with exact integer coefficients.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(std::int64_t constant);

  static LaurentPoly monomial(int exponent, std::int64_t coefficient = 1);

  std::int64_t coefficient(int exponent) const;
  const std::map<int, std::int64_t>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);
  LaurentPoly operator-() const;
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(LaurentPoly a, const LaurentPoly& b) { return a *= b; }
  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  LaurentPoly pow(unsigned n) const;

  /// Ascending exponents with explicit signs, e.g. "q^-1 + q", "q + q^3 + q^5 - q^9", "0".
  std::string to_string() const;

 private:
  void add_term(int exponent, std::int64_t coefficient);

  std::map<int, std::int64_t> terms_;
};

/// sum over (i,j) of (-1)^i q^j B(i,j).
LaurentPoly euler_characteristic(const BettiTable& table);

/// Unnormalized Jones polynomial of an ordinary diagram by the state sum
/// (-1)^{n-} q^{n+ - 2n-} sum_s (-q)^{|s|} (q + q^-1)^{#circles}.
/// Counts circles by walking arcs, independently of the complex builder.
LaurentPoly jones_state_sum(const SingularDiagram& diagram);

/// r-th derivative of the unnormalized Jones polynomial:
/// sum over A of (-1)^{r-|A|} jones_state_sum(D_A).
LaurentPoly vassiliev_derivative(const SingularDiagram& diagram);

}  // namespace skh
