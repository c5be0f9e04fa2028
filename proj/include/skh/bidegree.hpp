#pragma once

#include <compare>
#include <map>

namespace skh {

/// Homological degree i and quantum degree j.
struct Bidegree {
  int i = 0;
  int j = 0;

  friend auto operator<=>(const Bidegree&, const Bidegree&) = default;
};

/// dim Kh^{i,j} over F2; only nonzero entries are stored.
using BettiTable = std::map<Bidegree, int>;

}  // namespace skh
