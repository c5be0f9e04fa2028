#include "skh/polynomial.hpp"

#include <bit>
#include <cstdlib>
#include <sstream>
#include <vector>

#include "skh/errors.hpp"

namespace skh {

LaurentPoly::LaurentPoly(std::int64_t constant) { add_term(0, constant); }

LaurentPoly LaurentPoly::monomial(int exponent, std::int64_t coefficient) {
  LaurentPoly p;
  p.add_term(exponent, coefficient);
  return p;
}

void LaurentPoly::add_term(int exponent, std::int64_t coefficient) {
  if (coefficient == 0) return;
  auto [it, inserted] = terms_.emplace(exponent, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0) terms_.erase(it);
  }
}

std::int64_t LaurentPoly::coefficient(int exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? 0 : it->second;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) {
  LaurentPoly product;
  for (const auto& [e1, c1] : terms_) {
    for (const auto& [e2, c2] : o.terms_) product.add_term(e1 + e2, c1 * c2);
  }
  *this = std::move(product);
  return *this;
}

LaurentPoly LaurentPoly::operator-() const { return LaurentPoly() - *this; }

LaurentPoly LaurentPoly::pow(unsigned n) const {
  LaurentPoly result(1);
  for (unsigned k = 0; k < n; ++k) result *= *this;
  return result;
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    const std::int64_t magnitude = std::llabs(c);
    if (first) {
      if (c < 0) out << '-';
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (e == 0) {
      out << magnitude;
      continue;
    }
    if (magnitude != 1) out << magnitude;
    out << 'q';
    if (e != 1) out << '^' << e;
  }
  return out.str();
}

LaurentPoly euler_characteristic(const BettiTable& table) {
  LaurentPoly chi;
  for (const auto& [b, dim] : table) chi += LaurentPoly::monomial(b.j, (b.i % 2 == 0) ? dim : -dim);
  return chi;
}

namespace {

// Counts circles of the smoothing by following arcs: every edge joins two
// crossing slots and every smoothing arc joins two slots of one crossing,
// so the slots form disjoint cycles alternating between the two.
class ArcWalker {
 public:
  explicit ArcWalker(const SingularDiagram& diagram) : n_(diagram.crossing_count()) {
    std::vector<int> first_slot(static_cast<std::size_t>(diagram.edge_count()), -1);
    partner_.assign(static_cast<std::size_t>(4 * n_), -1);
    for (int c = 0; c < n_; ++c) {
      for (int k = 0; k < 4; ++k) {
        const int slot = 4 * c + k;
        const int e = diagram.slots(c)[static_cast<std::size_t>(k)];
        int& seen = first_slot[static_cast<std::size_t>(e)];
        if (seen < 0) {
          seen = slot;
        } else {
          partner_[static_cast<std::size_t>(slot)] = seen;
          partner_[static_cast<std::size_t>(seen)] = slot;
        }
      }
    }
  }

  int circles(std::uint32_t state) const {
    std::vector<char> visited(partner_.size(), 0);
    int count = 0;
    for (std::size_t start = 0; start < partner_.size(); ++start) {
      if (visited[start]) continue;
      ++count;
      std::size_t slot = start;
      do {
        visited[slot] = 1;
        const std::size_t across = smoothing_partner(slot, state);
        visited[across] = 1;
        slot = static_cast<std::size_t>(partner_[across]);
      } while (slot != start);
    }
    return count;
  }

 private:
  // 0-smoothing pairs slots (a,b),(c,d); 1-smoothing pairs (a,d),(b,c).
  static std::size_t smoothing_partner(std::size_t slot, std::uint32_t state) {
    const std::size_t c = slot / 4;
    const std::size_t k = slot % 4;
    static constexpr std::size_t zero[4] = {1, 0, 3, 2};
    static constexpr std::size_t one[4] = {3, 2, 1, 0};
    return 4 * c + (((state >> c) & 1U) ? one[k] : zero[k]);
  }

  int n_;
  std::vector<int> partner_;
};

}  // namespace

LaurentPoly jones_state_sum(const SingularDiagram& diagram) {
  const CrossingCounts k = diagram.counts();
  if (k.singular != 0) throw DomainError("the Jones state sum needs an ordinary diagram");
  const int n = diagram.crossing_count();
  if (n > 30) throw DomainError("too many crossings for the state sum");

  const ArcWalker walker(diagram);
  const LaurentPoly loop = LaurentPoly::monomial(1) + LaurentPoly::monomial(-1);
  std::vector<LaurentPoly> loop_powers{LaurentPoly(1)};
  // Tally states by (|s|, circles) first; the polynomial work is then tiny.
  std::map<std::pair<int, int>, std::int64_t> tally;
  for (std::uint32_t s = 0; s < (1U << n); ++s) {
    ++tally[{std::popcount(s), walker.circles(s) + diagram.free_loops()}];
  }
  LaurentPoly sum;
  for (const auto& [key, count] : tally) {
    const auto [weight, circles] = key;
    while (static_cast<int>(loop_powers.size()) <= circles) loop_powers.push_back(loop_powers.back() * loop);
    const std::int64_t sign = (weight % 2 == 0) ? count : -count;
    sum += LaurentPoly::monomial(weight, sign) * loop_powers[static_cast<std::size_t>(circles)];
  }
  const std::int64_t sign = (k.n_minus % 2 == 0) ? 1 : -1;
  return LaurentPoly::monomial(k.n_plus - 2 * k.n_minus, sign) * sum;
}

LaurentPoly vassiliev_derivative(const SingularDiagram& diagram) {
  const int r = diagram.counts().singular;
  LaurentPoly total;
  for (std::uint32_t a = 0; a < (1U << r); ++a) {
    const LaurentPoly term = jones_state_sum(resolve_double_points_mask(diagram, a));
    if ((r - std::popcount(a)) % 2 == 0) {
      total += term;
    } else {
      total -= term;
    }
  }
  return total;
}

}  // namespace skh
