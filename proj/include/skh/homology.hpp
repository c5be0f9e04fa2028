#pragma once

#include <map>
#include <vector>

#include "skh/bidegree.hpp"
#include "skh/chain.hpp"
#include "skh/diagram.hpp"
#include "skh/f2.hpp"

namespace skh {

std::size_t rank_f2(const f2::BitMatrix& m);

/// dim ker d^{i,j} - rank d^{i-1,j} at every bidegree; zero entries omitted.
/// Throws ComplexInvalid when d o d != 0.
BettiTable betti(const BigradedComplex& x);

/// Cycle representatives of a basis of homology at each bidegree.
class HomologyBasis {
 public:
  explicit HomologyBasis(const BigradedComplex& x);

  const std::vector<f2::BitVector>& representatives(Bidegree b) const;
  int dimension(Bidegree b) const { return static_cast<int>(representatives(b).size()); }
  BettiTable betti() const;

  /// Coordinates of the class of cycle v in the representative basis;
  /// nullopt when v is not a cycle modulo boundaries and representatives.
  std::optional<f2::BitVector> coordinates(Bidegree b, const f2::BitVector& v) const;
  /// Whether v is a boundary.
  bool is_boundary(Bidegree b, const f2::BitVector& v) const;

 private:
  struct Degree {
    std::vector<f2::BitVector> reps;
    f2::EchelonSpan span{0};  // boundaries untracked, then reps tracked
  };
  std::map<Bidegree, Degree> degrees_;
};

/// f_* at each bidegree where source homology is nonzero, as a matrix
/// dim H(target) x dim H(source). Throws NotAChainMap, InconsistentBasis.
std::map<Bidegree, f2::BitMatrix> induced_map(const GradedChainMap& f, const HomologyBasis& source,
                                              const HomologyBasis& target);

/// The map C(D_-) -> C(D_+) of singular complexes induced by the genus-1
/// maps at double point b on every vertex of the remaining cube.
struct CrossingChangeMap {
  ComplexPtr minus;
  ComplexPtr plus;
  GradedChainMap map;
};

CrossingChangeMap crossing_change_map(const SingularDiagram& diagram, int b);

struct LesRow {
  Bidegree at;
  int kh = 0;          // dim Kh(D)
  int coker = 0;       // dim coker Phi_* at (i, j)
  int ker_next = 0;    // dim ker Phi_* at (i+1, j)

  bool holds() const { return kh == coker + ker_next; }
};

struct LesReport {
  int crossing = 0;
  BettiTable singular;
  BettiTable minus;
  BettiTable plus;
  std::map<Bidegree, int> induced_rank;
  std::vector<LesRow> rows;  // every bidegree where some term is nonzero
  bool euler_holds = false;
  bool phi_isomorphism = false;

  bool holds() const;
  std::vector<LesRow> failures() const;
};

/// Checks dim Kh^{i,j}(D) = dim coker Phi_*^{i,j} + dim ker Phi_*^{i+1,j} and
/// the Euler characteristic consequence. Throws DomainError if b is not a
/// double point.
LesReport les_check(const SingularDiagram& diagram, int b);

}  // namespace skh
