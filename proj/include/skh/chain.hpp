#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "skh/bidegree.hpp"
#include "skh/f2.hpp"
#include "skh/polynomial.hpp"

namespace skh {

/// Opaque label carried by a basis vector so homology classes can be traced
/// back to where they came from. Khovanov complexes store the state and
/// circle labelling; cones and cube totalizations record the summand in
/// `vertex`.
struct BasisTag {
  std::uint32_t vertex = 0;
  std::uint32_t state = 0;
  std::uint64_t labels = 0;

  friend auto operator<=>(const BasisTag&, const BasisTag&) = default;
};

/// Finite-dimensional bigraded chain complex over F2 with differential of
/// bidegree (1,0). Only nonzero bidegrees are stored.
class BigradedComplex {
 public:
  struct Block {
    std::vector<BasisTag> basis;
    f2::BitMatrix d;  // dim(i+1,j) x dim(i,j)

    friend bool operator==(const Block&, const Block&) = default;
  };

  BigradedComplex() = default;

  /// Creates the graded object with zero differentials.
  explicit BigradedComplex(std::map<Bidegree, std::vector<BasisTag>> bases);

  int dim(Bidegree b) const;
  std::size_t total_dimension() const;
  bool empty() const { return blocks_.empty(); }

  /// Nonzero bidegrees in ascending (i, j) order.
  std::vector<Bidegree> support() const;
  const std::map<Bidegree, Block>& blocks() const { return blocks_; }

  /// Basis labels at b (empty when b is outside the support).
  const std::vector<BasisTag>& basis(Bidegree b) const;

  /// Differential out of b. Outside the support this is an empty matrix.
  const f2::BitMatrix& d(Bidegree b) const;
  f2::BitMatrix& mutable_d(Bidegree b);

  friend bool operator==(const BigradedComplex&, const BigradedComplex&) = default;

 private:
  std::map<Bidegree, Block> blocks_;
};

using ComplexPtr = std::shared_ptr<const BigradedComplex>;

/// Chain map of bidegree (0,0). Missing blocks are zero.
struct GradedChainMap {
  ComplexPtr source;
  ComplexPtr target;
  std::map<Bidegree, f2::BitMatrix> blocks;  // dim_target(b) x dim_source(b)

  /// Block at b, materialized as a zero matrix when absent.
  f2::BitMatrix at(Bidegree b) const;
};

GradedChainMap zero_map(ComplexPtr source, ComplexPtr target);
GradedChainMap identity_map(ComplexPtr complex);
GradedChainMap compose(const GradedChainMap& second, const GradedChainMap& first);

/// W[k]{l} with W[k]{l}^{i,j} = W^{i-k,j-l}.
BigradedComplex shift(const BigradedComplex& x, int k, int l);

/// Whether d o d = 0 at every bidegree.
bool verify_complex(const BigradedComplex& x);

/// Whether f commutes with the differentials at every bidegree.
bool verify_chain_map(const GradedChainMap& f);

/// First bidegree where d o d != 0, if any.
std::optional<Bidegree> find_complex_defect(const BigradedComplex& x);

struct MappingCone {
  ComplexPtr complex;
  GradedChainMap inclusion;   // Y -> Cone(f)
  GradedChainMap projection;  // Cone(f) -> X[-1]
};

/// Cone(f)^{i,j} = Y^{i,j} + X^{i+1,j}, with differential [[dY, f], [0, dX]].
MappingCone cone(const GradedChainMap& f);

/// Number of elements of `subset` exceeding t; the exponent of the sign
/// attached to edge maps in a cube totalization.
int nu(int t, std::uint32_t subset);

/// An r-cube of complexes: vertex[A] for A a bitmask over r directions,
/// and structure maps A -> A + {s}.
class CubeOfComplexes {
 public:
  explicit CubeOfComplexes(int dimension);

  int dimension() const { return dimension_; }
  const ComplexPtr& vertex(std::uint32_t a) const { return vertices_.at(a); }
  void set_vertex(std::uint32_t a, ComplexPtr complex);

  const GradedChainMap& edge(std::uint32_t a, int s) const;
  void set_edge(std::uint32_t a, int s, GradedChainMap map);

  /// Whether every square of structure maps commutes.
  bool faces_commute() const;

 private:
  int dimension_;
  std::vector<ComplexPtr> vertices_;
  std::map<std::pair<std::uint32_t, int>, GradedChainMap> edges_;
};

/// Multiple mapping cone: the sum over A of vertex(A)[-(r - |A|)] with the
/// internal differentials plus every structure map (all signs are +1 in
/// characteristic two). Summands are ordered by descending A, so for r = 1
/// the result coincides block for block with cone(edge(0, 0)).
BigradedComplex mcone(const CubeOfComplexes& cube);

/// Map between the multiple mapping cones of two cubes of the same shape
/// that is block diagonal with the given per-vertex maps.
GradedChainMap mcone_map(const CubeOfComplexes& source, const CubeOfComplexes& target,
                         const std::vector<GradedChainMap>& vertex_maps, ComplexPtr source_total, ComplexPtr target_total);

/// Graded Euler characteristic of the chain groups, sum (-1)^i q^j dim.
LaurentPoly chain_euler_characteristic(const BigradedComplex& x);

}  // namespace skh
