#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <vector>

#include "skh/chain.hpp"
#include "skh/diagram.hpp"

namespace skh {

/// A state together with a {1, x} labelling of the circles of its
/// smoothing. Bit k of `labels` set means circle k carries x.
struct EnhancedState {
  State state;
  std::uint64_t labels = 0;
  int circles = 0;

  /// #(circles labelled 1) - #(circles labelled x).
  int degree() const;
  /// Bidegree (|s|, deg + |s|) in the unshifted complex.
  Bidegree unshifted_bidegree() const { return {state.weight(), degree() + state.weight()}; }

  friend bool operator==(const EnhancedState&, const EnhancedState&) = default;
};

/// Khovanov complex of an ordinary diagram over F2, shifted by
/// [-n_-]{n_+ - 2n_-}. Basis tags carry the state and labelling.
class KhovanovComplex {
 public:
  KhovanovComplex(SingularDiagram diagram, ComplexPtr complex, std::vector<std::uint8_t> circle_counts);

  const SingularDiagram& diagram() const { return diagram_; }
  const ComplexPtr& complex() const { return complex_; }
  int n_plus() const { return n_plus_; }
  int n_minus() const { return n_minus_; }

  int circles(std::uint32_t state) const { return circle_counts_[state]; }

  /// Position of an enhanced state inside its (shifted) bidegree block.
  Bidegree bidegree_of(std::uint32_t state, std::uint64_t labels) const;
  std::size_t index_of(std::uint32_t state, std::uint64_t labels) const;

 private:
  SingularDiagram diagram_;
  ComplexPtr complex_;
  int n_plus_ = 0;
  int n_minus_ = 0;
  std::vector<std::uint8_t> circle_counts_;
  // base_[state][k]: offset of the first labelling with k x's.
  std::vector<std::vector<std::uint32_t>> base_;
};

/// Enhanced states at unshifted bidegree (i, j), ordered by state and then
/// by labelling bitmask.
std::vector<EnhancedState> enhanced_basis(const SingularDiagram& diagram, int i, int j);

KhovanovComplex build_complex(const SingularDiagram& diagram);

/// The genus-1 chain map C(D_A) -> C(D_{A+b}) between prebuilt complexes
/// that differ only at crossing `b`, negative in the source and positive in
/// the target.
GradedChainMap genus1_map(const KhovanovComplex& source, const KhovanovComplex& target, int b);

/// Same, building both resolutions of D. `positive` lists the double points
/// (crossing indices) resolved positively; `b` is a double point not in it.
GradedChainMap genus1_map(const SingularDiagram& diagram, std::span<const int> positive, int b);

/// Integer composites of the local maps around a double point, entries
/// keyed by (source, target) enhanced states over the full state set of D_A.
struct Genus1Factorization {
  using Key = std::pair<std::uint32_t, std::uint64_t>;  // (state, labels)
  std::map<std::pair<Key, Key>, std::int64_t> phi_after_delta_minus;
  std::map<std::pair<Key, Key>, std::int64_t> delta_plus_after_phi;
};

Genus1Factorization genus1_factorization(const SingularDiagram& diagram, std::span<const int> positive, int b);

/// Whether both composites vanish modulo two.
bool verify_genus1_factorization(const SingularDiagram& diagram, std::span<const int> positive, int b);

/// Cube of resolutions together with the Khovanov complexes at its vertices.
struct ResolutionCube {
  std::vector<int> order;  // double point of each direction
  std::vector<std::shared_ptr<const KhovanovComplex>> vertices;
  CubeOfComplexes cube{0};
};

ResolutionCube build_resolution_cube(const SingularDiagram& diagram, std::span<const int> order = {});

/// Cube of resolutions: vertex A (bitmask over the double points in
/// `order`) is C(D_A) and the edge in direction k is the genus-1 map at
/// double point order[k]. An empty order means crossing order.
CubeOfComplexes build_cube(const SingularDiagram& diagram, std::span<const int> order = {});

/// Complex of a singular diagram: the multiple mapping cone of its cube of
/// resolutions. For ordinary diagrams this is build_complex(D).
BigradedComplex build_singular_complex(const SingularDiagram& diagram, std::span<const int> order = {});

}  // namespace skh
