#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace skh {

enum class CrossingKind { Positive, Negative, Singular };

/// One crossing of a PD code. Edges are listed counterclockwise starting
/// from the incoming under-strand (for a double point: from an incoming
/// strand, with the other incoming strand in the last slot).
///
/// Strand directions per slot:
///   Positive  a in, c out, d in, b out
///   Negative  a in, c out, b in, d out
///   Singular  a in, c out, d in, b out
struct Crossing {
  CrossingKind kind = CrossingKind::Positive;
  std::array<int, 4> edges{};

  friend bool operator==(const Crossing&, const Crossing&) = default;
};

struct CrossingCounts {
  int n_plus = 0;
  int n_minus = 0;
  int singular = 0;

  friend bool operator==(const CrossingCounts&, const CrossingCounts&) = default;
};

/// An oriented singular link diagram presented by a PD code plus a count of
/// crossingless circles. Immutable once constructed; the constructor
/// validates edge multiplicities and orientation consistency.
class SingularDiagram {
 public:
  SingularDiagram(std::vector<Crossing> crossings, int free_loops);

  /// `loop_positions[k]` is the number of crossings listed before the k-th
  /// free loop token; only affects serialization order.
  SingularDiagram(std::vector<Crossing> crossings, std::vector<int> loop_positions);

  const std::vector<Crossing>& crossings() const { return crossings_; }
  int crossing_count() const { return static_cast<int>(crossings_.size()); }
  int free_loops() const { return static_cast<int>(loop_positions_.size()); }
  const std::vector<int>& loop_positions() const { return loop_positions_; }

  CrossingCounts counts() const;

  /// Crossing indices of the double points, in crossing order. The k-th
  /// entry is double point number k.
  std::vector<int> singular_crossings() const;

  /// Edge identifiers sorted ascending; position in this list is the dense
  /// edge index used by smoothings.
  const std::vector<int>& edge_ids() const { return edge_ids_; }
  int edge_count() const { return static_cast<int>(edge_ids_.size()); }

  /// Dense edge indices of the four slots of crossing `c`.
  const std::array<int, 4>& slots(int c) const { return slots_[static_cast<std::size_t>(c)]; }

  std::string serialize() const;

  friend bool operator==(const SingularDiagram& a, const SingularDiagram& b) {
    return a.crossings_ == b.crossings_ && a.loop_positions_ == b.loop_positions_;
  }

 private:
  void validate_and_index();

  std::vector<Crossing> crossings_;
  std::vector<int> loop_positions_;
  std::vector<int> edge_ids_;
  std::vector<std::array<int, 4>> slots_;
};

/// Parses whitespace-separated tokens `X+(a,b,c,d)`, `X-(..)`, `Xs(..)`,
/// `O`, with `#` comments running to end of line.
SingularDiagram parse_pd(std::string_view text);

CrossingCounts counts(const SingularDiagram& diagram);

/// Resolves every double point: those listed in `positive` (crossing
/// indices) become positive crossings, the rest negative.
SingularDiagram resolve_double_points(const SingularDiagram& diagram, std::span<const int> positive);

/// Same, with the positive set given as a bitmask over double-point numbers.
SingularDiagram resolve_double_points_mask(const SingularDiagram& diagram, std::uint32_t positive_mask);

/// Resolves the single double point at crossing `c`, leaving others singular.
SingularDiagram resolve_one(const SingularDiagram& diagram, int c, bool positive);

/// Resolution of a double point tuple. The positive crossing keeps the
/// tuple; the negative one is rotated to start at slot d so that slot a is
/// again the incoming under-strand.
Crossing resolve_crossing(const Crossing& singular, bool positive);

/// True when the double point at crossing `c` sits on a crossingless kink:
/// two adjacent slots carry the same edge.
bool is_isolated_double_point(const SingularDiagram& diagram, int c);

/// Subset of crossings taking the 1-smoothing.
class State {
 public:
  explicit State(int length, std::uint32_t bits = 0);

  int length() const { return length_; }
  std::uint32_t bits() const { return bits_; }
  bool contains(int c) const { return (bits_ >> c) & 1U; }
  int weight() const;
  State with(int c) const { return State(length_, bits_ | (1U << c)); }
  State without(int c) const { return State(length_, bits_ & ~(1U << c)); }

  friend bool operator==(const State&, const State&) = default;

 private:
  int length_;
  std::uint32_t bits_;
};

/// Circles of a smoothed diagram. Circles touching crossings are numbered in
/// order of their smallest dense edge index; free loops come last.
struct CircleDecomposition {
  std::vector<int> circle_of_edge;
  int circle_count = 0;
  int free_loops = 0;
  /// Per crossing, circles of its two smoothing arcs: (a,b),(c,d) for the
  /// 0-smoothing and (a,d),(b,c) for the 1-smoothing.
  std::vector<std::array<int, 2>> arc_circles;

  friend bool operator==(const CircleDecomposition&, const CircleDecomposition&) = default;
};

/// Smooths every crossing of an ordinary diagram according to `state`.
CircleDecomposition smooth(const SingularDiagram& diagram, const State& state);

}  // namespace skh
