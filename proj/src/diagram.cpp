#include "skh/diagram.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <map>
#include <numeric>
#include <sstream>

#include "skh/errors.hpp"

namespace skh {

namespace {

// Slot directions: true = the strand enters the crossing through this slot.
constexpr std::array<bool, 4> incoming_slots(CrossingKind kind) {
  switch (kind) {
    case CrossingKind::Negative:
      return {true, true, false, false};
    case CrossingKind::Positive:
    case CrossingKind::Singular:
      break;
  }
  return {true, false, false, true};
}

char kind_marker(CrossingKind kind) {
  switch (kind) {
    case CrossingKind::Positive:
      return '+';
    case CrossingKind::Negative:
      return '-';
    case CrossingKind::Singular:
      break;
  }
  return 's';
}

std::vector<int> free_loops_at_end(std::size_t crossings, int free_loops) {
  if (free_loops < 0) throw ValidationError("negative free loop count");
  return std::vector<int>(static_cast<std::size_t>(free_loops), static_cast<int>(crossings));
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<int> parent_;
};

}  // namespace

SingularDiagram::SingularDiagram(std::vector<Crossing> crossings, int free_loops)
    : SingularDiagram(crossings, free_loops_at_end(crossings.size(), free_loops)) {}

SingularDiagram::SingularDiagram(std::vector<Crossing> crossings, std::vector<int> loop_positions)
    : crossings_(std::move(crossings)), loop_positions_(std::move(loop_positions)) {
  validate_and_index();
}

void SingularDiagram::validate_and_index() {
  if (crossings_.empty() && loop_positions_.empty()) throw ValidationError("empty diagram");
  for (int pos : loop_positions_) {
    if (pos < 0 || pos > crossing_count()) throw ValidationError("free loop position out of range");
  }
  std::sort(loop_positions_.begin(), loop_positions_.end());

  struct Usage {
    int occurrences = 0;
    int incoming = 0;
  };
  std::map<int, Usage> usage;
  for (std::size_t c = 0; c < crossings_.size(); ++c) {
    const Crossing& x = crossings_[c];
    const auto in = incoming_slots(x.kind);
    for (int k = 0; k < 4; ++k) {
      const int e = x.edges[static_cast<std::size_t>(k)];
      if (e < 1) throw ValidationError("edge identifiers must be positive, got " + std::to_string(e));
      auto& u = usage[e];
      ++u.occurrences;
      if (in[static_cast<std::size_t>(k)]) ++u.incoming;
    }
    if (x.edges[0] == x.edges[2] || x.edges[1] == x.edges[3]) {
      throw ValidationError("crossing " + std::to_string(c + 1) + " repeats an edge on opposite slots");
    }
  }
  for (const auto& [edge, u] : usage) {
    if (u.occurrences != 2) {
      throw ValidationError("edge " + std::to_string(edge) + " occurs " + std::to_string(u.occurrences) +
                            " times, expected 2");
    }
    if (u.incoming != 1) {
      throw ValidationError("edge " + std::to_string(edge) + " is not oriented consistently (" +
                            std::to_string(u.incoming) + " incoming ends)");
    }
  }

  edge_ids_.clear();
  for (const auto& entry : usage) edge_ids_.push_back(entry.first);
  slots_.clear();
  slots_.reserve(crossings_.size());
  for (const Crossing& x : crossings_) {
    std::array<int, 4> dense{};
    for (std::size_t k = 0; k < 4; ++k) {
      dense[k] = static_cast<int>(std::lower_bound(edge_ids_.begin(), edge_ids_.end(), x.edges[k]) - edge_ids_.begin());
    }
    slots_.push_back(dense);
  }
}

CrossingCounts SingularDiagram::counts() const {
  CrossingCounts out;
  for (const Crossing& x : crossings_) {
    switch (x.kind) {
      case CrossingKind::Positive:
        ++out.n_plus;
        break;
      case CrossingKind::Negative:
        ++out.n_minus;
        break;
      case CrossingKind::Singular:
        ++out.singular;
        break;
    }
  }
  return out;
}

std::vector<int> SingularDiagram::singular_crossings() const {
  std::vector<int> out;
  for (int c = 0; c < crossing_count(); ++c) {
    if (crossings_[static_cast<std::size_t>(c)].kind == CrossingKind::Singular) out.push_back(c);
  }
  return out;
}

std::string SingularDiagram::serialize() const {
  std::ostringstream out;
  bool first = true;
  auto sep = [&] {
    if (!first) out << ' ';
    first = false;
  };
  std::size_t loop = 0;
  for (std::size_t c = 0; c <= crossings_.size(); ++c) {
    while (loop < loop_positions_.size() && loop_positions_[loop] == static_cast<int>(c)) {
      sep();
      out << 'O';
      ++loop;
    }
    if (c == crossings_.size()) break;
    const Crossing& x = crossings_[c];
    sep();
    out << 'X' << kind_marker(x.kind) << '(' << x.edges[0] << ',' << x.edges[1] << ',' << x.edges[2] << ','
        << x.edges[3] << ')';
  }
  return out.str();
}

namespace {

class PdLexer {
 public:
  explicit PdLexer(std::string_view text) : text_(text) {}

  SingularDiagram parse() {
    std::vector<Crossing> crossings;
    std::vector<int> loops;
    while (skip_blank()) {
      const std::size_t start = pos_;
      const char head = text_[pos_];
      if (head == 'O' && (pos_ + 1 == text_.size() || is_blank(text_[pos_ + 1]) || text_[pos_ + 1] == '#')) {
        ++pos_;
        loops.push_back(static_cast<int>(crossings.size()));
        continue;
      }
      if (head != 'X' || pos_ + 1 >= text_.size()) fail(start, "unknown token");
      Crossing x;
      switch (text_[pos_ + 1]) {
        case '+':
          x.kind = CrossingKind::Positive;
          break;
        case '-':
          x.kind = CrossingKind::Negative;
          break;
        case 's':
          x.kind = CrossingKind::Singular;
          break;
        default:
          fail(start, "crossing marker must be one of + - s");
      }
      pos_ += 2;
      expect('(', start);
      for (std::size_t k = 0; k < 4; ++k) {
        x.edges[k] = integer(start);
        expect(k == 3 ? ')' : ',', start);
      }
      if (pos_ < text_.size() && !is_blank(text_[pos_]) && text_[pos_] != '#') fail(start, "trailing characters");
      crossings.push_back(x);
    }
    return SingularDiagram(std::move(crossings), std::move(loops));
  }

 private:
  static bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

  // Advances past whitespace and comments; false at end of input.
  bool skip_blank() {
    while (pos_ < text_.size()) {
      if (is_blank(text_[pos_])) {
        ++pos_;
      } else if (text_[pos_] == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        return true;
      }
    }
    return false;
  }

  [[noreturn]] void fail(std::size_t start, const std::string& why) const {
    std::size_t end = start;
    while (end < text_.size() && !is_blank(text_[end])) ++end;
    throw SyntaxError(why + " in token '" + std::string(text_.substr(start, end - start)) + "' at offset " +
                      std::to_string(start));
  }

  void expect(char c, std::size_t start) {
    if (pos_ >= text_.size() || text_[pos_] != c) fail(start, std::string("expected '") + c + "'");
    ++pos_;
  }

  int integer(std::size_t start) {
    int value = 0;
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr == first || *first == '-' || *first == '+') fail(start, "expected an integer");
    if (value < 1) fail(start, "edge identifiers must be >= 1");
    pos_ += static_cast<std::size_t>(ptr - first);
    return value;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

SingularDiagram parse_pd(std::string_view text) { return PdLexer(text).parse(); }

CrossingCounts counts(const SingularDiagram& diagram) { return diagram.counts(); }

Crossing resolve_crossing(const Crossing& singular, bool positive) {
  if (singular.kind != CrossingKind::Singular) throw DomainError("crossing is not a double point");
  if (positive) return Crossing{CrossingKind::Positive, singular.edges};
  const auto& e = singular.edges;
  return Crossing{CrossingKind::Negative, {e[3], e[0], e[1], e[2]}};
}

SingularDiagram resolve_double_points(const SingularDiagram& diagram, std::span<const int> positive) {
  std::vector<Crossing> crossings = diagram.crossings();
  std::vector<bool> chosen(crossings.size(), false);
  for (int c : positive) {
    if (c < 0 || c >= diagram.crossing_count() || crossings[static_cast<std::size_t>(c)].kind != CrossingKind::Singular) {
      throw DomainError("crossing " + std::to_string(c) + " is not a double point");
    }
    chosen[static_cast<std::size_t>(c)] = true;
  }
  for (std::size_t c = 0; c < crossings.size(); ++c) {
    if (crossings[c].kind == CrossingKind::Singular) crossings[c] = resolve_crossing(crossings[c], chosen[c]);
  }
  return SingularDiagram(std::move(crossings), diagram.loop_positions());
}

SingularDiagram resolve_double_points_mask(const SingularDiagram& diagram, std::uint32_t positive_mask) {
  const std::vector<int> points = diagram.singular_crossings();
  if (points.size() < 32 && (positive_mask >> points.size()) != 0) {
    throw DomainError("double point mask has bits beyond the double point count");
  }
  std::vector<int> chosen;
  for (std::size_t k = 0; k < points.size(); ++k) {
    if ((positive_mask >> k) & 1U) chosen.push_back(points[k]);
  }
  return resolve_double_points(diagram, chosen);
}

SingularDiagram resolve_one(const SingularDiagram& diagram, int c, bool positive) {
  if (c < 0 || c >= diagram.crossing_count()) throw DomainError("crossing index out of range");
  std::vector<Crossing> crossings = diagram.crossings();
  crossings[static_cast<std::size_t>(c)] = resolve_crossing(crossings[static_cast<std::size_t>(c)], positive);
  return SingularDiagram(std::move(crossings), diagram.loop_positions());
}

bool is_isolated_double_point(const SingularDiagram& diagram, int c) {
  if (c < 0 || c >= diagram.crossing_count()) return false;
  const Crossing& x = diagram.crossings()[static_cast<std::size_t>(c)];
  if (x.kind != CrossingKind::Singular) return false;
  for (std::size_t k = 0; k < 4; ++k) {
    if (x.edges[k] == x.edges[(k + 1) % 4]) return true;
  }
  return false;
}

State::State(int length, std::uint32_t bits) : length_(length), bits_(bits) {
  if (length < 0 || length > 31) throw DomainError("state length must lie in [0, 31]");
  if (length < 32 && (bits >> length) != 0) throw DomainError("state has bits beyond its length");
}

int State::weight() const { return std::popcount(bits_); }

CircleDecomposition smooth(const SingularDiagram& diagram, const State& state) {
  const int n = diagram.crossing_count();
  if (state.length() != n) throw DomainError("state length does not match the crossing count");
  if (diagram.counts().singular != 0) throw DomainError("cannot smooth a double point");

  DisjointSets sets(static_cast<std::size_t>(diagram.edge_count()));
  for (int c = 0; c < n; ++c) {
    const auto& s = diagram.slots(c);
    if (state.contains(c)) {
      sets.unite(s[0], s[3]);
      sets.unite(s[1], s[2]);
    } else {
      sets.unite(s[0], s[1]);
      sets.unite(s[2], s[3]);
    }
  }

  CircleDecomposition out;
  out.circle_of_edge.assign(static_cast<std::size_t>(diagram.edge_count()), -1);
  std::vector<int> circle_of_root(static_cast<std::size_t>(diagram.edge_count()), -1);
  int next = 0;
  for (int e = 0; e < diagram.edge_count(); ++e) {
    int& id = circle_of_root[static_cast<std::size_t>(sets.find(e))];
    if (id < 0) id = next++;
    out.circle_of_edge[static_cast<std::size_t>(e)] = id;
  }
  out.free_loops = diagram.free_loops();
  out.circle_count = next + out.free_loops;
  out.arc_circles.reserve(static_cast<std::size_t>(n));
  for (int c = 0; c < n; ++c) {
    const auto& s = diagram.slots(c);
    // Slot a lies on the first arc of either smoothing; slot c on the second.
    out.arc_circles.push_back({out.circle_of_edge[static_cast<std::size_t>(s[0])],
                               out.circle_of_edge[static_cast<std::size_t>(s[2])]});
  }
  return out;
}

}  // namespace skh
