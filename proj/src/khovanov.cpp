#include "skh/khovanov.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <string>

#include "skh/errors.hpp"
#include "skh/frobenius.hpp"
#include "skh/parallel.hpp"

namespace skh {

namespace {

constexpr int kMaxCircles = 63;

using frobenius::AlgElem;
using frobenius::Label;

std::uint64_t binomial(int n, int k) {
  static const auto table = [] {
    std::array<std::array<std::uint64_t, 65>, 65> c{};
    for (int i = 0; i <= 64; ++i) {
      c[i][0] = 1;
      for (int j = 1; j <= i; ++j) c[i][j] = c[i - 1][j - 1] + (j < i ? c[i - 1][j] : 0);
    }
    return c;
  }();
  if (k < 0 || k > n) return 0;
  return table[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

// Position of `mask` among masks of equal popcount, in increasing order.
std::uint64_t colex_rank(std::uint64_t mask) {
  std::uint64_t rank = 0;
  int t = 1;
  for (std::uint64_t m = mask; m != 0; m &= m - 1, ++t) rank += binomial(std::countr_zero(m), t);
  return rank;
}

// Next larger mask with the same popcount.
std::uint64_t next_same_weight(std::uint64_t v) {
  const std::uint64_t t = v | (v - 1);
  return (t + 1) | (((~t & (t + 1)) - 1) >> (std::countr_zero(v) + 1));
}

template <typename Fn>
void for_each_mask(int circles, int xs, Fn&& fn) {
  if (xs == 0) {
    fn(std::uint64_t{0});
    return;
  }
  const std::uint64_t last = (xs == circles) ? ~std::uint64_t{0} >> (64 - circles)
                                            : ((std::uint64_t{1} << xs) - 1) << (circles - xs);
  for (std::uint64_t m = (std::uint64_t{1} << xs) - 1;; m = next_same_weight(m)) {
    fn(m);
    if (m == last) break;
  }
}

bool has_x(std::uint64_t labels, int circle) { return (labels >> circle) & 1U; }

// One saddle cobordism at a crossing, as an integer combination of
// labellings of the target smoothing. `from_edges`/`to_edges` name one
// edge on each of the two arcs at the crossing.
class Saddle {
 public:
  struct Terms {
    int count = 0;
    std::array<std::uint64_t, 2> labels{};
    std::array<std::int64_t, 2> coefficient{};

    void add(std::uint64_t l, std::int64_t c) {
      for (int k = 0; k < count; ++k) {
        if (labels[static_cast<std::size_t>(k)] == l) {
          coefficient[static_cast<std::size_t>(k)] += c;
          return;
        }
      }
      labels[static_cast<std::size_t>(count)] = l;
      coefficient[static_cast<std::size_t>(count)] = c;
      ++count;
    }
  };

  Saddle(const CircleDecomposition& from, const CircleDecomposition& to, std::array<int, 2> edges) {
    p_ = from.circle_of_edge[static_cast<std::size_t>(edges[0])];
    q_ = from.circle_of_edge[static_cast<std::size_t>(edges[1])];
    u_ = to.circle_of_edge[static_cast<std::size_t>(edges[0])];
    v_ = to.circle_of_edge[static_cast<std::size_t>(edges[1])];
    image_.assign(static_cast<std::size_t>(from.circle_count), -1);
    for (std::size_t e = 0; e < from.circle_of_edge.size(); ++e) {
      const int c = from.circle_of_edge[e];
      if (c != p_ && c != q_) image_[static_cast<std::size_t>(c)] = to.circle_of_edge[e];
    }
    const int from_edge_circles = from.circle_count - from.free_loops;
    const int to_edge_circles = to.circle_count - to.free_loops;
    for (int f = 0; f < from.free_loops; ++f) image_[static_cast<std::size_t>(from_edge_circles + f)] = to_edge_circles + f;
  }

  bool is_merge() const { return p_ != q_; }

  Terms apply(std::uint64_t labels) const {
    std::uint64_t rest = 0;
    for (std::size_t c = 0; c < image_.size(); ++c) {
      if (image_[c] >= 0 && has_x(labels, static_cast<int>(c))) rest |= std::uint64_t{1} << image_[c];
    }
    Terms out;
    if (is_merge()) {
      const bool xp = has_x(labels, p_);
      const bool xq = has_x(labels, q_);
      if (xp && xq) return out;
      out.add(rest | (static_cast<std::uint64_t>(xp || xq) << u_), 1);
      return out;
    }
    // One circle to one circle cannot occur in a planar diagram; such a
    // saddle induces the zero map.
    if (u_ == v_) return out;
    if (has_x(labels, p_)) {
      out.add(rest | (std::uint64_t{1} << u_) | (std::uint64_t{1} << v_), 1);
    } else {
      out.add(rest | (std::uint64_t{1} << u_), 1);
      out.add(rest | (std::uint64_t{1} << v_), 1);
    }
    return out;
  }

 private:
  int p_, q_, u_, v_;
  std::vector<int> image_;
};

std::array<int, 2> arc_edges(const SingularDiagram& diagram, int c) {
  const auto& s = diagram.slots(c);
  return {s[0], s[2]};
}

void check_size(const SingularDiagram& diagram) {
  if (diagram.counts().singular != 0) throw DomainError("the Khovanov complex of a singular diagram needs its cube");
  if (diagram.crossing_count() > 30) throw DomainError("too many crossings");
  if (diagram.edge_count() + diagram.free_loops() > kMaxCircles) throw DomainError("too many circles");
}

}  // namespace

int EnhancedState::degree() const { return circles - 2 * std::popcount(labels); }

KhovanovComplex::KhovanovComplex(SingularDiagram diagram, ComplexPtr complex, std::vector<std::uint8_t> circle_counts)
    : diagram_(std::move(diagram)), complex_(std::move(complex)), circle_counts_(std::move(circle_counts)) {
  const CrossingCounts k = diagram_.counts();
  n_plus_ = k.n_plus;
  n_minus_ = k.n_minus;
  // Offsets within each unshifted (|s|, j) block, visiting states in order.
  std::map<Bidegree, std::uint32_t> fill;
  base_.resize(circle_counts_.size());
  for (std::uint32_t s = 0; s < circle_counts_.size(); ++s) {
    const int c = circle_counts_[s];
    const int w = std::popcount(s);
    auto& base = base_[s];
    base.resize(static_cast<std::size_t>(c) + 1);
    for (int xs = 0; xs <= c; ++xs) {
      std::uint32_t& used = fill[{w, c - 2 * xs + w}];
      base[static_cast<std::size_t>(xs)] = used;
      used += static_cast<std::uint32_t>(binomial(c, xs));
    }
  }
}

Bidegree KhovanovComplex::bidegree_of(std::uint32_t state, std::uint64_t labels) const {
  const int w = std::popcount(state);
  const int deg = circle_counts_[state] - 2 * std::popcount(labels);
  return {w - n_minus_, deg + w + n_plus_ - 2 * n_minus_};
}

std::size_t KhovanovComplex::index_of(std::uint32_t state, std::uint64_t labels) const {
  return base_[state][static_cast<std::size_t>(std::popcount(labels))] + colex_rank(labels);
}

std::vector<EnhancedState> enhanced_basis(const SingularDiagram& diagram, int i, int j) {
  check_size(diagram);
  const int n = diagram.crossing_count();
  std::vector<EnhancedState> out;
  for (std::uint32_t s = 0; s < (1U << n); ++s) {
    if (std::popcount(s) != i) continue;
    const State state(n, s);
    const int c = smooth(diagram, state).circle_count;
    // deg = c - 2 xs must equal j - i.
    const int twice_xs = c - (j - i);
    if (twice_xs < 0 || twice_xs % 2 != 0 || twice_xs / 2 > c) continue;
    for_each_mask(c, twice_xs / 2, [&](std::uint64_t m) { out.push_back({state, m, c}); });
  }
  return out;
}

KhovanovComplex build_complex(const SingularDiagram& diagram) {
  check_size(diagram);
  const int n = diagram.crossing_count();
  const std::uint32_t states = 1U << n;
  std::vector<CircleDecomposition> smoothings(states);
  std::vector<std::uint8_t> circle_counts(states);
  for (std::uint32_t s = 0; s < states; ++s) {
    smoothings[s] = smooth(diagram, State(n, s));
    circle_counts[s] = static_cast<std::uint8_t>(smoothings[s].circle_count);
  }

  const CrossingCounts k = diagram.counts();
  auto shifted = [&](int w, int c, int xs) { return Bidegree{w - k.n_minus, c - 2 * xs + w + k.n_plus - 2 * k.n_minus}; };

  std::map<Bidegree, std::vector<BasisTag>> bases;
  for (std::uint32_t s = 0; s < states; ++s) {
    const int c = circle_counts[s];
    const int w = std::popcount(s);
    for (int xs = 0; xs <= c; ++xs) {
      auto& basis = bases[shifted(w, c, xs)];
      for_each_mask(c, xs, [&](std::uint64_t m) { basis.push_back({0, s, m}); });
    }
  }
  auto complex = std::make_shared<BigradedComplex>(std::move(bases));
  KhovanovComplex result(diagram, nullptr, circle_counts);

  for (std::uint32_t s = 0; s < states; ++s) {
    const int c = circle_counts[s];
    for (int x = 0; x < n; ++x) {
      if ((s >> x) & 1U) continue;
      const std::uint32_t t = s | (1U << x);
      const Saddle saddle(smoothings[s], smoothings[t], arc_edges(diagram, x));
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << c); ++m) {
        const Bidegree from = result.bidegree_of(s, m);
        const std::size_t col = result.index_of(s, m);
        const Saddle::Terms terms = saddle.apply(m);
        for (int term = 0; term < terms.count; ++term) {
          if (terms.coefficient[static_cast<std::size_t>(term)] % 2 == 0) continue;
          const std::uint64_t image = terms.labels[static_cast<std::size_t>(term)];
          complex->mutable_d(from).flip(result.index_of(t, image), col);
        }
      }
    }
  }
  return KhovanovComplex(diagram, std::move(complex), std::move(circle_counts));
}

GradedChainMap genus1_map(const KhovanovComplex& source, const KhovanovComplex& target, int b) {
  const SingularDiagram& minus = source.diagram();
  const SingularDiagram& plus = target.diagram();
  const int n = minus.crossing_count();
  if (plus.crossing_count() != n || plus.free_loops() != minus.free_loops() || b < 0 || b >= n) {
    throw DomainError("genus-1 map needs two resolutions of one diagram");
  }
  for (int c = 0; c < n; ++c) {
    const Crossing& xm = minus.crossings()[static_cast<std::size_t>(c)];
    const Crossing& xp = plus.crossings()[static_cast<std::size_t>(c)];
    if (c == b) {
      const Crossing singular{CrossingKind::Singular, xp.edges};
      if (xp.kind != CrossingKind::Positive || !(resolve_crossing(singular, false) == xm)) {
        throw DomainError("crossing " + std::to_string(b) + " is not a negative/positive resolution pair");
      }
    } else if (!(xm == xp)) {
      throw DomainError("resolutions differ away from the double point");
    }
  }

  GradedChainMap phi{source.complex(), target.complex(), {}};
  const std::array<int, 2> arcs = arc_edges(plus, b);
  for (std::uint32_t s = 0; s < (1U << n); ++s) {
    // Only the oriented smoothing at b (1-smoothing of the negative
    // crossing) contributes; it is the 0-smoothing of the positive one.
    if (((s >> b) & 1U) == 0) continue;
    const std::uint32_t t = s & ~(1U << b);
    const CircleDecomposition circles = smooth(plus, State(n, t));
    const int p = circles.circle_of_edge[static_cast<std::size_t>(arcs[0])];
    const int q = circles.circle_of_edge[static_cast<std::size_t>(arcs[1])];
    if (p == q) continue;  // m(D(p)) = 0 over F2
    const int c = circles.circle_count;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << c); ++m) {
      const AlgElem lp(has_x(m, p) ? Label::X : Label::One);
      const AlgElem lq(has_x(m, q) ? Label::X : Label::One);
      const frobenius::TensorElem image = frobenius::genus1_local(lp, lq);
      if (image.is_zero()) continue;
      const Bidegree deg = source.bidegree_of(s, m);
      const std::uint64_t rest = m & ~(std::uint64_t{1} << p) & ~(std::uint64_t{1} << q);
      auto [it, inserted] = phi.blocks.try_emplace(deg);
      if (inserted) {
        it->second = f2::BitMatrix(static_cast<std::size_t>(target.complex()->dim(deg)),
                                   static_cast<std::size_t>(source.complex()->dim(deg)));
      }
      const std::size_t col = source.index_of(s, m);
      for (Label l : {Label::One, Label::X}) {
        for (Label r : {Label::One, Label::X}) {
          if (!image.has(l, r)) continue;
          const std::uint64_t labels = rest | (static_cast<std::uint64_t>(l == Label::X) << p) |
                                       (static_cast<std::uint64_t>(r == Label::X) << q);
          if (target.bidegree_of(t, labels) != deg) throw DomainError("genus-1 map is not of bidegree (0,0)");
          it->second.flip(target.index_of(t, labels), col);
        }
      }
    }
  }
  return phi;
}

namespace {

struct ResolvedPair {
  SingularDiagram minus;
  SingularDiagram plus;
};

ResolvedPair resolve_around(const SingularDiagram& diagram, std::span<const int> positive, int b) {
  if (b < 0 || b >= diagram.crossing_count() || diagram.crossings()[static_cast<std::size_t>(b)].kind != CrossingKind::Singular) {
    throw DomainError("crossing " + std::to_string(b) + " is not a double point");
  }
  if (std::find(positive.begin(), positive.end(), b) != positive.end()) {
    throw DomainError("double point " + std::to_string(b) + " is already resolved positively");
  }
  std::vector<int> with_b(positive.begin(), positive.end());
  with_b.push_back(b);
  return {resolve_double_points(diagram, positive), resolve_double_points(diagram, with_b)};
}

}  // namespace

GradedChainMap genus1_map(const SingularDiagram& diagram, std::span<const int> positive, int b) {
  const ResolvedPair pair = resolve_around(diagram, positive, b);
  return genus1_map(build_complex(pair.minus), build_complex(pair.plus), b);
}

Genus1Factorization genus1_factorization(const SingularDiagram& diagram, std::span<const int> positive, int b) {
  const ResolvedPair pair = resolve_around(diagram, positive, b);
  const SingularDiagram& minus = pair.minus;
  const SingularDiagram& plus = pair.plus;
  check_size(minus);
  const int n = minus.crossing_count();
  const std::uint32_t bit = 1U << b;

  using Key = Genus1Factorization::Key;
  using Vec = std::map<std::uint64_t, std::int64_t>;
  auto smoothing = [&](const SingularDiagram& d, std::uint32_t s) { return smooth(d, State(n, s)); };
  auto push = [](const Saddle& saddle, const Vec& in) {
    Vec out;
    for (const auto& [m, coeff] : in) {
      const Saddle::Terms terms = saddle.apply(m);
      for (int k = 0; k < terms.count; ++k) {
        std::int64_t& slot = out[terms.labels[static_cast<std::size_t>(k)]];
        slot += coeff * terms.coefficient[static_cast<std::size_t>(k)];
      }
    }
    std::erase_if(out, [](const auto& entry) { return entry.second == 0; });
    return out;
  };

  Genus1Factorization out;
  // States are keyed by their bits in D_-: b absent is the piece H
  // (crossing-type smoothing), b present the piece V (oriented smoothing).
  for (std::uint32_t h = 0; h < (1U << n); ++h) {
    if (h & bit) continue;
    const std::uint32_t v = h | bit;
    const CircleDecomposition ch = smoothing(minus, h);
    const CircleDecomposition cv = smoothing(minus, v);
    const auto arcs_minus = arc_edges(minus, b);
    const auto arcs_plus = arc_edges(plus, b);
    const Saddle delta_minus(ch, cv, arcs_minus);  // H -> V in D_-
    const Saddle out_v(cv, ch, arcs_minus);        // V -> H, first saddle of the handle
    // In D_+ the oriented smoothing is state h and the other one is v.
    const Saddle delta_plus(smoothing(plus, h), smoothing(plus, v), arcs_plus);

    auto phi = [&](const Vec& in) { return push(delta_minus, push(out_v, in)); };

    for (std::uint64_t m = 0; m < (std::uint64_t{1} << ch.circle_count); ++m) {
      const Vec composite = phi(push(delta_minus, Vec{{m, 1}}));
      for (const auto& [image, coeff] : composite) out.phi_after_delta_minus[{Key{h, m}, Key{v, image}}] = coeff;
    }
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << cv.circle_count); ++m) {
      const Vec composite = push(delta_plus, phi(Vec{{m, 1}}));
      for (const auto& [image, coeff] : composite) out.delta_plus_after_phi[{Key{v, m}, Key{h, image}}] = coeff;
    }
  }
  return out;
}

bool verify_genus1_factorization(const SingularDiagram& diagram, std::span<const int> positive, int b) {
  const Genus1Factorization f = genus1_factorization(diagram, positive, b);
  auto even = [](const auto& entries) {
    return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.second % 2 == 0; });
  };
  return even(f.phi_after_delta_minus) && even(f.delta_plus_after_phi);
}

ResolutionCube build_resolution_cube(const SingularDiagram& diagram, std::span<const int> order) {
  std::vector<int> points = diagram.singular_crossings();
  std::vector<int> directions(order.begin(), order.end());
  if (directions.empty()) directions = points;
  {
    std::vector<int> sorted = directions;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != points) throw DomainError("double point order must be a permutation of the double points");
  }
  const int r = static_cast<int>(directions.size());
  if (r > 16) throw DomainError("too many double points");
  const std::uint32_t vertices = 1U << r;

  ResolutionCube out;
  out.order = directions;
  out.vertices.resize(vertices);
  parallel_for(vertices, [&](std::size_t a) {
    std::vector<int> positive;
    for (int k = 0; k < r; ++k) {
      if ((a >> k) & 1U) positive.push_back(directions[static_cast<std::size_t>(k)]);
    }
    out.vertices[a] = std::make_shared<const KhovanovComplex>(build_complex(resolve_double_points(diagram, positive)));
  });

  out.cube = CubeOfComplexes(r);
  for (std::uint32_t a = 0; a < vertices; ++a) out.cube.set_vertex(a, out.vertices[a]->complex());
  std::vector<std::pair<std::uint32_t, int>> edges;
  for (std::uint32_t a = 0; a < vertices; ++a) {
    for (int k = 0; k < r; ++k) {
      if (((a >> k) & 1U) == 0) edges.emplace_back(a, k);
    }
  }
  std::vector<GradedChainMap> maps(edges.size());
  parallel_for(edges.size(), [&](std::size_t e) {
    const auto [a, k] = edges[e];
    maps[e] = genus1_map(*out.vertices[a], *out.vertices[a | (1U << k)], directions[static_cast<std::size_t>(k)]);
  });
  for (std::size_t e = 0; e < edges.size(); ++e) out.cube.set_edge(edges[e].first, edges[e].second, std::move(maps[e]));
  return out;
}

CubeOfComplexes build_cube(const SingularDiagram& diagram, std::span<const int> order) {
  return build_resolution_cube(diagram, order).cube;
}

BigradedComplex build_singular_complex(const SingularDiagram& diagram, std::span<const int> order) {
  if (diagram.counts().singular == 0) return *build_complex(diagram).complex();
  return mcone(build_cube(diagram, order));
}

}  // namespace skh
