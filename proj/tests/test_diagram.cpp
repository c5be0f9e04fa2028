#include <doctest.h>

#include <bit>

#include "skh/braid.hpp"
#include "skh/diagram.hpp"
#include "skh/errors.hpp"
#include "support.hpp"

using namespace skh;

TEST_CASE("parse: free loops") {
  const SingularDiagram d = parse_pd("O");
  CHECK(d.free_loops() == 1);
  CHECK(d.crossing_count() == 0);
  CHECK(counts(d) == CrossingCounts{0, 0, 0});
  CHECK(parse_pd("O O # two of them").free_loops() == 2);
}

TEST_CASE("parse: syntax errors") {
  CHECK_THROWS_AS(parse_pd("X+(1,2,3)"), SyntaxError);
  CHECK_THROWS_AS(parse_pd("X*(1,2,3,4)"), SyntaxError);
  CHECK_THROWS_AS(parse_pd("X+(1,2,3,4"), SyntaxError);
  CHECK_THROWS_AS(parse_pd("Q"), SyntaxError);
  CHECK_THROWS_AS(parse_pd("X+(1,2,a,4)"), SyntaxError);
  try {
    parse_pd("O X+(1,2,3)");
    FAIL("no throw");
  } catch (const SyntaxError& e) {
    CHECK(std::string(e.what()).find("X+(1,2,3)") != std::string::npos);
  }
}

TEST_CASE("parse: validation errors") {
  CHECK_THROWS_AS(parse_pd(""), ValidationError);
  CHECK_THROWS_AS(parse_pd("# nothing"), ValidationError);
  CHECK_THROWS_AS(parse_pd("X+(1,2,3,4)"), ValidationError);             // edges occur once
  CHECK_THROWS_AS(parse_pd("X+(0,0,1,1)"), SyntaxError);                 // ids start at 1
  CHECK_THROWS_AS(parse_pd("X+(1,2,1,2)"), ValidationError);             // opposite slots
  CHECK_THROWS_AS(parse_pd("X+(1,1,2,2) X+(1,1,2,2)"), ValidationError); // four occurrences
}

TEST_CASE("parse: orientation is enforced") {
  // Every edge appears twice, but as an oriented positive diagram edge 1 has
  // two incoming ends. Read with negative markers it is the left trefoil.
  CHECK_THROWS_AS(parse_pd("X+(1,4,2,5) X+(3,6,4,1) X+(5,2,6,3)"), ValidationError);
  const SingularDiagram left = parse_pd("X-(1,4,2,5) X-(3,6,4,1) X-(5,2,6,3)");
  CHECK(counts(left) == CrossingCounts{0, 3, 0});
  CHECK_THROWS_AS(parse_pd("X+(1,2,2,1)"), ValidationError);
  CHECK_NOTHROW(parse_pd("X+(1,1,2,2)"));
  CHECK_NOTHROW(parse_pd("X-(1,2,2,1)"));
  CHECK_NOTHROW(parse_pd("Xs(1,1,2,2)"));
  CHECK_THROWS_AS(parse_pd("Xs(1,2,2,1)"), ValidationError);
}

TEST_CASE("parse: arbitrary edge identifiers") {
  const SingularDiagram a = parse_pd("X+(10,10,700,700)");
  CHECK(a.edge_count() == 2);
  CHECK(smooth(a, State(1, 0)).circle_count == smooth(parse_pd("X+(1,1,2,2)"), State(1, 0)).circle_count);
}

TEST_CASE("serialize round trip") {
  for (const auto& f : testing::corpus().fixtures) {
    const std::string text = f.diagram.serialize();
    CHECK(parse_pd(text) == f.diagram);
    CHECK(parse_pd(text).serialize() == text);
  }
  CHECK(parse_pd("  O\n\tX+(1,1,2,2)   O ").serialize() == "O X+(1,1,2,2) O");
}

TEST_CASE("counts") {
  CHECK(counts(testing::fixture("trefoil")) == CrossingCounts{3, 0, 0});
  CHECK(counts(testing::fixture("fi_kink")) == CrossingCounts{0, 0, 1});
  CHECK(counts(testing::fixture("figure_eight")) == CrossingCounts{2, 2, 0});
  for (const auto& f : testing::corpus().fixtures) {
    const CrossingCounts k = counts(f.diagram);
    CHECK(k.n_plus + k.n_minus + k.singular == f.diagram.crossing_count());
  }
}

TEST_CASE("resolve double points") {
  const SingularDiagram d = testing::fixture("sing_trefoil_2");
  const CrossingCounts k = counts(d);
  REQUIRE(k.singular == 2);
  const auto points = d.singular_crossings();
  const SingularDiagram none = resolve_double_points(d, {});
  CHECK(counts(none) == CrossingCounts{k.n_plus, k.n_minus + 2, 0});
  const int first[] = {points[0]};
  CHECK(counts(resolve_double_points(d, first)) == CrossingCounts{k.n_plus + 1, k.n_minus + 1, 0});
  CHECK(counts(resolve_double_points(d, points)) == CrossingCounts{k.n_plus + 2, k.n_minus, 0});
  const int ordinary[] = {0};
  REQUIRE(d.crossings()[0].kind == CrossingKind::Positive);
  CHECK_THROWS_AS(resolve_double_points(d, ordinary), DomainError);
  CHECK(resolve_double_points_mask(d, 0b01) == resolve_double_points(d, first));
  CHECK(resolve_one(resolve_one(d, points[0], true), points[1], false) == resolve_double_points(d, first));

  const SingularDiagram one = testing::fixture("sing_trefoil");
  CHECK(counts(resolve_double_points(one, {})).n_minus == counts(one).n_minus + 1);
}

TEST_CASE("resolution of a double point tuple") {
  const Crossing s{CrossingKind::Singular, {1, 2, 3, 4}};
  CHECK(resolve_crossing(s, true) == Crossing{CrossingKind::Positive, {1, 2, 3, 4}});
  CHECK(resolve_crossing(s, false) == Crossing{CrossingKind::Negative, {4, 1, 2, 3}});
  // Resolving keeps the diagram consistently oriented.
  for (const auto& f : testing::corpus().fixtures) {
    const auto n = static_cast<std::uint32_t>(f.diagram.singular_crossings().size());
    for (std::uint32_t m = 0; m < (1U << n); ++m) CHECK_NOTHROW(resolve_double_points_mask(f.diagram, m));
  }
}

TEST_CASE("states") {
  const State s(5, 0b10110);
  CHECK(s.weight() == 3);
  CHECK(s.contains(1));
  CHECK_FALSE(s.contains(0));
  CHECK(s.with(0).bits() == 0b10111);
  CHECK(s.without(4).bits() == 0b00110);
  CHECK_THROWS_AS(State(3, 0b1000), DomainError);
  CHECK_THROWS_AS(smooth(testing::fixture("trefoil"), State(2, 0)), DomainError);
  CHECK_THROWS_AS(smooth(testing::fixture("fi_kink"), State(1, 0)), DomainError);
}

TEST_CASE("smooth: small cases") {
  CHECK(smooth(parse_pd("O"), State(0)).circle_count == 1);
  CHECK(smooth(parse_pd("O O"), State(0)).circle_count == 2);
  // Both smoothings of a kink give {1, 2} circles.
  for (const char* kink : {"X+(1,1,2,2)", "X-(1,2,2,1)"}) {
    const SingularDiagram d = parse_pd(kink);
    const int zero = smooth(d, State(1, 0)).circle_count;
    const int one = smooth(d, State(1, 1)).circle_count;
    CHECK(std::min(zero, one) == 1);
    CHECK(std::max(zero, one) == 2);
  }
  // Positive kink: oriented (0-)smoothing splits off the loop.
  CHECK(smooth(parse_pd("X+(1,1,2,2)"), State(1, 0)).circle_count == 2);
  CHECK(smooth(parse_pd("X-(1,2,2,1)"), State(1, 1)).circle_count == 2);
  // Recorded in trefoil.pd.
  CHECK(smooth(testing::fixture("trefoil"), State(3, 0)).circle_count == 2);
}

TEST_CASE("smooth agrees with an independent circle walk") {
  std::vector<SingularDiagram> diagrams;
  for (const auto& f : testing::corpus().fixtures) {
    if (counts(f.diagram).singular == 0 && f.diagram.crossing_count() <= 10) diagrams.push_back(f.diagram);
  }
  for (const auto& r : testing::random_braids(7, 40, 8, 0)) diagrams.push_back(r.diagram);
  for (const auto& d : diagrams) {
    const int n = d.crossing_count();
    for (std::uint32_t s = 0; s < (1U << n); ++s) {
      const CircleDecomposition c = smooth(d, State(n, s));
      REQUIRE(c.circle_count == testing::circle_count(d, s));
      CHECK(c.circle_count >= 1);
      CHECK(c.free_loops == d.free_loops());
      // Flipping one crossing is a saddle: merge or split.
      for (int x = 0; x < n; ++x) {
        const int other = testing::circle_count(d, s ^ (1U << x));
        CHECK(std::abs(other - c.circle_count) == 1);
      }
      // The arcs at each crossing sit on the recorded circles.
      for (int x = 0; x < n; ++x) {
        const auto& slots = d.slots(x);
        CHECK(c.arc_circles[static_cast<std::size_t>(x)][0] == c.circle_of_edge[static_cast<std::size_t>(slots[0])]);
        CHECK(c.arc_circles[static_cast<std::size_t>(x)][1] == c.circle_of_edge[static_cast<std::size_t>(slots[2])]);
      }
    }
  }
}

TEST_CASE("circle numbering is canonical") {
  const SingularDiagram d = testing::fixture("figure_eight");
  const int n = d.crossing_count();
  for (std::uint32_t s = 0; s < (1U << n); ++s) {
    const CircleDecomposition c = smooth(d, State(n, s));
    int next = 0;
    for (int circle : c.circle_of_edge) {
      CHECK(circle <= next);
      if (circle == next) ++next;
    }
    CHECK(next + c.free_loops == c.circle_count);
  }
}

TEST_CASE("isolated double points") {
  CHECK(is_isolated_double_point(parse_pd("Xs(1,1,2,2)"), 0));
  const SingularDiagram t = testing::fixture("sing_trefoil");
  for (int c = 0; c < t.crossing_count(); ++c) CHECK_FALSE(is_isolated_double_point(t, c));
  const SingularDiagram fi = testing::fixture("fi_trefoil");
  CHECK(is_isolated_double_point(fi, 3));
  CHECK_FALSE(is_isolated_double_point(fi, 0));
}

TEST_CASE("braid closures") {
  const SingularDiagram t = braid_closure(2, parse_braid_word("1 1 1"));
  CHECK(counts(t) == CrossingCounts{3, 0, 0});
  CHECK(t.edge_count() == 6);
  CHECK(counts(braid_closure(3, parse_braid_word("1 -2 t1"))) == CrossingCounts{1, 1, 1});
  CHECK(braid_closure(3, parse_braid_word("1")).free_loops() == 1);
  CHECK_THROWS_AS(parse_braid_word("1 x"), SyntaxError);
  CHECK_THROWS_AS(braid_closure(2, parse_braid_word("2")), DomainError);
  // Closures of the same word on more strands gain free loops.
  CHECK(smooth(braid_closure(4, parse_braid_word("1 1")), State(2, 0)).circle_count == 4);
}
