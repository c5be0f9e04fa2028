#include <doctest.h>

#include <set>

#include "skh/errors.hpp"
#include "skh/fixtures.hpp"
#include "support.hpp"

using namespace skh;

TEST_CASE("manifest parsing") {
  const auto entries = parse_manifest("# header\n a  a.pd\nb b.pd pair=a move=S2 # trailing\n\n");
  REQUIRE(entries.size() == 2);
  CHECK(entries[0].name == "a");
  CHECK_FALSE(entries[0].pair.has_value());
  CHECK(entries[1].pair == "a");
  CHECK(entries[1].move == Move::S2);
  CHECK_THROWS_AS(parse_manifest("a"), SyntaxError);
  CHECK_THROWS_AS(parse_manifest("a a.pd move=RI"), SyntaxError);
  CHECK_THROWS_AS(parse_manifest("a a.pd pair=b move=RV"), SyntaxError);
  CHECK_THROWS_AS(parse_manifest("a a.pd extra"), SyntaxError);
  CHECK_THROWS_AS(parse_manifest("a a.pd\na b.pd"), ValidationError);
  CHECK_THROWS_AS(parse_manifest("a a.pd pair=zzz move=RI"), ValidationError);
}

TEST_CASE("move names") {
  for (Move m : {Move::RI, Move::RII, Move::RIII, Move::S1, Move::S2, Move::S3}) CHECK(parse_move(move_name(m)) == m);
  CHECK_FALSE(parse_move("R4").has_value());
}

TEST_CASE("corpus coverage") {
  const Corpus& c = testing::corpus();
  std::set<Move> moves;
  std::set<int> ranks;
  int fi = 0;
  bool twelve = false;
  for (const auto& f : c.fixtures) {
    if (f.entry.move) moves.insert(*f.entry.move);
    ranks.insert(counts(f.diagram).singular);
    if (has_fi_double_point(f.diagram)) ++fi;
    if (counts(f.diagram).singular == 0 && f.diagram.crossing_count() == 12) twelve = true;
    // Paired diagrams differ as PD codes.
    if (f.entry.pair) CHECK_FALSE(f.diagram == testing::fixture(*f.entry.pair));
  }
  CHECK(moves.size() == 6);
  CHECK(ranks.contains(1));
  CHECK(ranks.contains(2));
  CHECK(ranks.contains(3));
  CHECK(fi >= 3);
  CHECK(twelve);
}
