// One line per acceptance criterion; exit status 1 if any fails.
#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include "skh/cli.hpp"
#include "skh/frobenius.hpp"
#include "skh/homology.hpp"
#include "skh/khovanov.hpp"
#include "skh/polynomial.hpp"
#include "support.hpp"

using namespace skh;

namespace {

struct Result {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
  void note(const std::string& summary) { detail = pass ? summary : summary + "; first failure: " + detail; }
};

int failures = 0;

void criterion(int number, const std::string& title, const std::function<Result()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Result r;
  try {
    r = body();
  } catch (const std::exception& e) {
    r.fail(std::string("exception: ") + e.what());
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("[%s] %2d %s: %s (%.2fs)\n", r.pass ? "PASS" : "FAIL", number, title.c_str(), r.detail.c_str(), s);
  std::fflush(stdout);
  if (!r.pass) ++failures;
}

std::vector<const Fixture*> fixtures_where(const std::function<bool(const SingularDiagram&)>& keep) {
  std::vector<const Fixture*> out;
  for (const auto& f : testing::corpus().fixtures) {
    if (keep(f.diagram)) out.push_back(&f);
  }
  return out;
}

int rank_of(const SingularDiagram& d) { return counts(d).singular; }

Result algebra() {
  using namespace frobenius;
  Result r;
  int cases = 0;
  const std::array<Label, 2> labels = {Label::One, Label::X};
  auto mul = [](AlgElem a, AlgElem b) { return mu(tensor(a, b)); };
  // (D (x) id) and (id (x) D) on a basis tensor, as sets of triples.
  auto triple = [](Label a, Label b, Label c) {
    return 1U << (4 * static_cast<unsigned>(a) + 2 * static_cast<unsigned>(b) + static_cast<unsigned>(c));
  };
  for (Label a : labels) {
    for (Label b : labels) {
      for (Label c : labels) {
        ++cases;
        if (!(mul(mul(a, b), c) == mul(a, mul(b, c)))) r.fail("m not associative");
      }
    }
    unsigned left = 0, right = 0;
    const TensorElem d = delta(AlgElem(a));
    for (Label l : labels) {
      for (Label m : labels) {
        if (!d.has(l, m)) continue;
        const TensorElem dl = delta(AlgElem(l));
        const TensorElem dr = delta(AlgElem(m));
        for (Label x : labels) {
          for (Label y : labels) {
            if (dl.has(x, y)) left ^= triple(x, y, m);
            if (dr.has(x, y)) right ^= triple(l, x, y);
          }
        }
      }
    }
    ++cases;
    if (left != right) r.fail("D not coassociative");
  }
  for (Label a : labels) {
    for (Label b : labels) {
      // D(ab) = (m (x) id)(a (x) D(b))
      TensorElem rhs;
      const TensorElem db = delta(AlgElem(b));
      for (Label l : labels) {
        for (Label m : labels) {
          if (db.has(l, m)) rhs = rhs + tensor(mul(a, l), AlgElem(m));
        }
      }
      ++cases;
      if (!(delta(mul(a, b)) == rhs)) r.fail("Frobenius relation fails");
      ++cases;
      if (!mu(delta(mu(TensorElem::basis(a, b)))).is_zero()) r.fail("m D m != 0");
    }
    ++cases;
    if (!delta(mu(delta(AlgElem(a)))).is_zero()) r.fail("D m D != 0");
  }
  r.note(std::to_string(cases) + " basis cases");
  return r;
}

Result chain_checks() {
  Result r;
  std::vector<SingularDiagram> diagrams;
  for (const auto& f : testing::corpus().fixtures) diagrams.push_back(f.diagram);
  const std::size_t corpus_size = diagrams.size();
  for (const auto& b : testing::random_braids(2024, 120, 8, 2)) diagrams.push_back(b.diagram);
  std::size_t complexes = 0, maps = 0;
  for (const auto& d : diagrams) {
    const ResolutionCube rc = build_resolution_cube(d);
    for (const auto& v : rc.vertices) {
      ++complexes;
      if (!verify_complex(*v->complex())) r.fail("d o d != 0 on " + v->diagram().serialize());
    }
    for (std::uint32_t a = 0; a < rc.vertices.size(); ++a) {
      for (int s = 0; s < rc.cube.dimension(); ++s) {
        if ((a >> s) & 1U) continue;
        ++maps;
        if (!verify_chain_map(rc.cube.edge(a, s))) r.fail("genus-1 map not a chain map on " + d.serialize());
      }
    }
    if (!verify_complex(mcone(rc.cube))) r.fail("singular complex fails d o d = 0 on " + d.serialize());
    for (int b : d.singular_crossings()) {
      if (!verify_genus1_factorization(d, {}, b)) r.fail("factorization fails on " + d.serialize());
    }
  }
  r.note(std::to_string(corpus_size) + " fixtures + " + std::to_string(diagrams.size() - corpus_size) +
             " random diagrams, " + std::to_string(complexes) + " complexes, " + std::to_string(maps) + " genus-1 maps");
  return r;
}

Result conventions() {
  Result r;
  const auto ordinary = fixtures_where([](const SingularDiagram& d) { return rank_of(d) == 0; });
  for (const Fixture* f : ordinary) {
    const LaurentPoly chi = euler_characteristic(betti(*build_complex(f->diagram).complex()));
    if (chi != jones_state_sum(f->diagram)) r.fail(f->entry.name + ": " + chi.to_string());
  }
  r.note(std::to_string(ordinary.size()) + " ordinary fixtures");
  return r;
}

Result derivative() {
  Result r;
  std::set<int> ranks;
  const auto singular = fixtures_where([](const SingularDiagram& d) { return rank_of(d) > 0; });
  for (const Fixture* f : singular) {
    ranks.insert(rank_of(f->diagram));
    const LaurentPoly chi = euler_characteristic(betti(build_singular_complex(f->diagram)));
    if (chi != vassiliev_derivative(f->diagram)) r.fail(f->entry.name + ": " + chi.to_string());
  }
  for (int k : {1, 2, 3}) {
    if (!ranks.contains(k)) r.fail("no fixture with " + std::to_string(k) + " double points");
  }
  r.note(std::to_string(singular.size()) + " singular fixtures, r in {1,2,3}");
  return r;
}

Result invariance() {
  Result r;
  std::set<Move> moves;
  int pairs = 0;
  for (const auto& f : testing::corpus().fixtures) {
    if (!f.entry.pair) continue;
    ++pairs;
    moves.insert(*f.entry.move);
    if (betti(build_singular_complex(f.diagram)) != betti(build_singular_complex(testing::fixture(*f.entry.pair)))) {
      r.fail(f.entry.name + " vs " + *f.entry.pair);
    }
  }
  for (Move m : {Move::RI, Move::RII, Move::RIII, Move::S1, Move::S2, Move::S3}) {
    if (!moves.contains(m)) r.fail("no pair for move " + std::string(move_name(m)));
  }
  r.note(std::to_string(pairs) + " pairs covering RI, RII, RIII, S1, S2, S3");
  return r;
}

Result les() {
  Result r;
  int checks = 0;
  for (const auto& f : testing::corpus().fixtures) {
    for (int b : f.diagram.singular_crossings()) {
      ++checks;
      const LesReport report = les_check(f.diagram, b);
      if (!report.holds()) r.fail(f.entry.name + " @" + std::to_string(b));
    }
  }
  r.note(std::to_string(checks) + " (fixture, double point) choices");
  return r;
}

Result fi() {
  Result r;
  const auto list = fixtures_where(has_fi_double_point);
  for (const Fixture* f : list) {
    if (!betti(build_singular_complex(f->diagram)).empty()) r.fail(f->entry.name + " has nonzero homology");
  }
  const LesReport kink = les_check(testing::fixture("fi_kink"), 0);
  if (!kink.phi_isomorphism) r.fail("genus-1 map on the kink is not an isomorphism");
  r.note(std::to_string(list.size()) + " FI fixtures vanish; kink map is an isomorphism");
  return r;
}

Result order_independence() {
  Result r;
  int orders = 0;
  const auto list = fixtures_where([](const SingularDiagram& d) { return rank_of(d) == 2 || rank_of(d) == 3; });
  for (const Fixture* f : list) {
    std::vector<int> order = f->diagram.singular_crossings();
    const BettiTable reference = betti(build_singular_complex(f->diagram, order));
    do {
      ++orders;
      if (betti(build_singular_complex(f->diagram, order)) != reference) r.fail(f->entry.name);
    } while (std::next_permutation(order.begin(), order.end()));
  }
  r.note(std::to_string(list.size()) + " fixtures, " + std::to_string(orders) + " orders");
  return r;
}

Result degenerate() {
  Result r;
  int checks = 0;
  for (const auto& f : testing::corpus().fixtures) {
    const SingularDiagram& d = f.diagram;
    if (rank_of(d) == 0) {
      ++checks;
      const KhovanovComplex k = build_complex(d);
      if (!(build_singular_complex(d) == *k.complex())) r.fail(f.entry.name + ": r = 0 pipelines differ");
      if (d.crossing_count() <= 8 && !betti(*cone(identity_map(k.complex())).complex).empty()) {
        r.fail(f.entry.name + ": cone of identity not acyclic");
      }
    } else if (rank_of(d) == 1) {
      ++checks;
      const CubeOfComplexes cube = build_cube(d);
      if (!(mcone(cube) == *cone(cube.edge(0, 0)).complex)) r.fail(f.entry.name + ": mcone differs from cone");
    }
  }
  r.note(std::to_string(checks) + " fixtures");
  return r;
}

Result performance() {
  Result r;
  cli::Options options;
  options.fixtures = default_fixture_dir();
  auto timed = [](const std::function<cli::Outcome()>& f, double& seconds) {
    const auto start = std::chrono::steady_clock::now();
    cli::Outcome o = f();
    seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return o;
  };
  double verify_s = 0, twelve_s = 0;
  const cli::Outcome v = timed([&] { return cli::cmd_verify("all", options); }, verify_s);
  if (v.exit_code != 0) r.fail("verify all failed");
  if (verify_s > 300) r.fail("verify all took too long");
  const SingularDiagram& twelve = testing::fixture("twelve");
  if (twelve.crossing_count() != 12 || rank_of(twelve) != 0) r.fail("twelve is not a 12-crossing ordinary diagram");
  const cli::Outcome c = timed([&] { return cli::cmd_compute((default_fixture_dir() / "twelve.pd").string(), options); }, twelve_s);
  if (c.exit_code != 0) r.fail("compute on twelve failed");
  if (twelve_s > 60) r.fail("12-crossing computation took too long");
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(2);
  s << "verify all " << verify_s << "s (limit 300s), 12 crossings " << twelve_s << "s (limit 60s)";
  r.note(s.str());
  return r;
}

}  // namespace

int main() {
  criterion(1, "Frobenius algebra identities", algebra);
  criterion(2, "d o d = 0 and genus-1 chain maps", chain_checks);
  criterion(3, "Euler characteristic equals Jones state sum", conventions);
  criterion(4, "Euler characteristic equals Vassiliev derivative", derivative);
  criterion(5, "invariance under moves", invariance);
  criterion(6, "long exact sequence", les);
  criterion(7, "FI relation", fi);
  criterion(8, "double point order independence", order_independence);
  criterion(9, "degenerate cases", degenerate);
  criterion(10, "performance", performance);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
