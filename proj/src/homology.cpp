#include "skh/homology.hpp"

#include <algorithm>
#include <mutex>
#include <optional>
#include <set>
#include <string>

#include "skh/errors.hpp"
#include "skh/khovanov.hpp"
#include "skh/parallel.hpp"
#include "skh/polynomial.hpp"

namespace skh {

namespace {

const std::vector<f2::BitVector> kNoReps;

std::string describe(Bidegree b) { return "(" + std::to_string(b.i) + "," + std::to_string(b.j) + ")"; }

void require_complex(const BigradedComplex& x) {
  if (auto defect = find_complex_defect(x)) throw ComplexInvalid("d o d != 0 at " + describe(*defect));
}

f2::BitVector apply_or_zero(const f2::BitMatrix& m, const f2::BitVector& v, std::size_t rows) {
  if (m.rows() != rows || m.cols() != v.size()) return f2::BitVector(rows);
  return m.apply(v);
}

}  // namespace

std::size_t rank_f2(const f2::BitMatrix& m) { return f2::rank(m); }

BettiTable betti(const BigradedComplex& x) {
  require_complex(x);
  const std::vector<Bidegree> support = x.support();
  std::vector<std::size_t> ranks(support.size());
  // Largest blocks first so the slowest eliminations start early.
  std::vector<std::size_t> order(support.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return x.d(support[a]).rows() * x.d(support[a]).cols() > x.d(support[b]).rows() * x.d(support[b]).cols();
  });
  parallel_for(order.size(), [&](std::size_t k) {
    const std::size_t at = order[k];
    ranks[at] = rank_f2(x.d(support[at]));
  });
  std::map<Bidegree, std::size_t> rank_at;
  for (std::size_t k = 0; k < support.size(); ++k) rank_at[support[k]] = ranks[k];

  BettiTable out;
  for (std::size_t k = 0; k < support.size(); ++k) {
    const Bidegree b = support[k];
    const auto below = rank_at.find({b.i - 1, b.j});
    const std::size_t incoming = below == rank_at.end() ? 0 : below->second;
    const int h = x.dim(b) - static_cast<int>(ranks[k]) - static_cast<int>(incoming);
    if (h != 0) out[b] = h;
  }
  return out;
}

HomologyBasis::HomologyBasis(const BigradedComplex& x) {
  require_complex(x);
  const std::vector<Bidegree> support = x.support();
  std::vector<Degree> built(support.size());
  parallel_for(support.size(), [&](std::size_t k) {
    const Bidegree b = support[k];
    const std::size_t n = static_cast<std::size_t>(x.dim(b));
    Degree& deg = built[k];
    deg.span = f2::EchelonSpan(n);
    const f2::BitMatrix& incoming = x.d({b.i - 1, b.j});
    if (incoming.rows() == n) {
      const f2::BitMatrix columns = incoming.transpose();
      for (std::size_t c = 0; c < columns.rows(); ++c) deg.span.insert(columns.row_vector(c), false);
    }
    const f2::BitMatrix& outgoing = x.d(b);
    std::vector<f2::BitVector> cycles;
    if (outgoing.rows() == 0) {
      for (std::size_t c = 0; c < n; ++c) {
        f2::BitVector v(n);
        v.set(c);
        cycles.push_back(std::move(v));
      }
    } else {
      cycles = f2::kernel_basis(outgoing);
    }
    for (auto& v : cycles) {
      if (deg.span.insert(v, true)) deg.reps.push_back(std::move(v));
    }
  });
  for (std::size_t k = 0; k < support.size(); ++k) degrees_.emplace(support[k], std::move(built[k]));
}

const std::vector<f2::BitVector>& HomologyBasis::representatives(Bidegree b) const {
  auto it = degrees_.find(b);
  return it == degrees_.end() ? kNoReps : it->second.reps;
}

BettiTable HomologyBasis::betti() const {
  BettiTable out;
  for (const auto& [b, deg] : degrees_) {
    if (!deg.reps.empty()) out[b] = static_cast<int>(deg.reps.size());
  }
  return out;
}

std::optional<f2::BitVector> HomologyBasis::coordinates(Bidegree b, const f2::BitVector& v) const {
  auto it = degrees_.find(b);
  if (it == degrees_.end()) {
    // No chain group here; only the empty vector lives in it.
    if (v.any()) return std::nullopt;
    return f2::BitVector(0);
  }
  f2::EchelonSpan::Reduction red = it->second.span.reduce(v);
  if (!red.in_span) return std::nullopt;
  f2::BitVector coords(it->second.reps.size());
  for (std::size_t k = 0; k < coords.size(); ++k) {
    if (k < red.coordinates.size() && red.coordinates.get(k)) coords.set(k);
  }
  return coords;
}

bool HomologyBasis::is_boundary(Bidegree b, const f2::BitVector& v) const {
  auto c = coordinates(b, v);
  return c.has_value() && !c->any();
}

std::map<Bidegree, f2::BitMatrix> induced_map(const GradedChainMap& f, const HomologyBasis& source,
                                              const HomologyBasis& target) {
  if (!verify_chain_map(f)) throw NotAChainMap("map does not commute with the differentials");
  std::map<Bidegree, f2::BitMatrix> out;
  for (const auto& [b, block] : f.source->blocks()) {
    const auto& reps = source.representatives(b);
    if (reps.empty()) continue;
    const std::size_t rows = static_cast<std::size_t>(f.target->dim(b));
    const f2::BitMatrix m = f.at(b);
    f2::BitMatrix induced(static_cast<std::size_t>(target.dimension(b)), reps.size());
    for (std::size_t k = 0; k < reps.size(); ++k) {
      const f2::BitVector image = apply_or_zero(m, reps[k], rows);
      auto coords = target.coordinates(b, image);
      if (!coords) throw InconsistentBasis("image of a cycle at " + describe(b) + " is not in the target cycle space");
      for (std::size_t t = 0; t < coords->size(); ++t) {
        if (coords->get(t)) induced.set(t, k);
      }
    }
    // Boundaries must go to boundaries.
    const f2::BitMatrix& incoming = f.source->d({b.i - 1, b.j});
    if (incoming.rows() == block.basis.size()) {
      const f2::BitMatrix columns = incoming.transpose();
      for (std::size_t c = 0; c < columns.rows(); ++c) {
        if (!target.is_boundary(b, apply_or_zero(m, columns.row_vector(c), rows))) {
          throw InconsistentBasis("image of a boundary at " + describe(b) + " is not a boundary");
        }
      }
    }
    out.emplace(b, std::move(induced));
  }
  return out;
}

CrossingChangeMap crossing_change_map(const SingularDiagram& diagram, int b) {
  if (b < 0 || b >= diagram.crossing_count() || diagram.crossings()[static_cast<std::size_t>(b)].kind != CrossingKind::Singular) {
    throw DomainError("crossing " + std::to_string(b) + " is not a double point");
  }
  const SingularDiagram minus = resolve_one(diagram, b, false);
  const SingularDiagram plus = resolve_one(diagram, b, true);
  const ResolutionCube cm = build_resolution_cube(minus);
  const ResolutionCube cp = build_resolution_cube(plus);
  const std::size_t vertices = cm.vertices.size();
  std::vector<GradedChainMap> maps(vertices);
  parallel_for(vertices, [&](std::size_t a) { maps[a] = genus1_map(*cm.vertices[a], *cp.vertices[a], b); });

  CrossingChangeMap out;
  out.minus = std::make_shared<const BigradedComplex>(mcone(cm.cube));
  out.plus = std::make_shared<const BigradedComplex>(mcone(cp.cube));
  out.map = mcone_map(cm.cube, cp.cube, maps, out.minus, out.plus);
  return out;
}

bool LesReport::holds() const { return euler_holds && failures().empty(); }

std::vector<LesRow> LesReport::failures() const {
  std::vector<LesRow> out;
  std::copy_if(rows.begin(), rows.end(), std::back_inserter(out), [](const LesRow& r) { return !r.holds(); });
  return out;
}

LesReport les_check(const SingularDiagram& diagram, int b) {
  if (diagram.counts().singular == 0) throw DomainError("diagram has no double point");
  const CrossingChangeMap change = crossing_change_map(diagram, b);
  const HomologyBasis hm(*change.minus);
  const HomologyBasis hp(*change.plus);
  const auto induced = induced_map(change.map, hm, hp);

  LesReport report;
  report.crossing = b;
  report.minus = hm.betti();
  report.plus = hp.betti();
  report.singular = betti(build_singular_complex(diagram));
  for (const auto& [at, m] : induced) {
    if (int r = static_cast<int>(rank_f2(m)); r != 0) report.induced_rank[at] = r;
  }
  auto value = [](const auto& table, Bidegree at) {
    auto it = table.find(at);
    return it == table.end() ? 0 : it->second;
  };

  std::set<Bidegree> degrees;
  for (const auto& [at, v] : report.singular) degrees.insert(at);
  for (const auto& [at, v] : report.plus) degrees.insert(at);
  for (const auto& [at, v] : report.minus) degrees.insert({at.i - 1, at.j});
  for (Bidegree at : degrees) {
    LesRow row;
    row.at = at;
    row.kh = value(report.singular, at);
    row.coker = value(report.plus, at) - value(report.induced_rank, at);
    const Bidegree next{at.i + 1, at.j};
    row.ker_next = value(report.minus, next) - value(report.induced_rank, next);
    report.rows.push_back(row);
  }

  report.euler_holds =
      euler_characteristic(report.singular) == euler_characteristic(report.plus) - euler_characteristic(report.minus);
  report.phi_isomorphism = report.minus == report.plus;
  for (const auto& [at, dim] : report.minus) {
    if (value(report.induced_rank, at) != dim) report.phi_isomorphism = false;
  }
  return report;
}

}  // namespace skh
