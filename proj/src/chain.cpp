#include "skh/chain.hpp"

#include <bit>
#include <stdexcept>
#include <string>

#include "skh/errors.hpp"

namespace skh {

namespace {

const std::vector<BasisTag> kNoBasis;
const f2::BitMatrix kNoMatrix;

// Copies `src` into `dst` with its top-left corner at (row, col).
void paste(f2::BitMatrix& dst, const f2::BitMatrix& src, std::size_t row, std::size_t col) {
  for (std::size_t r = 0; r < src.rows(); ++r) {
    auto words = src.row(r);
    for (std::size_t k = 0; k < words.size(); ++k) {
      for (f2::Word w = words[k]; w != 0; w &= w - 1) {
        dst.set(row + r, col + k * f2::kWordBits + static_cast<std::size_t>(std::countr_zero(w)));
      }
    }
  }
}

std::string describe(Bidegree b) { return "(" + std::to_string(b.i) + "," + std::to_string(b.j) + ")"; }

// Vertex A sits in homological shift -(r - |A|): X_A^{i} lands in degree i - (r - |A|).
int cube_offset(int r, std::uint32_t a) { return r - std::popcount(a); }

// position[a][b] = first index of vertex a's summand in the total block at b.
// Summands are laid out by descending vertex.
std::vector<std::map<Bidegree, std::size_t>> cube_layout(const CubeOfComplexes& cube,
                                                         std::map<Bidegree, std::vector<BasisTag>>* bases) {
  const int r = cube.dimension();
  const std::uint32_t vertices = 1U << r;
  std::map<Bidegree, std::size_t> fill;
  std::vector<std::map<Bidegree, std::size_t>> position(vertices);
  for (std::uint32_t k = 0; k < vertices; ++k) {
    const std::uint32_t a = vertices - 1 - k;
    for (const auto& [b, block] : cube.vertex(a)->blocks()) {
      const Bidegree total{b.i - cube_offset(r, a), b.j};
      std::size_t& used = fill[total];
      position[a][total] = used;
      used += block.basis.size();
      if (bases != nullptr) {
        auto& dst = (*bases)[total];
        for (BasisTag t : block.basis) {
          t.vertex = a;
          dst.push_back(t);
        }
      }
    }
  }
  return position;
}

}  // namespace

BigradedComplex::BigradedComplex(std::map<Bidegree, std::vector<BasisTag>> bases) {
  for (auto& [b, basis] : bases) {
    if (!basis.empty()) blocks_[b].basis = std::move(basis);
  }
  for (auto& [b, block] : blocks_) {
    block.d = f2::BitMatrix(static_cast<std::size_t>(dim({b.i + 1, b.j})), block.basis.size());
  }
}

int BigradedComplex::dim(Bidegree b) const {
  auto it = blocks_.find(b);
  return it == blocks_.end() ? 0 : static_cast<int>(it->second.basis.size());
}

std::size_t BigradedComplex::total_dimension() const {
  std::size_t n = 0;
  for (const auto& [b, block] : blocks_) n += block.basis.size();
  return n;
}

std::vector<Bidegree> BigradedComplex::support() const {
  std::vector<Bidegree> out;
  out.reserve(blocks_.size());
  for (const auto& [b, block] : blocks_) out.push_back(b);
  return out;
}

const std::vector<BasisTag>& BigradedComplex::basis(Bidegree b) const {
  auto it = blocks_.find(b);
  return it == blocks_.end() ? kNoBasis : it->second.basis;
}

const f2::BitMatrix& BigradedComplex::d(Bidegree b) const {
  auto it = blocks_.find(b);
  return it == blocks_.end() ? kNoMatrix : it->second.d;
}

f2::BitMatrix& BigradedComplex::mutable_d(Bidegree b) {
  auto it = blocks_.find(b);
  if (it == blocks_.end()) throw std::out_of_range("no chain group at bidegree " + describe(b));
  return it->second.d;
}

f2::BitMatrix GradedChainMap::at(Bidegree b) const {
  if (auto it = blocks.find(b); it != blocks.end()) return it->second;
  return f2::BitMatrix(static_cast<std::size_t>(target->dim(b)), static_cast<std::size_t>(source->dim(b)));
}

GradedChainMap zero_map(ComplexPtr source, ComplexPtr target) { return GradedChainMap{std::move(source), std::move(target), {}}; }

GradedChainMap identity_map(ComplexPtr complex) {
  GradedChainMap f{complex, complex, {}};
  for (const auto& [b, block] : complex->blocks()) f.blocks.emplace(b, f2::BitMatrix::identity(block.basis.size()));
  return f;
}

GradedChainMap compose(const GradedChainMap& second, const GradedChainMap& first) {
  GradedChainMap out{first.source, second.target, {}};
  for (const auto& [b, m] : first.blocks) {
    auto it = second.blocks.find(b);
    if (it == second.blocks.end()) continue;
    out.blocks.emplace(b, it->second * m);
  }
  return out;
}

BigradedComplex shift(const BigradedComplex& x, int k, int l) {
  std::map<Bidegree, std::vector<BasisTag>> bases;
  for (const auto& [b, block] : x.blocks()) bases[{b.i + k, b.j + l}] = block.basis;
  BigradedComplex out(std::move(bases));
  for (const auto& [b, block] : x.blocks()) out.mutable_d({b.i + k, b.j + l}) = block.d;
  return out;
}

std::optional<Bidegree> find_complex_defect(const BigradedComplex& x) {
  for (const auto& [b, block] : x.blocks()) {
    const f2::BitMatrix& next = x.d({b.i + 1, b.j});
    if (next.cols() == 0) continue;
    if (!(next * block.d).is_zero()) return b;
  }
  return std::nullopt;
}

bool verify_complex(const BigradedComplex& x) { return !find_complex_defect(x).has_value(); }

bool verify_chain_map(const GradedChainMap& f) {
  // Check d_T f = f d_S at every bidegree where either side can be nonzero.
  std::map<Bidegree, bool> degrees;
  for (const auto& [b, block] : f.source->blocks()) degrees[b] = true;
  for (const auto& [b, block] : f.target->blocks()) degrees[b] = true;
  for (const auto& [b, unused] : degrees) {
    const Bidegree up{b.i + 1, b.j};
    const std::size_t up_target = static_cast<std::size_t>(f.target->dim(up));
    const std::size_t here_source = static_cast<std::size_t>(f.source->dim(b));
    if (up_target == 0 || here_source == 0) continue;
    const f2::BitMatrix lhs = f.target->dim(b) == 0 ? f2::BitMatrix(up_target, here_source) : f.target->d(b) * f.at(b);
    const f2::BitMatrix rhs = f.source->dim(up) == 0 ? f2::BitMatrix(up_target, here_source) : f.at(up) * f.source->d(b);
    if (!(lhs == rhs)) return false;
  }
  return true;
}

MappingCone cone(const GradedChainMap& f) {
  const BigradedComplex& x = *f.source;
  const BigradedComplex& y = *f.target;
  auto tagged = [](const std::vector<BasisTag>& basis, std::uint32_t side) {
    std::vector<BasisTag> out = basis;
    for (BasisTag& t : out) t.vertex = (t.vertex << 1) | side;
    return out;
  };

  std::map<Bidegree, std::vector<BasisTag>> bases;
  for (const auto& [b, block] : y.blocks()) bases[b] = tagged(block.basis, 1);
  for (const auto& [b, block] : x.blocks()) {
    auto& dst = bases[{b.i - 1, b.j}];
    auto part = tagged(block.basis, 0);
    dst.insert(dst.end(), part.begin(), part.end());
  }
  auto total = std::make_shared<BigradedComplex>(std::move(bases));

  for (const auto& [b, block] : total->blocks()) {
    // Domain Y^{i} + X^{i+1}, codomain Y^{i+1} + X^{i+2}.
    const Bidegree x_here{b.i + 1, b.j};
    const Bidegree y_up{b.i + 1, b.j};
    const std::size_t y_here_dim = static_cast<std::size_t>(y.dim(b));
    const std::size_t y_up_dim = static_cast<std::size_t>(y.dim(y_up));
    f2::BitMatrix& d = total->mutable_d(b);
    if (y_here_dim > 0 && y_up_dim > 0) paste(d, y.d(b), 0, 0);
    if (x.dim(x_here) > 0) {
      if (y_up_dim > 0) paste(d, f.at(x_here), 0, y_here_dim);
      if (x.dim({b.i + 2, b.j}) > 0) paste(d, x.d(x_here), y_up_dim, y_here_dim);
    }
  }

  MappingCone out;
  out.complex = total;
  out.inclusion = GradedChainMap{f.target, total, {}};
  for (const auto& [b, block] : y.blocks()) {
    f2::BitMatrix m(static_cast<std::size_t>(total->dim(b)), block.basis.size());
    for (std::size_t k = 0; k < block.basis.size(); ++k) m.set(k, k);
    out.inclusion.blocks.emplace(b, std::move(m));
  }
  auto shifted = std::make_shared<BigradedComplex>(shift(x, -1, 0));
  out.projection = GradedChainMap{total, shifted, {}};
  for (const auto& [b, block] : shifted->blocks()) {
    const std::size_t offset = static_cast<std::size_t>(y.dim(b));
    f2::BitMatrix m(block.basis.size(), static_cast<std::size_t>(total->dim(b)));
    for (std::size_t k = 0; k < block.basis.size(); ++k) m.set(k, offset + k);
    out.projection.blocks.emplace(b, std::move(m));
  }
  return out;
}

int nu(int t, std::uint32_t subset) {
  if (t >= 31) return 0;
  return std::popcount(subset >> (t + 1));
}

CubeOfComplexes::CubeOfComplexes(int dimension) : dimension_(dimension) {
  if (dimension < 0 || dimension > 20) throw DomainError("cube dimension out of range");
  vertices_.resize(std::size_t{1} << dimension);
}

void CubeOfComplexes::set_vertex(std::uint32_t a, ComplexPtr complex) { vertices_.at(a) = std::move(complex); }

const GradedChainMap& CubeOfComplexes::edge(std::uint32_t a, int s) const {
  auto it = edges_.find({a, s});
  if (it == edges_.end()) throw std::out_of_range("cube edge not set");
  return it->second;
}

void CubeOfComplexes::set_edge(std::uint32_t a, int s, GradedChainMap map) {
  if (s < 0 || s >= dimension_ || ((a >> s) & 1U)) throw DomainError("cube edge direction must lie outside the vertex");
  edges_.insert_or_assign({a, s}, std::move(map));
}

bool CubeOfComplexes::faces_commute() const {
  const std::uint32_t vertices = 1U << dimension_;
  for (std::uint32_t a = 0; a < vertices; ++a) {
    for (int s = 0; s < dimension_; ++s) {
      if ((a >> s) & 1U) continue;
      for (int t = s + 1; t < dimension_; ++t) {
        if ((a >> t) & 1U) continue;
        const GradedChainMap st = compose(edge(a | (1U << s), t), edge(a, s));
        const GradedChainMap ts = compose(edge(a | (1U << t), s), edge(a, t));
        const BigradedComplex& src = *vertex(a);
        for (const auto& [b, block] : src.blocks()) {
          if (!(st.at(b) == ts.at(b))) return false;
        }
      }
    }
  }
  return true;
}

BigradedComplex mcone(const CubeOfComplexes& cube) {
  const int r = cube.dimension();
  const std::uint32_t vertices = 1U << r;
  if (!cube.faces_commute()) throw FaceCommutationError("structure maps of the cube do not commute");

  auto offset = [r](std::uint32_t a) { return cube_offset(r, a); };
  std::map<Bidegree, std::vector<BasisTag>> bases;
  const auto position = cube_layout(cube, &bases);
  BigradedComplex total(std::move(bases));

  for (std::uint32_t a = 0; a < vertices; ++a) {
    const BigradedComplex& x = *cube.vertex(a);
    for (const auto& [b, block] : x.blocks()) {
      const Bidegree here{b.i - offset(a), b.j};
      const Bidegree up{here.i + 1, here.j};
      const std::size_t col = position[a].at(here);
      f2::BitMatrix& d = total.mutable_d(here);
      // Internal differential, sign (-1)^{r-|A|} = 1.
      if (x.dim({b.i + 1, b.j}) > 0) paste(d, block.d, position[a].at(up), col);
      // Structure maps, sign (-1)^{nu(s; A)} = 1.
      for (int s = 0; s < r; ++s) {
        if ((a >> s) & 1U) continue;
        const std::uint32_t next = a | (1U << s);
        const GradedChainMap& phi = cube.edge(a, s);
        auto it = phi.blocks.find(b);
        if (it == phi.blocks.end() || it->second.rows() == 0) continue;
        paste(d, it->second, position[next].at(up), col);
      }
    }
  }
  return total;
}

GradedChainMap mcone_map(const CubeOfComplexes& source, const CubeOfComplexes& target,
                         const std::vector<GradedChainMap>& vertex_maps, ComplexPtr source_total, ComplexPtr target_total) {
  const int r = source.dimension();
  const std::uint32_t vertices = 1U << r;
  if (target.dimension() != r || vertex_maps.size() != vertices) throw DomainError("cube map shape mismatch");
  const auto from = cube_layout(source, nullptr);
  const auto to = cube_layout(target, nullptr);
  GradedChainMap out{source_total, target_total, {}};
  for (std::uint32_t a = 0; a < vertices; ++a) {
    for (const auto& [b, m] : vertex_maps[a].blocks) {
      if (m.rows() == 0 || m.cols() == 0) continue;
      const Bidegree total{b.i - cube_offset(r, a), b.j};
      auto [it, inserted] = out.blocks.try_emplace(total);
      if (inserted) {
        it->second = f2::BitMatrix(static_cast<std::size_t>(target_total->dim(total)),
                                   static_cast<std::size_t>(source_total->dim(total)));
      }
      paste(it->second, m, to[a].at(total), from[a].at(total));
    }
  }
  return out;
}

LaurentPoly chain_euler_characteristic(const BigradedComplex& x) {
  LaurentPoly chi;
  for (const auto& [b, block] : x.blocks()) {
    const auto n = static_cast<std::int64_t>(block.basis.size());
    chi += LaurentPoly::monomial(b.j, b.i % 2 == 0 ? n : -n);
  }
  return chi;
}

}  // namespace skh
