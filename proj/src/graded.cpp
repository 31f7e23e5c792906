#include "stringtop/graded.hpp"

#include <numeric>
#include <stdexcept>

#include "stringtop/error.hpp"
#include "stringtop/parallel.hpp"

namespace stringtop {

void GradedBasis::add(int degree, std::string label) {
  auto& list = by_degree_[degree];
  for (const auto& l : list)
    if (l == label) throw ValidationError("duplicate basis label '" + label + "' in degree " + std::to_string(degree));
  list.push_back(std::move(label));
}

const std::vector<std::string>& GradedBasis::labels(int degree) const {
  static const std::vector<std::string> empty;
  auto it = by_degree_.find(degree);
  return it == by_degree_.end() ? empty : it->second;
}

std::size_t GradedBasis::dim(int degree) const { return labels(degree).size(); }

std::vector<int> GradedBasis::degrees() const {
  std::vector<int> out;
  for (const auto& [d, l] : by_degree_)
    if (!l.empty()) out.push_back(d);
  return out;
}

long GradedBasis::index_of(int degree, const std::string& label) const {
  const auto& l = labels(degree);
  for (std::size_t i = 0; i < l.size(); ++i)
    if (l[i] == label) return static_cast<long>(i);
  return -1;
}

Matrix LinearMapByDegree::block(int p) const {
  auto it = blocks.find(p);
  if (it != blocks.end()) return it->second;
  return Matrix(target.dim(p + degree), source.dim(p));
}

void LinearMapByDegree::set_block(int p, Matrix m) {
  if (m.rows() != target.dim(p + degree) || m.cols() != source.dim(p))
    throw std::invalid_argument("block shape does not match bases at degree " + std::to_string(p));
  blocks[p] = std::move(m);
}

bool LinearMapByDegree::is_zero() const {
  for (const auto& [p, m] : blocks)
    if (!m.is_zero()) return false;
  return true;
}

LinearMapByDegree compose(const LinearMapByDegree& outer, const LinearMapByDegree& inner) {
  if (!(outer.source == inner.target)) throw Error("compose: basis mismatch");
  LinearMapByDegree out{inner.source, outer.target, inner.degree + outer.degree, {}};
  for (const auto& [p, m] : inner.blocks) out.blocks[p] = outer.block(p + inner.degree) * m;
  return out;
}

ChainComplex make_complex(GradedBasis basis, std::map<int, Matrix> blocks, int bottom, int top, bool zero_below) {
  ChainComplex c;
  c.differential.source = basis;
  c.differential.target = basis;
  c.differential.degree = 1;
  c.basis = std::move(basis);
  c.bottom = bottom;
  c.top = top;
  c.zero_below = zero_below;
  for (auto& [p, m] : blocks) {
    if (p < bottom || p >= top) throw std::invalid_argument("differential block outside stored range");
    c.differential.set_block(p, std::move(m));
  }
  return c;
}

std::size_t HomologySummary::betti(int p) const {
  auto it = degrees.find(p);
  return it == degrees.end() ? 0 : it->second.betti;
}

HomologyDegree homology_at(const Matrix& incoming, const Matrix& outgoing, std::size_t dim) {
  if (incoming.rows() != dim || outgoing.cols() != dim) throw std::invalid_argument("homology_at: shape mismatch");
  HomologyDegree h;
  const auto cocycles = nullspace(outgoing);
  h.cocycle_dim = cocycles.size();
  Matrix m(dim, incoming.cols() + cocycles.size());
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < incoming.cols(); ++c) m(r, c) = incoming(r, c);
    for (std::size_t c = 0; c < cocycles.size(); ++c) m(r, incoming.cols() + c) = cocycles[c][r];
  }
  for (auto p : rref(m)) {
    if (p < incoming.cols()) {
      ++h.boundary_rank;
    } else {
      h.representatives.push_back(cocycles[p - incoming.cols()]);
    }
  }
  h.betti = h.representatives.size();
  return h;
}

Matrix homology_projection(const Matrix& incoming, const HomologyDegree& h, std::size_t dim) {
  std::vector<Vector> columns;
  {
    Matrix b = incoming;
    for (auto p : rref(b)) columns.push_back(incoming.column(p));
  }
  const std::size_t nb = columns.size();
  for (const auto& r : h.representatives) columns.push_back(r);
  for (std::size_t i = 0; i < dim; ++i) {
    Vector e(dim);
    e[i] = 1;
    columns.push_back(std::move(e));
  }
  Matrix all = Matrix::from_columns(dim, columns);
  std::vector<Vector> chosen;
  for (auto p : rref(all)) chosen.push_back(columns[p]);
  if (chosen.size() != dim) throw std::logic_error("homology_projection: completion failed");
  const Matrix inv = inverse(Matrix::from_columns(dim, chosen));
  Matrix proj(h.betti, dim);
  for (std::size_t i = 0; i < h.betti; ++i)
    for (std::size_t c = 0; c < dim; ++c) proj(i, c) = inv(nb + i, c);
  return proj;
}

namespace {

Matrix incoming_block(const ChainComplex& c, int p) {
  if (c.has_block(p - 1)) return c.d(p - 1);
  if (p - 1 < c.bottom && c.zero_below) return Matrix(c.basis.dim(p), 0);
  throw TruncationError("differential into degree " + std::to_string(p) + " is not stored");
}

void check_square_zero(const ChainComplex& c, int lo, int hi) {
  for (int q = lo - 1; q <= hi + 1; ++q) {
    if (!c.has_block(q) || !c.has_block(q - 1)) continue;
    if (!(c.d(q) * c.d(q - 1)).is_zero()) throw NotAComplexError(q - 1, "d o d is nonzero");
  }
}

}  // namespace

HomologySummary homology(const ChainComplex& complex, int lo, int hi) {
  if (hi >= complex.top)
    throw TruncationError("homology requested up to degree " + std::to_string(hi) + " but the complex is stored only through degree " +
                          std::to_string(complex.top));
  if (lo < complex.bottom && !complex.zero_below)
    throw TruncationError("homology requested from degree " + std::to_string(lo) + " below stored degree " +
                          std::to_string(complex.bottom));
  check_square_zero(complex, lo, hi);
  HomologySummary out;
  out.valid_up_to = hi;
  if (hi < lo) return out;
  std::vector<int> degs;
  for (int p = lo; p <= hi; ++p) degs.push_back(p);
  std::vector<HomologyDegree> results(degs.size());
  parallel_for(degs.size(), [&](std::size_t i) {
    const int p = degs[i];
    if (p < complex.bottom) return;
    results[i] = homology_at(incoming_block(complex, p), complex.d(p), complex.basis.dim(p));
  });
  for (std::size_t i = 0; i < degs.size(); ++i) out.degrees[degs[i]] = std::move(results[i]);
  return out;
}

LinearMapByDegree hom_complex_differential(const LinearMapByDegree& phi, const ChainComplex& source,
                                           const ChainComplex& target) {
  if (!(phi.source == source.basis) || !(phi.target == target.basis))
    throw Error("hom_complex_differential: basis mismatch between map and complexes");
  LinearMapByDegree out{source.basis, target.basis, phi.degree + 1, {}};
  const Rational sign = sign_power(phi.degree);
  for (int p = source.bottom; p < source.top; ++p) {
    if (!target.has_block(p + phi.degree)) continue;
    Matrix m = target.d(p + phi.degree) * phi.block(p) - sign * (phi.block(p + 1) * source.d(p));
    out.blocks[p] = std::move(m);
  }
  return out;
}

GradedBasis graded_dual(const GradedBasis& basis) {
  GradedBasis out;
  for (int p : basis.degrees())
    for (const auto& l : basis.labels(p)) out.add(-p, l);
  return out;
}

LinearMapByDegree graded_dual(const LinearMapByDegree& map) {
  LinearMapByDegree out{graded_dual(map.target), graded_dual(map.source), map.degree, {}};
  const int k = map.degree;
  for (const auto& [p, m] : map.blocks) {
    const Rational s = sign_power(static_cast<long>(k) * (p + 1));
    out.blocks[-(p + k)] = s * m.transpose();
  }
  return out;
}

std::pair<GradedBasis, LinearMapByDegree> graded_dual(const GradedBasis& basis, const LinearMapByDegree& map) {
  return {graded_dual(basis), graded_dual(map)};
}

ChainComplex graded_dual(const ChainComplex& complex) {
  ChainComplex out;
  out.basis = graded_dual(complex.basis);
  out.differential = graded_dual(complex.differential);
  out.bottom = -complex.top;
  out.top = -complex.bottom;
  out.zero_below = false;
  if (complex.zero_below) {
    // The original vanishes below `bottom`, so the dual vanishes above -bottom.
    out.top = -complex.bottom + 1;
    out.differential.blocks[-complex.bottom] = Matrix(0, complex.basis.dim(complex.bottom));
  }
  return out;
}

int koszul_sign(std::span<const int> moved_left, std::span<const int> moved_right) {
  const long l = std::accumulate(moved_left.begin(), moved_left.end(), 0L);
  const long r = std::accumulate(moved_right.begin(), moved_right.end(), 0L);
  return parity_sign(l * r);
}

}  // namespace stringtop
