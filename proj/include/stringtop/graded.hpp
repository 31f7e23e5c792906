#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stringtop/matrix.hpp"

namespace stringtop {

/// Degreewise finite basis with opaque labels. Degrees are cohomological
/// (V^k = V_{-k}); negative degrees are allowed.
class GradedBasis {
 public:
  GradedBasis() = default;

  /// Appends a label in the given degree; labels must be unique per degree.
  void add(int degree, std::string label);

  const std::vector<std::string>& labels(int degree) const;
  std::size_t dim(int degree) const;
  /// Degrees with at least one basis element, ascending.
  std::vector<int> degrees() const;
  /// Position of a label, or -1.
  long index_of(int degree, const std::string& label) const;

  friend bool operator==(const GradedBasis&, const GradedBasis&) = default;

 private:
  std::map<int, std::vector<std::string>> by_degree_;
};

/// A graded map of fixed degree k; block p is target(p+k) x source(p).
/// Missing blocks are zero.
struct LinearMapByDegree {
  GradedBasis source;
  GradedBasis target;
  int degree = 0;
  std::map<int, Matrix> blocks;

  /// Block at source degree p, materialized as zero if absent.
  Matrix block(int p) const;
  void set_block(int p, Matrix m);
  bool is_zero() const;
};

LinearMapByDegree compose(const LinearMapByDegree& outer, const LinearMapByDegree& inner);

/// Cochain complex with differential of degree +1. The basis is stored on
/// [bottom, top]; the differential blocks d^p exist for p in [bottom, top-1].
struct ChainComplex {
  GradedBasis basis;
  LinearMapByDegree differential;
  int bottom = 0;
  int top = 0;
  /// Whether the complex is known to vanish below `bottom`.
  bool zero_below = true;

  Matrix d(int p) const { return differential.block(p); }
  bool has_block(int p) const { return p >= bottom && p < top; }
};

/// Assembles a complex, checking block shapes against the basis.
ChainComplex make_complex(GradedBasis basis, std::map<int, Matrix> blocks, int bottom, int top,
                          bool zero_below = true);

struct HomologyDegree {
  std::size_t betti = 0;
  std::size_t cocycle_dim = 0;
  std::size_t boundary_rank = 0;
  /// Cocycles whose classes form a basis of H^p, chosen by RREF pivoting.
  std::vector<Vector> representatives;
};

struct HomologySummary {
  std::map<int, HomologyDegree> degrees;
  /// Every entry is certified up to and including this degree.
  int valid_up_to = 0;

  std::size_t betti(int p) const;
};

/// Homology at one degree from the incoming and outgoing differentials.
HomologyDegree homology_at(const Matrix& incoming, const Matrix& outgoing, std::size_t dim);

/// Linear map C^p -> H^p that kills boundaries and a fixed complement of the
/// cocycles and sends each representative to its unit vector. As a map onto
/// (H, 0) it is a chain map and a quasi-isomorphism.
Matrix homology_projection(const Matrix& incoming, const HomologyDegree& h, std::size_t dim);

/// Homology on [lo, hi]. Throws TruncationError when a needed block is not
/// stored and NotAComplexError when d o d != 0 near the range.
HomologySummary homology(const ChainComplex& complex, int lo, int hi);

/// D(phi) = d o phi - (-1)^k phi o d, a map of degree k+1.
LinearMapByDegree hom_complex_differential(const LinearMapByDegree& phi, const ChainComplex& source,
                                           const ChainComplex& target);

/// V^# with (V^#)^{-p} = (V^p)^#, labels kept.
GradedBasis graded_dual(const GradedBasis& basis);

/// Transpose of a degree-k map; the block coming from source degree p picks
/// up the sign (-1)^{k(p+1)}. The result again has degree k.
LinearMapByDegree graded_dual(const LinearMapByDegree& map);

std::pair<GradedBasis, LinearMapByDegree> graded_dual(const GradedBasis& basis, const LinearMapByDegree& map);

ChainComplex graded_dual(const ChainComplex& complex);

/// (-1)^{(sum left)(sum right)}.
int koszul_sign(std::span<const int> moved_left, std::span<const int> moved_right);

}  // namespace stringtop
