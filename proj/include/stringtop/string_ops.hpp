#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "stringtop/bar.hpp"
#include "stringtop/cdga.hpp"
#include "stringtop/pd_algebra.hpp"

namespace stringtop {

enum class Provenance { Sullivan, Hochschild };

/// Betti numbers of the free loop space (cohomologically graded) with one
/// formatted cocycle per class.
struct LoopHomologyTable {
  Provenance provenance = Provenance::Sullivan;
  int max_degree = 0;
  std::map<int, std::size_t> betti;
  std::map<int, std::vector<std::string>> representatives;
};

/// Homology of the loop space model of `model` through degree N.
LoopHomologyTable loop_betti_sullivan(const FreeCdga& model, int max_degree);
/// Hochschild homology of a connected finite cdga through degree N.
LoopHomologyTable loop_betti_hochschild(const FiniteCdga& a, int max_degree);

/// Loop product table on H_*(LM): pairs of dual class labels to a
/// combination of dual class labels, of degree -m.
struct ProductTable {
  int shift = 0;
  std::map<std::pair<std::string, std::string>, Combination<std::string>> entries;
  std::map<std::string, int> degrees;
};

/// Coordinate (q, i, r, j) of H^q (x) H^r in the Kunneth basis of H(CH (x) CH).
using PairCoordinate = std::tuple<int, std::size_t, int, std::size_t>;

/// Cohomology of CH(A) together with the Kunneth classification of CH (x) CH.
class LoopCohomology {
 public:
  LoopCohomology(const FinitePdAlgebra& a, int top);
  LoopCohomology(const LoopCohomology&) = delete;
  LoopCohomology& operator=(const LoopCohomology&) = delete;

  const FinitePdAlgebra& algebra() const { return pd_; }
  const HochschildComplex& hochschild() const { return ch_; }
  const KeyedComplex<HochschildKey>& complex() const { return complex_; }
  const KeyedHomology<HochschildKey>& homology() const { return homology_; }
  int top() const { return top_; }

  /// Class coordinates of a cocycle of CH (x) CH, by (q, i, r, j).
  Combination<PairCoordinate> classify_pair(const Combination<HochschildPair>& x) const;
  /// "[p:i]".
  static std::string class_label(int p, std::size_t i);

 private:
  FinitePdAlgebra pd_;
  HochschildComplex ch_;
  KeyedComplex<HochschildKey> complex_;
  KeyedHomology<HochschildKey> homology_;
  int top_;
};

/// (mu_D (x) 1)(a (x) [w1] (x) [w2]) in CH (x) CH, realized as left multiplication
/// by D on a lift of a; a chain map of degree m in the Hom-complex sense.
Combination<HochschildPair> mu_D_tensor_one(const FinitePdAlgebra& a, const DiagonalClass& dc, const NablaKey& k);
/// The composite (mu_D (x) 1) o nabla on CH, of degree m.
Combination<HochschildPair> loop_coproduct_cochain(const FinitePdAlgebra& a, const DiagonalClass& dc,
                                                   const Combination<HochschildKey>& x);

struct DualLoopProduct {
  int dimension = 0;
  int max_degree = 0;
  /// Betti numbers of H^*(LM) through max_degree + m.
  std::map<int, std::size_t> betti;
  /// Source degree p -> coordinates of the image of each class [p:k].
  std::map<int, std::vector<Combination<PairCoordinate>>> images;
  ProductTable table;
  bool nontrivial = false;
};

/// Induced map of (mu_D (x) 1) o nabla on H^p(CH) for p <= N and its dual,
/// the loop product on H_*(LM) with labels "[p:i]#". A coordinate
/// [q:i] (x) [r:j] of the image of [p:k] contributes to [q:i]# . [r:j]# with
/// sign (-1)^{q(r-m) + mp}; with this transpose the product is graded
/// commutative in shifted degrees, associative, and [m:0]# is its unit.
DualLoopProduct dual_loop_product(const FinitePdAlgebra& a, int max_degree);

/// alpha . (a (x) [w]) = (alpha a) (x) [w].
Combination<HochschildKey> cap_action(const FiniteCdga& a, const FiniteElement& alpha,
                                      const Combination<HochschildKey>& x);

struct ModuleCounterexample {
  std::string alpha1, alpha2, z;
  PairCoordinate coordinate;
  Rational lhs, rhs;
};

struct ModuleVerdict {
  bool pass = true;
  std::size_t triples_checked = 0;
  std::size_t coordinates_checked = 0;
  std::size_t nonzero_coordinates = 0;
  std::optional<ModuleCounterexample> counterexample;
};

/// Checks H(Phi)((alpha1 alpha2) . z) = (-1)^{m|alpha1 alpha2|} (alpha1 (x) alpha2) . H(Phi)(z), Phi the
/// dual loop product, on every coordinate pairing with classes b, c such that
/// |alpha1| + |alpha2| + |b| + |c| <= N.
ModuleVerdict check_module_property(const FinitePdAlgebra& a, int max_degree);

struct CoproductVerdict {
  bool trivial = false;
  long euler_characteristic = 0;
  bool closed_form_holds = true;
  std::string closed_form_failure;
  /// Coefficient of Omega (x) c in psi(1 (x) 1 (x) c), checked for every c.
  std::optional<Rational> unit_coefficient;
  std::size_t terms_checked = 0;
  std::map<int, std::size_t> psi_rank;
  int max_degree = 0;
  std::vector<std::string> adjoined;
};

/// Builds psi = (theta (x) 1) o q^! : A (x) /\Z (x) /\Z' -> A (x) /\Z' from a
/// relative model of the multiplication, checks its closed form and H(psi) = 0.
CoproductVerdict loop_coproduct_psi(const FinitePdAlgebra& a, int max_degree);

/// Relative Sullivan model of A (x) A -> A over the finite base A (x) A.
RelativeModel multiplication_model(const FinitePdAlgebra& a, int max_degree, const std::string& prefix = "z");

struct FiberIntersection {
  int dimension = 0;
  int max_degree = 0;
  /// Source degree p -> matrix H^p(BA) -> H^{p+m}(CH).
  std::map<int, Matrix> hochschild_blocks;
  std::map<int, std::size_t> hochschild_rank;
  std::map<int, std::size_t> bar_betti;
  std::map<int, std::size_t> sullivan_rank;
  bool ranks_agree = true;
  bool injective = true;
};

/// omega_inclusion on homology through source degree N, and the same ranks
/// through alpha -> (-1)^{m|alpha|} omega (x) alpha from the fiber model
/// /\Z into the A-relative loop model A (x) /\Z.
FiberIntersection intersection_with_fiber(const FinitePdAlgebra& a, int max_degree, bool with_sullivan = true);

struct BGPresentation {
  std::vector<int> degrees;
  std::size_t rank() const { return degrees.size(); }
  /// Throws ValidationError unless every degree is even and >= 2.
  void validate() const;
};

struct BGProductVerdict {
  bool trivial = false;
  bool inclusion_quasi_iso = false;
  bool psi_chain_map = false;
  std::size_t monomials_checked = 0;
  int max_degree = 0;
};

/// Loop product model of BG: psi on /\(x, x', x^, x^', x-) and its
/// composite with the inclusion of /\(x, x^, x^').
BGProductVerdict bg_loop_product(const BGPresentation& g, int max_degree);

struct BGCoproductVerdict {
  bool surjective = false;
  bool tau_quasi_iso = false;
  bool psi_quasi_iso = false;
  bool pi_surjective = false;
  bool q_chain_map = false;
  /// Target degree -> (rank, dimension) of psi o q^! o tau.
  std::map<int, std::pair<std::size_t, std::size_t>> ranks;
  int max_degree = 0;
};

BGCoproductVerdict bg_loop_coproduct(const BGPresentation& g, int max_degree);

struct ExtDiagonal {
  int copies = 0;
  int max_degree = 0;
  std::map<int, std::size_t> dimensions;
  bool resolution_quasi_iso = false;
  std::optional<int> shift;
  std::optional<int> gorenstein_dimension;
  bool matches = false;
  std::optional<int> first_failure;
};

/// Ext_{X^n}(X, X^n) through Hom over /\V^{(x)n} from the Koszul resolution
/// /\V^{(x)n} (x) /\(sv^(j)), d(sv^(j)) = v^(1) - v^(j), in degrees [-N, N],
/// matched against shifted H^*(X). `expected_d` fixes the shift (n-1)d.
ExtDiagonal ext_diagonal(const FreeCdga& model, int copies, int max_degree,
                         std::optional<int> expected_d = std::nullopt);

}  // namespace stringtop
