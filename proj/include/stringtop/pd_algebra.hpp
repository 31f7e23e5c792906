#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stringtop/finite_cdga.hpp"
#include "stringtop/graded.hpp"

namespace stringtop {

/// Finite cdga with formal dimension m and a chosen top class omega.
struct FinitePdAlgebra {
  FiniteCdga algebra;
  int dimension = 0;
  std::size_t fundamental = 0;

  /// Looks up omega by label; throws ValidationError if it is missing.
  static FinitePdAlgebra make(FiniteCdga algebra, int dimension, const std::string& fundamental_label);
};

struct PdVerdict {
  bool pass = false;
  /// "structure" for an inconsistent table, otherwise "(i)" or "(ii)".
  std::string failed_axiom;
  int failing_degree = 0;
  std::size_t rank_defect = 0;
  std::string message;
};

PdVerdict check_poincare_duality(const FinitePdAlgebra& a);

/// Throws ValidationError carrying the verdict message unless the check passes.
void require_poincare_duality(const FinitePdAlgebra& a);

/// Coefficient of omega in x (x of degree m), zero otherwise.
Rational omega_coefficient(const FinitePdAlgebra& a, const FiniteElement& x);

/// Pairing matrix on A^r x A^{m-r}: entry (i, j) is the omega coefficient of a_i b_j.
Matrix pairing_matrix(const FinitePdAlgebra& a, int r);

/// For homogeneous elements x_i, returns x_i' with x_i x_j' = delta_ij omega.
/// The x_i in each degree must form a basis of that degree.
std::vector<FiniteElement> dual_of(const FinitePdAlgebra& a, const std::vector<FiniteElement>& basis);

/// Poincare dual of the standard basis, indexed like the basis.
std::vector<FiniteElement> dual_basis(const FinitePdAlgebra& a);

struct DiagonalClass {
  FiniteCdga square;      ///< A (x) A
  FiniteElement element;  ///< sum_i (-1)^{|a_i|} a_i (x) a_i'
};

/// Builds D and verifies it is a cocycle with (a (x) 1)D = (1 (x) a)D for
/// every basis element; a failure means a broken multiplication table.
DiagonalClass diagonal_class(const FinitePdAlgebra& a);

/// Embeddings a -> a (x) 1 and a -> 1 (x) a.
FiniteElement left_factor(const FiniteCdga& a, std::size_t i);
FiniteElement right_factor(const FiniteCdga& a, std::size_t i);

/// mu_D(x) = (x (x) 1) D.
FiniteElement apply_mu_D(const FinitePdAlgebra& a, const DiagonalClass& d, const FiniteElement& x);

/// mu_D as a degree-m graded map A -> A (x) A.
LinearMapByDegree mu_D(const FinitePdAlgebra& a);

/// Alternating sum of the Betti numbers of H(A).
long euler_characteristic(const FiniteCdga& a);
long euler_characteristic(const FinitePdAlgebra& a);

}  // namespace stringtop
