#include "stringtop/pd_algebra.hpp"

#include "stringtop/error.hpp"

namespace stringtop {

FinitePdAlgebra FinitePdAlgebra::make(FiniteCdga algebra, int dimension, const std::string& fundamental_label) {
  const long w = algebra.find(fundamental_label);
  if (w < 0) throw ValidationError("fundamental class '" + fundamental_label + "' is not a basis element");
  return FinitePdAlgebra{std::move(algebra), dimension, static_cast<std::size_t>(w)};
}

Rational omega_coefficient(const FinitePdAlgebra& a, const FiniteElement& x) { return x.coefficient(a.fundamental); }

Matrix pairing_matrix(const FinitePdAlgebra& a, int r) {
  const auto left = a.algebra.indices_in_degree(r);
  const auto right = a.algebra.indices_in_degree(a.dimension - r);
  Matrix m(left.size(), right.size());
  for (std::size_t i = 0; i < left.size(); ++i)
    for (std::size_t j = 0; j < right.size(); ++j) m(i, j) = omega_coefficient(a, a.algebra.multiply(left[i], right[j]));
  return m;
}

PdVerdict check_poincare_duality(const FinitePdAlgebra& a) {
  PdVerdict v;
  const auto& alg = a.algebra;
  if (auto defect = alg.structure_defect()) {
    v.failed_axiom = "structure";
    v.message = "inconsistent multiplication table: " + *defect;
    return v;
  }
  if (alg.indices_in_degree(0).size() != 1) {
    v.failed_axiom = "structure";
    v.message = "A^0 is not spanned by the unit";
    return v;
  }
  const int m = a.dimension;
  for (std::size_t i = 0; i < alg.dim(); ++i) {
    if (alg.degree(i) > m || alg.degree(i) < 0) {
      v.failed_axiom = "(i)";
      v.failing_degree = alg.degree(i);
      v.message = "axiom (i) violated: basis element '" + alg.label(i) + "' lies in degree " +
                  std::to_string(alg.degree(i)) + " outside [0, " + std::to_string(m) + "]";
      return v;
    }
  }
  if (alg.degree(a.fundamental) != m) {
    v.failed_axiom = "(i)";
    v.failing_degree = alg.degree(a.fundamental);
    v.message = "axiom (i) violated: fundamental class '" + alg.label(a.fundamental) + "' has degree " +
                std::to_string(alg.degree(a.fundamental)) + ", not the formal dimension " + std::to_string(m);
    return v;
  }
  if (alg.indices_in_degree(m).size() != 1) {
    v.failed_axiom = "(i)";
    v.failing_degree = m;
    v.message = "axiom (i) violated: A^" + std::to_string(m) + " is not one-dimensional";
    return v;
  }
  for (int r = 0; r <= m; ++r) {
    const Matrix p = pairing_matrix(a, r);
    const std::size_t rk = rank(p);
    const std::size_t full = std::max(p.rows(), p.cols());
    if (rk != full) {
      v.failed_axiom = "(ii)";
      v.failing_degree = r;
      v.rank_defect = full - rk;
      v.message = "axiom (ii) violated: pairing A^" + std::to_string(r) + " x A^" + std::to_string(m - r) +
                  " has rank defect " + std::to_string(full - rk);
      return v;
    }
  }
  v.pass = true;
  v.message = "Poincare duality algebra of dimension " + std::to_string(m);
  return v;
}

void require_poincare_duality(const FinitePdAlgebra& a) {
  const auto v = check_poincare_duality(a);
  if (!v.pass) throw ValidationError(v.message);
}

std::vector<FiniteElement> dual_of(const FinitePdAlgebra& a, const std::vector<FiniteElement>& basis) {
  const auto& alg = a.algebra;
  std::vector<FiniteElement> out(basis.size());
  std::map<int, std::vector<std::size_t>> by_degree;
  for (std::size_t i = 0; i < basis.size(); ++i) by_degree[alg.degree(basis[i])].push_back(i);
  for (const auto& [r, members] : by_degree) {
    const auto partner = alg.indices_in_degree(a.dimension - r);
    if (partner.size() != members.size()) throw ValidationError("pairing is singular in degree " + std::to_string(r));
    // P(i, k) = <x_i, b_k>; the dual x_j' = sum_k C(k, j) b_k needs P C = I.
    Matrix p(members.size(), partner.size());
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t k = 0; k < partner.size(); ++k)
        p(i, k) = omega_coefficient(a, alg.multiply(basis[members[i]], FiniteElement(partner[k])));
    Matrix c;
    try {
      c = inverse(p);
    } catch (const std::domain_error&) {
      throw ValidationError("pairing is singular in degree " + std::to_string(r));
    }
    for (std::size_t j = 0; j < members.size(); ++j) {
      FiniteElement dual;
      for (std::size_t k = 0; k < partner.size(); ++k) dual.add(partner[k], c(k, j));
      out[members[j]] = std::move(dual);
    }
  }
  return out;
}

std::vector<FiniteElement> dual_basis(const FinitePdAlgebra& a) {
  std::vector<FiniteElement> basis;
  for (std::size_t i = 0; i < a.algebra.dim(); ++i) basis.emplace_back(i);
  return dual_of(a, basis);
}

FiniteElement left_factor(const FiniteCdga& a, std::size_t i) { return FiniteElement(i * a.dim()); }

FiniteElement right_factor(const FiniteCdga&, std::size_t i) { return FiniteElement(i); }

DiagonalClass diagonal_class(const FinitePdAlgebra& a) {
  require_poincare_duality(a);
  const auto& alg = a.algebra;
  const std::size_t n = alg.dim();
  DiagonalClass dc{FiniteCdga::tensor(alg, alg), {}};
  const auto duals = dual_basis(a);
  for (std::size_t i = 0; i < n; ++i) {
    const Rational s = sign_power(alg.degree(i));
    for (const auto& [j, c] : duals[i]) dc.element.add(i * n + j, s * c);
  }
  if (!dc.square.d(dc.element).empty()) throw Error("internal consistency: diagonal class is not a cocycle");
  for (std::size_t i = 0; i < n; ++i) {
    const auto l = dc.square.multiply(left_factor(alg, i), dc.element);
    const auto r = dc.square.multiply(right_factor(alg, i), dc.element);
    if (l != r) throw Error("internal consistency: diagonal class is not central for '" + alg.label(i) + "'");
  }
  return dc;
}

FiniteElement apply_mu_D(const FinitePdAlgebra& a, const DiagonalClass& d, const FiniteElement& x) {
  FiniteElement lifted;
  for (const auto& [i, c] : x) lifted.add(i * a.algebra.dim(), c);
  return d.square.multiply(lifted, d.element);
}

LinearMapByDegree mu_D(const FinitePdAlgebra& a) {
  const auto dc = diagonal_class(a);
  LinearMapByDegree map{a.algebra.graded_basis(), dc.square.graded_basis(), a.dimension, {}};
  for (int p = 0; p <= a.dimension; ++p) {
    const auto src = a.algebra.indices_in_degree(p);
    const auto tgt = dc.square.indices_in_degree(p + a.dimension);
    Matrix m(tgt.size(), src.size());
    for (std::size_t j = 0; j < src.size(); ++j) {
      const Vector v = dc.square.coordinates(p + a.dimension, apply_mu_D(a, dc, FiniteElement(src[j])));
      for (std::size_t i = 0; i < tgt.size(); ++i) m(i, j) = v[i];
    }
    map.set_block(p, std::move(m));
  }
  return map;
}

long euler_characteristic(const FiniteCdga& a) {
  const auto c = a.complex();
  const auto h = homology(c, 0, a.top_degree());
  long chi = 0;
  for (const auto& [p, deg] : h.degrees) chi += parity_sign(p) * static_cast<long>(deg.betti);
  return chi;
}

long euler_characteristic(const FinitePdAlgebra& a) { return euler_characteristic(a.algebra); }

}  // namespace stringtop
