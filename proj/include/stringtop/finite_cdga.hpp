#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stringtop/combination.hpp"
#include "stringtop/graded.hpp"

namespace stringtop {

/// Linear combination of basis indices of a finite algebra.
using FiniteElement = Combination<std::size_t>;

struct FiniteBasisElement {
  std::string label;
  int degree = 0;
};

/// Finite-dimensional cdga given by a basis, a full multiplication table
/// and a differential. Index 0 is the unit and has degree 0.
class FiniteCdga {
 public:
  using ProductTable = std::map<std::pair<std::size_t, std::size_t>, FiniteElement>;

  FiniteCdga() : FiniteCdga(ground()) {}

  /// `products` lists products of non-unit basis pairs; the transposed entry
  /// is filled in by graded commutativity and missing pairs are zero. Products
  /// with the unit are implied. Throws ValidationError on degree mismatches.
  FiniteCdga(std::vector<FiniteBasisElement> basis, const ProductTable& products,
             std::vector<FiniteElement> differential = {});

  /// The ground field Q, concentrated in degree 0.
  static FiniteCdga ground();
  /// A (x) B with (a (x) b)(c (x) d) = (-1)^{|b||c|} ac (x) bd; index i*dim(B)+j.
  static FiniteCdga tensor(const FiniteCdga& a, const FiniteCdga& b);

  std::size_t dim() const { return basis_.size(); }
  int degree(std::size_t i) const { return basis_.at(i).degree; }
  const std::string& label(std::size_t i) const { return basis_.at(i).label; }
  const std::vector<FiniteBasisElement>& basis() const { return basis_; }
  long find(const std::string& label) const;
  std::vector<std::size_t> indices_in_degree(int p) const;
  int top_degree() const;
  bool is_ground() const { return basis_.size() == 1; }

  /// Degree of a homogeneous element; throws on non-homogeneous input.
  int degree(const FiniteElement& x) const;

  const FiniteElement& multiply(std::size_t i, std::size_t j) const { return table_[i * dim() + j]; }
  FiniteElement multiply(const FiniteElement& x, const FiniteElement& y) const;
  const FiniteElement& d(std::size_t i) const { return differential_[i]; }
  FiniteElement d(const FiniteElement& x) const;
  bool has_zero_differential() const;

  /// First violation of unit, associativity, graded commutativity, Leibniz
  /// or d o d = 0, or nullopt.
  std::optional<std::string> structure_defect() const;

  GradedBasis graded_basis() const;
  /// The underlying cochain complex, stored on [0, top + 1].
  ChainComplex complex() const;
  Vector coordinates(int p, const FiniteElement& x) const;
  FiniteElement element(int p, const Vector& v) const;
  std::string format(const FiniteElement& x) const;

 private:
  FiniteCdga(std::vector<FiniteBasisElement> basis, std::vector<FiniteElement> table,
             std::vector<FiniteElement> differential, bool);

  std::vector<FiniteBasisElement> basis_;
  std::vector<FiniteElement> table_;
  std::vector<FiniteElement> differential_;
};

}  // namespace stringtop
