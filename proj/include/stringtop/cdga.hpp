#pragma once

#include <compare>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "stringtop/combination.hpp"
#include "stringtop/finite_cdga.hpp"
#include "stringtop/keyed_complex.hpp"

namespace stringtop {

struct Generator {
  std::string name;
  int degree = 0;
};

/// Exponent vector over the ordered generators, stored without trailing
/// zeros so monomials survive adjoining further generators. Exponents of
/// odd generators are at most one.
struct Monomial {
  std::vector<int> exponents;

  int exponent(std::size_t i) const { return i < exponents.size() ? exponents[i] : 0; }
  bool is_unit() const { return exponents.empty(); }
  static Monomial of(std::size_t generator, int power = 1);
  void trim();

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// Basis element b (x) m of B (x) /\V, with b an index into the base algebra.
struct Term {
  std::size_t base = 0;
  Monomial monomial;

  friend auto operator<=>(const Term&, const Term&) = default;
};

using Element = Combination<Term>;

/// Graded-commutative algebra B (x) /\V over a finite cdga B, with a
/// differential given on the generators. With B = Q this is a free cdga;
/// in general it is a relative Sullivan algebra over B.
class FreeCdga {
 public:
  FreeCdga() : FreeCdga(std::vector<Generator>{}, {}) {}
  /// Free cdga over Q. Throws ValidationError unless d raises degree by 1.
  FreeCdga(std::vector<Generator> generators, std::vector<Element> differential);
  FreeCdga(FiniteCdga base, std::vector<Generator> generators, std::vector<Element> differential);

  const FiniteCdga& base() const { return *base_; }
  const std::vector<Generator>& generators() const { return generators_; }
  const std::vector<Element>& differential() const { return differential_; }
  std::size_t generator_count() const { return generators_.size(); }
  long generator_index(const std::string& name) const;
  bool has_zero_differential() const;

  int degree(const Monomial& m) const;
  int degree(const Term& t) const;
  /// Degree of a homogeneous element; throws Error on non-homogeneous input.
  int degree(const Element& x) const;

  Element unit() const { return Element(Term{}); }
  Element scalar(const Rational& q) const { return q * unit(); }
  Element generator(std::size_t i) const { return Element(Term{0, Monomial::of(i)}); }
  Element generator(const std::string& name) const;
  Element base_element(const FiniteElement& x) const;

  Element multiply(const Element& x, const Element& y) const;
  Element power(const Element& x, int n) const;

  Element d(const Term& t) const;
  Element d(const Element& x) const;

  /// Extends values on generators to a derivation of the given parity:
  /// theta(ab) = theta(a) b + (-1)^{parity |a|} a theta(b). The base algebra
  /// is sent to zero unless `on_base` is supplied.
  Element apply_derivation(const std::vector<Element>& values, int parity, const Element& x,
                           const std::function<Element(std::size_t)>& on_base = {}) const;

  /// Monomials of the given degree: exponent vectors in descending
  /// lexicographic order over the declared generator order.
  std::vector<Monomial> monomial_basis(int degree) const;
  /// All b (x) m of the given degree, by base index then monomial order.
  std::vector<Term> basis(int degree) const;

  std::string label(const Monomial& m) const;
  std::string label(const Term& t) const;
  std::string format(const Element& x) const;

  /// The algebra as a cochain complex on [0, top].
  KeyedComplex<Term> complex(int top) const;
  /// The degree window [lo, hi] (lo > 0 leaves the bottom open).
  KeyedComplex<Term> window(int lo, int hi) const;

  /// Same base and generators plus `extra`, appended in order.
  FreeCdga extended(const std::vector<Generator>& extra, const std::vector<Element>& extra_differential) const;
  /// Replaces the base through a degree-preserving algebra map given on the
  /// base basis; generator differentials are transported along it.
  FreeCdga change_base(const FiniteCdga& new_base, const std::vector<FiniteElement>& base_map) const;

 private:
  std::shared_ptr<const FiniteCdga> base_;
  std::vector<Generator> generators_;
  std::vector<Element> differential_;

  std::optional<std::pair<int, Monomial>> multiply_monomials(const Monomial& a, const Monomial& b) const;
  Element derive_monomial(const std::vector<Element>& values, int parity, const Monomial& m) const;
};

struct CdgaVerdict {
  bool pass = true;
  std::string generator;
  Element defect;
  std::string message;
};

/// Checks d o d = 0 on every generator g with |g| + 2 <= max_degree + 1 and
/// on the base algebra.
CdgaVerdict check_cdga(const FreeCdga& algebra, int max_degree);

/// Algebra map given on base basis elements and generators.
struct CdgaMorphism {
  FreeCdga source;
  FreeCdga target;
  std::vector<Element> base_images;
  std::vector<Element> generator_images;

  Element apply(const Term& t) const;
  Element apply(const Element& x) const;
  /// First base element or generator where phi o d != d o phi, or nullopt.
  std::optional<std::string> chain_defect() const;
  /// Checks degree preservation of all images.
  void validate() const;
};

CdgaMorphism identity_morphism(const FreeCdga& algebra);
/// Base-to-extension inclusion; `target` must contain the source generators first.
CdgaMorphism inclusion_morphism(const FreeCdga& source, const FreeCdga& target);

/// H(phi) on [lo, hi] in the "[p:i]" homology bases. Throws ValidationError
/// for maps that do not commute with the differentials.
LinearMapByDegree morphism_induced_map(const CdgaMorphism& phi, int lo, int hi);

/// /\(V (+) sV) with D extending d and D(sv) = -S(dv), where S is the degree
/// -1 derivation S(v) = sv, S(sv) = 0. Generators sv are named "s" + name.
FreeCdga loop_space_model(const FreeCdga& model);

struct RelativeModel {
  FreeCdga extension;        ///< source (x) /\Z
  CdgaMorphism quasi_iso;    ///< extension -> target
  std::vector<std::size_t> adjoined;
  int valid_up_to = 0;
};

/// Adjoins generators degree by degree (first onto cohomology, then killing
/// excess kernel) until the extended map is an isomorphism on H^{<= max}
/// and injective on H^{max+1}. New generators are named {prefix}{deg}_{i}.
RelativeModel relative_sullivan_model(const CdgaMorphism& phi, int max_degree, const std::string& prefix = "z");

/// Quotient B (x) /\V / (degrees > top) as a finite cdga.
FiniteCdga truncate(const FreeCdga& algebra, int top);

}  // namespace stringtop
