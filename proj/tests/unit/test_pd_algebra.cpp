#include "doctest.h"

#include "fixtures.hpp"
#include "stringtop/pd_algebra.hpp"

using namespace stringtop;

namespace {

std::size_t idx(const FiniteCdga& a, const std::string& label) {
  const long i = a.find(label);
  REQUIRE(i >= 0);
  return static_cast<std::size_t>(i);
}

FiniteElement pure(const FiniteCdga& sq, const FiniteCdga& a, const std::string& l, const std::string& r) {
  return FiniteElement(idx(a, l) * a.dim() + idx(a, r));
  (void)sq;
}

std::vector<FinitePdAlgebra> algebras() {
  return {fixtures::s2(), fixtures::s3(), fixtures::cp2(), fixtures::s2xs2(), fixtures::s2xs3()};
}

}  // namespace

TEST_CASE("Poincare duality check") {
  for (const auto& a : algebras()) CHECK(check_poincare_duality(a).pass);

  const auto cp2 = fixtures::cp2().algebra;
  const auto bad = FinitePdAlgebra::make(cp2, 4, "x");
  const auto v = check_poincare_duality(bad);
  CHECK(!v.pass);
  CHECK(v.failed_axiom == "(i)");
  CHECK_THROWS_AS(require_poincare_duality(bad), ValidationError);

  // x^2 = 0 in degree 4 of CP^2 breaks the pairing A^2 x A^2
  FiniteCdga degenerate({{"1", 0}, {"x", 2}, {"x2", 4}}, {});
  const auto w = check_poincare_duality(FinitePdAlgebra::make(degenerate, 4, "x2"));
  CHECK(!w.pass);
  CHECK(w.failed_axiom == "(ii)");
  CHECK(w.failing_degree == 2);
  CHECK(w.rank_defect == 1);
}

TEST_CASE("dual bases") {
  const auto s3 = fixtures::s3();
  const auto d3 = dual_basis(s3);
  CHECK(d3[0] == FiniteElement(1));
  CHECK(d3[1] == FiniteElement(0));

  const auto cp2 = fixtures::cp2();
  const auto& c = cp2.algebra;
  const auto dc = dual_basis(cp2);
  CHECK(dc[idx(c, "1")] == FiniteElement(idx(c, "x2")));
  CHECK(dc[idx(c, "x")] == FiniteElement(idx(c, "x")));
  CHECK(dc[idx(c, "x2")] == FiniteElement(idx(c, "1")));

  for (const auto& a : algebras()) {
    const auto& alg = a.algebra;
    const auto dual = dual_basis(a);
    std::vector<FiniteElement> basis;
    for (std::size_t i = 0; i < alg.dim(); ++i) basis.emplace_back(i);
    for (std::size_t i = 0; i < alg.dim(); ++i) {
      CHECK(alg.degree(dual[i]) + alg.degree(i) == a.dimension);
      for (std::size_t j = 0; j < alg.dim(); ++j) {
        const Rational expected = i == j ? Rational(1) : Rational(0);
        CHECK(omega_coefficient(a, alg.multiply(basis[i], dual[j])) == expected);
      }
    }
    // double dual: a_i'' = (-1)^{|a_i|(m - |a_i|)} a_i
    const auto twice = dual_of(a, dual);
    for (std::size_t i = 0; i < alg.dim(); ++i) {
      const long di = alg.degree(i);
      CHECK(twice[i] == sign_power(di * (a.dimension - di)) * basis[i]);
    }
  }
}

TEST_CASE("diagonal class") {
  {
    const auto a = fixtures::s2();
    const auto d = diagonal_class(a);
    FiniteElement expected = pure(d.square, a.algebra, "1", "x");
    expected.add(pure(d.square, a.algebra, "x", "1"));
    CHECK(d.element == expected);
  }
  {
    const auto a = fixtures::s3();
    const auto d = diagonal_class(a);
    FiniteElement expected = pure(d.square, a.algebra, "1", "x");
    expected.add(pure(d.square, a.algebra, "x", "1"), -1);
    CHECK(d.element == expected);
    CHECK(apply_mu_D(a, d, FiniteElement(0)) == expected);
    CHECK(apply_mu_D(a, d, FiniteElement(1)) == pure(d.square, a.algebra, "x", "x"));
  }
  {
    const auto a = fixtures::cp2();
    const auto d = diagonal_class(a);
    FiniteElement expected = pure(d.square, a.algebra, "1", "x2");
    expected.add(pure(d.square, a.algebra, "x", "x"));
    expected.add(pure(d.square, a.algebra, "x2", "1"));
    CHECK(d.element == expected);
  }
  for (const auto& a : algebras()) {
    const auto d = diagonal_class(a);
    CHECK(d.square.d(d.element).empty());
    for (std::size_t i = 0; i < a.algebra.dim(); ++i) {
      const auto l = d.square.multiply(left_factor(a.algebra, i), d.element);
      const auto r = d.square.multiply(right_factor(a.algebra, i), d.element);
      CHECK(l == r);
    }
    // mu_D(1) = D is not a coboundary in A (x) A
    const auto c = d.square.complex();
    const auto h = homology(c, a.dimension, a.dimension);
    const auto proj = homology_projection(c.d(a.dimension - 1), h.degrees.at(a.dimension), c.basis.dim(a.dimension));
    CHECK(!is_zero(proj * d.square.coordinates(a.dimension, apply_mu_D(a, d, FiniteElement(0)))));
  }
}

TEST_CASE("mu_D is a degree m chain map") {
  for (const auto& a : algebras()) {
    const auto m = mu_D(a);
    CHECK(m.degree == a.dimension);
    const auto d = diagonal_class(a);
    const auto src = a.algebra.complex();
    const auto tgt = d.square.complex();
    CHECK(hom_complex_differential(m, src, tgt).is_zero());
    // (A (x) A)-linearity on basis pairs
    for (std::size_t i = 0; i < a.algebra.dim(); ++i)
      for (std::size_t j = 0; j < a.algebra.dim(); ++j) {
        const auto lhs = apply_mu_D(a, d, a.algebra.multiply(i, j));
        const auto rhs = d.square.multiply(FiniteElement(i * a.algebra.dim() + j), apply_mu_D(a, d, FiniteElement(0)));
        CHECK(lhs == rhs);
      }
  }
}

TEST_CASE("Euler characteristic") {
  CHECK(euler_characteristic(fixtures::s2()) == 2);
  CHECK(euler_characteristic(fixtures::s3()) == 0);
  CHECK(euler_characteristic(fixtures::cp2()) == 3);
  CHECK(euler_characteristic(fixtures::s2xs2()) == 4);
  // d != 0: S^2 plus an acyclic pair u -> v; counted on homology
  FiniteCdga a({{"1", 0}, {"x", 2}, {"u", 3}, {"v", 4}}, {}, {{}, {}, FiniteElement(3), {}});
  CHECK(a.structure_defect() == std::nullopt);
  CHECK(euler_characteristic(a) == 2);
}
