#pragma once

#include "stringtop/cdga.hpp"
#include "stringtop/finite_cdga.hpp"
#include "stringtop/pd_algebra.hpp"

namespace fixtures {

using namespace stringtop;

/// Q[x]/(x^2) with |x| = deg.
inline FinitePdAlgebra sphere(int deg) {
  FiniteCdga a({{"1", 0}, {"x", deg}}, {});
  return FinitePdAlgebra::make(a, deg, "x");
}

inline FinitePdAlgebra s2() { return sphere(2); }
inline FinitePdAlgebra s3() { return sphere(3); }

inline FinitePdAlgebra cp2() {
  FiniteCdga a({{"1", 0}, {"x", 2}, {"x2", 4}}, {{{1, 1}, FiniteElement(2)}});
  return FinitePdAlgebra::make(a, 4, "x2");
}

/// /\(x_2, x'_2, y_3) / (x^2, x'^2) style product of two S^2 models: S^2 x S^2.
inline FinitePdAlgebra s2xs2() {
  FiniteCdga a({{"1", 0}, {"a", 2}, {"b", 2}, {"ab", 4}}, {{{1, 2}, FiniteElement(3)}});
  return FinitePdAlgebra::make(a, 4, "ab");
}

/// S^2 x S^3, odd formal dimension with a non-trivial Hochschild differential.
inline FinitePdAlgebra s2xs3() {
  FiniteCdga a({{"1", 0}, {"a", 2}, {"b", 3}, {"ab", 5}}, {{{1, 2}, FiniteElement(3)}});
  return FinitePdAlgebra::make(a, 5, "ab");
}

inline FreeCdga free(std::vector<Generator> gens) { return FreeCdga(std::move(gens), {}); }

/// /\(x_2, y_3), dy = x^2.
inline FreeCdga s2_sullivan() {
  FreeCdga scratch({{"x", 2}, {"y", 3}}, {});
  return FreeCdga({{"x", 2}, {"y", 3}}, {{}, scratch.power(scratch.generator("x"), 2)});
}

inline FreeCdga s3_sullivan() { return FreeCdga({{"x", 3}}, {}); }

/// /\(x_2, y_5), dy = x^3.
inline FreeCdga cp2_sullivan() {
  FreeCdga scratch({{"x", 2}, {"y", 5}}, {});
  return FreeCdga({{"x", 2}, {"y", 5}}, {{}, scratch.power(scratch.generator("x"), 3)});
}

}  // namespace fixtures
