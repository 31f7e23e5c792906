#include "doctest.h"

#include <random>

#include "fixtures.hpp"
#include "stringtop/bar.hpp"

using namespace stringtop;

namespace {

std::size_t idx(const FiniteCdga& a, const std::string& label) {
  const long i = a.find(label);
  REQUIRE(i >= 0);
  return static_cast<std::size_t>(i);
}

template <class Key, class D>
void check_square_zero(const std::vector<Key>& keys, D&& d) {
  for (const auto& k : keys) {
    auto dd = d(k).map_linear(d);
    CHECK(dd.empty());
  }
}

std::vector<FiniteCdga> algebras() {
  return {fixtures::s2().algebra, fixtures::s3().algebra, fixtures::cp2().algebra, fixtures::s2xs2().algebra,
          truncate(fixtures::s2_sullivan(), 9), truncate(fixtures::cp2_sullivan(), 9)};
}

std::vector<std::size_t> bettis(const KeyedComplex<HochschildKey>& c, int top) {
  auto h = homology(c.complex(), 0, top);
  std::vector<std::size_t> out;
  for (int p = 0; p <= top; ++p) out.push_back(h.betti(p));
  return out;
}

}  // namespace

TEST_CASE("d0 vanishes for zero differential") {
  BarConstruction bar(fixtures::cp2().algebra, Side::Algebra, Side::Algebra);
  for (int p = 0; p <= 8; ++p)
    for (const auto& w : bar.basis(p)) CHECK(bar.d0(w).empty());
}

TEST_CASE("d0 on a single letter") {
  const auto a = truncate(fixtures::s2_sullivan(), 6);
  BarConstruction bar(a);
  const auto y = idx(a, "y"), x2 = idx(a, "x^2");
  auto d0 = bar.d0(BarWord{0, {y}, 0});
  CHECK(d0 == -Combination<BarWord>(BarWord{0, {x2}, 0}));
}

TEST_CASE("d0 with empty word") {
  const auto a = truncate(fixtures::s2_sullivan(), 6);
  BarConstruction bar(a, Side::Algebra, Side::Algebra);
  const auto x = idx(a, "x"), y = idx(a, "y"), x2 = idx(a, "x^2");
  // d(y[ ]x) = d(y)[ ]x + (-1)^{|y|} y[ ]d(x) = x^2[ ]x
  CHECK(bar.d0(BarWord{y, {}, x}) == Combination<BarWord>(BarWord{x2, {}, x}));
  // d(x[ ]y) = (-1)^{|x|} x[ ]x^2
  CHECK(bar.d0(BarWord{x, {}, y}) == Combination<BarWord>(BarWord{x, {}, x2}));
}

TEST_CASE("d1 on the reduced bar construction") {
  const auto cp2 = fixtures::cp2().algebra;
  BarConstruction bar(cp2);
  const auto x = idx(cp2, "x"), x2 = idx(cp2, "x2");
  // (-1)^{|x|-1}[x x] = -[x2]
  CHECK(bar.d1(BarWord{0, {x, x}, 0}) == -Combination<BarWord>(BarWord{0, {x2}, 0}));
  CHECK(bar.d1(BarWord{0, {x}, 0}).empty());
  BarConstruction s3(fixtures::s3().algebra);
  CHECK(s3.d1(BarWord{0, {1, 1}, 0}).empty());
}

TEST_CASE("bar and Hochschild differentials square to zero") {
  for (const auto& a : algebras()) {
    CAPTURE(a.dim());
    for (auto [l, r] : {std::pair{Side::Ground, Side::Ground}, std::pair{Side::Algebra, Side::Algebra},
                        std::pair{Side::Ground, Side::Algebra}, std::pair{Side::Algebra, Side::Ground}}) {
      BarConstruction bar(a, l, r);
      for (int p = 0; p <= 7; ++p) check_square_zero(bar.basis(p), [&](const BarWord& w) { return bar.d(w); });
    }
    HochschildComplex ch(a);
    for (int p = 0; p <= 8; ++p) check_square_zero(ch.basis(p), [&](const HochschildKey& k) { return ch.d(k); });
    NablaTarget q(ch);
    for (int p = 0; p <= 6; ++p) check_square_zero(q.basis(p), [&](const NablaKey& k) { return q.d(k); });
  }
}

TEST_CASE("bar coproduct") {
  CHECK(bar_coproduct({}) == Combination<std::pair<Word, Word>>(std::pair<Word, Word>{{}, {}}));
  Combination<std::pair<Word, Word>> one;
  one.add(std::pair<Word, Word>{{}, {1}}, 1);
  one.add(std::pair<Word, Word>{{1}, {}}, 1);
  CHECK(bar_coproduct({1}) == one);
  Combination<std::pair<Word, Word>> two;
  two.add(std::pair<Word, Word>{{}, {1, 2}}, 1);
  two.add(std::pair<Word, Word>{{1}, {2}}, 1);
  two.add(std::pair<Word, Word>{{1, 2}, {}}, 1);
  CHECK(bar_coproduct({1, 2}) == two);

  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    Word w(rng() % 6);
    for (auto& l : w) l = 1 + rng() % 3;
    using Triple = std::tuple<Word, Word, Word>;
    Combination<Triple> left, right;
    for (const auto& [p, c] : bar_coproduct(w)) {
      for (const auto& [q, c2] : bar_coproduct(p.first)) left.add(Triple{q.first, q.second, p.second}, c * c2);
      for (const auto& [q, c2] : bar_coproduct(p.second)) right.add(Triple{p.first, q.first, q.second}, c * c2);
    }
    CHECK(left == right);
    // counit: only the split with an empty side survives
    Combination<Word> counit_l, counit_r;
    for (const auto& [p, c] : bar_coproduct(w)) {
      if (p.first.empty()) counit_l.add(p.second, c);
      if (p.second.empty()) counit_r.add(p.first, c);
    }
    CHECK(counit_l == Combination<Word>(w));
    CHECK(counit_r == Combination<Word>(w));
  }
}

TEST_CASE("Hochschild homology") {
  HochschildComplex s3(fixtures::s3().algebra);
  auto c3 = s3.complex(11);
  for (int p = 0; p <= 10; ++p)
    for (const auto& k : c3.basis(p)) CHECK(s3.d(k).empty());
  CHECK(bettis(c3, 10) == std::vector<std::size_t>{1, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1});

  HochschildComplex point(FiniteCdga::ground());
  CHECK(bettis(point.complex(5), 4) == std::vector<std::size_t>{1, 0, 0, 0, 0});

  HochschildComplex s2(fixtures::s2().algebra);
  const auto x = 1;
  // d(1 (x) [x|x]) = 2 x (x) [x]
  CHECK(s2.d(HochschildKey{0, {x, x}}) == Rational(2) * Combination<HochschildKey>(HochschildKey{x, {x}}));
  CHECK(s2.d(HochschildKey{0, {x}}).empty());
  CHECK(bettis(s2.complex(7), 6) == std::vector<std::size_t>{1, 1, 1, 1, 1, 1, 1});
}

TEST_CASE("reduced bar homology of S3") {
  BarConstruction bar(fixtures::s3().algebra);
  auto c = bar.complex(11);
  auto h = homology(c.complex(), 0, 10);
  for (int p = 0; p <= 10; ++p) CHECK(h.betti(p) == (p % 2 == 0 ? 1u : 0u));
}

TEST_CASE("nabla") {
  Combination<NablaKey> n0(NablaKey{2, {}, {}});
  CHECK(nabla(HochschildKey{2, {}}) == n0);
  Combination<NablaKey> n1;
  n1.add(NablaKey{0, {}, {1}}, 1);
  n1.add(NablaKey{0, {1}, {}}, 1);
  CHECK(nabla(HochschildKey{0, {1}}) == n1);
  Combination<NablaKey> n2;
  n2.add(NablaKey{0, {}, {1, 1}}, 1);
  n2.add(NablaKey{0, {1}, {1}}, 1);
  n2.add(NablaKey{0, {1, 1}, {}}, 1);
  CHECK(nabla(HochschildKey{0, {1, 1}}) == n2);

  for (const auto& a : algebras()) {
    HochschildComplex ch(a);
    NablaTarget q(ch);
    auto src = ch.complex(7);
    auto tgt = q.complex(7);
    auto phi = chain_level_map(src, tgt, 0, [](const HochschildKey& k) { return nabla(k); });
    CHECK(hom_complex_differential(phi, src.complex(), tgt.complex()).is_zero());
  }
}

TEST_CASE("omega inclusion") {
  for (const auto& pd : {fixtures::s2(), fixtures::s3(), fixtures::cp2(), fixtures::s2xs2()}) {
    BarConstruction bar(pd.algebra);
    HochschildComplex ch(pd.algebra);
    const int top = pd.algebra.dim() > 3 ? 4 : 8;
    auto src = bar.complex(top);
    auto tgt = ch.complex(top + pd.dimension);
    auto phi = chain_level_map(src, tgt, pd.dimension, [&](const BarWord& w) { return omega_inclusion(pd, w); });
    CHECK(hom_complex_differential(phi, src.complex(), tgt.complex()).is_zero());
    CHECK(omega_inclusion(pd, BarWord{}) == Combination<HochschildKey>(HochschildKey{pd.fundamental, {}}));
  }
  const auto s3 = fixtures::s3();
  CHECK(omega_inclusion(s3, BarWord{0, {1, 1}, 0}) == Combination<HochschildKey>(HochschildKey{1, {1, 1}}));
}
