#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "fixtures.hpp"
#include "stringtop/graded.hpp"

using namespace stringtop;

namespace {

GradedBasis basis_of(const std::map<int, std::size_t>& dims) {
  GradedBasis b;
  for (const auto& [p, n] : dims)
    for (std::size_t i = 0; i < n; ++i) b.add(p, "e" + std::to_string(p) + "_" + std::to_string(i));
  return b;
}

Matrix random_invertible(std::size_t n, std::mt19937& rng) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  while (true) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = coeff(rng);
    if (rank(m) == n) return m;
  }
}

struct RandomComplex {
  ChainComplex complex;
  std::map<int, std::size_t> betti;
};

// Sum of random numbers of copies of Q (in degree p) and Q -> Q (p to p+1),
// conjugated by a random change of basis in every degree.
RandomComplex random_complex(std::mt19937& rng, int lo, int hi) {
  std::uniform_int_distribution<int> count(0, 2);
  std::map<int, std::size_t> dims, betti;
  std::map<int, std::size_t> pairs;  // pairs starting in degree p
  for (int p = lo; p <= hi; ++p) {
    betti[p] = static_cast<std::size_t>(count(rng));
    dims[p] += betti[p];
    if (p < hi) {
      pairs[p] = static_cast<std::size_t>(count(rng));
      dims[p] += pairs[p];
      dims[p + 1] += pairs[p];
    }
  }
  // layout per degree: [pairs ending here | free classes | pairs starting here]
  std::map<int, Matrix> blocks;
  for (int p = lo; p < hi; ++p) {
    Matrix d(dims[p + 1], dims[p]);
    const std::size_t src = dims[p] - pairs[p];
    for (std::size_t i = 0; i < pairs[p]; ++i) d(i, src + i) = 1;
    blocks[p] = d;
  }
  std::map<int, Matrix> change;
  for (int p = lo; p <= hi; ++p) change[p] = random_invertible(dims[p], rng);
  for (auto& [p, d] : blocks) d = change[p + 1] * d * inverse(change[p]);
  RandomComplex out;
  out.complex = make_complex(basis_of(dims), blocks, lo, hi);
  out.betti = betti;
  out.betti[hi] = 0;  // top degree is not certified; callers stop at hi - 1
  return out;
}

LinearMapByDegree random_map(const ChainComplex& s, const ChainComplex& t, int k, std::mt19937& rng) {
  std::uniform_int_distribution<int> coeff(-2, 2);
  LinearMapByDegree phi{s.basis, t.basis, k, {}};
  for (int p = s.bottom; p <= s.top; ++p) {
    Matrix m(t.basis.dim(p + k), s.basis.dim(p));
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = coeff(rng);
    phi.blocks[p] = m;
  }
  return phi;
}

}  // namespace

TEST_CASE("homology of small complexes") {
  GradedBasis one;
  one.add(0, "e");
  CHECK(homology(make_complex(one, {}, 0, 1), 0, 0).betti(0) == 1);

  GradedBasis two;
  two.add(0, "e0");
  two.add(1, "e1");
  Matrix d(1, 1);
  d(0, 0) = 1;
  const auto acyclic = make_complex(two, {{0, d}}, 0, 2);
  const auto h = homology(acyclic, 0, 1);
  CHECK(h.betti(0) == 0);
  CHECK(h.betti(1) == 0);

  const auto s2 = fixtures::s2_sullivan().complex(8).complex();
  const auto hs = homology(s2, 0, 7);
  for (int p = 0; p <= 7; ++p) CHECK(hs.betti(p) == ((p == 0 || p == 2) ? 1u : 0u));

  CHECK_THROWS_AS(homology(acyclic, 0, 2), TruncationError);
  Matrix bad(1, 1);
  bad(0, 0) = 1;
  GradedBasis three = two;
  three.add(2, "e2");
  CHECK_THROWS_AS(homology(make_complex(three, {{0, d}, {1, bad}}, 0, 3), 0, 1), NotAComplexError);
}

TEST_CASE("Hom complex differential") {
  GradedBasis two;
  two.add(0, "e0");
  two.add(1, "e1");
  Matrix d(1, 1);
  d(0, 0) = 1;
  const auto source = make_complex(two, {{0, d}}, 0, 2);
  GradedBasis q;
  q.add(1, "u");
  const auto target = make_complex(q, {}, 0, 2);

  LinearMapByDegree phi{source.basis, target.basis, 0, {}};
  Matrix m1(1, 1);
  m1(0, 0) = 1;
  phi.set_block(1, m1);
  phi.set_block(0, Matrix(0, 1));
  const auto dphi = hom_complex_differential(phi, source, target);
  CHECK(dphi.degree == 1);
  CHECK(dphi.block(0)(0, 0) == -1);

  LinearMapByDegree id{source.basis, source.basis, 0, {}};
  id.set_block(0, Matrix::identity(1));
  id.set_block(1, Matrix::identity(1));
  CHECK(hom_complex_differential(id, source, source).is_zero());
}

TEST_CASE("graded duals") {
  GradedBasis one;
  one.add(0, "e");
  CHECK(graded_dual(one) == one);

  GradedBasis b;
  b.add(-1, "a");
  b.add(2, "b");
  const auto dual = graded_dual(b);
  CHECK(dual.labels(1) == std::vector<std::string>{"a"});
  CHECK(dual.labels(-2) == std::vector<std::string>{"b"});
  CHECK(graded_dual(dual) == b);

  LinearMapByDegree id{b, b, 0, {}};
  id.set_block(-1, Matrix::identity(1));
  id.set_block(2, Matrix::identity(1));
  const auto did = graded_dual(id);
  CHECK(did.block(1) == Matrix::identity(1));
  CHECK(did.block(-2) == Matrix::identity(1));

  const auto s2 = fixtures::s2_sullivan().complex(8).complex();
  const auto ds2 = graded_dual(s2);
  const auto h = homology(s2, 0, 7);
  const auto hd = homology(ds2, -7, 0);
  for (int p = 0; p <= 7; ++p) CHECK(hd.betti(-p) == h.betti(p));
}

TEST_CASE("koszul signs") {
  const std::vector<int> none, three{3}, two_three{2, 3};
  CHECK(koszul_sign(none, three) == 1);
  CHECK(koszul_sign(three, three) == -1);
  CHECK(koszul_sign(two_three, three) == -1);
  CHECK(koszul_sign(two_three, std::vector<int>{2}) == 1);
}

TEST_CASE("random complexes: Betti numbers, rank-nullity, basis order") {
  for (unsigned seed = 0; seed < 10; ++seed) {
    std::mt19937 rng(seed);
    const auto rc = random_complex(rng, -2, 4);
    const auto& c = rc.complex;
    const auto h = homology(c, -2, 3);
    for (int p = -2; p <= 3; ++p) {
      CHECK(h.betti(p) == rc.betti.at(p));
      const auto& hd = h.degrees.at(p);
      CHECK(hd.cocycle_dim + rank(c.d(p)) == c.basis.dim(p));
      CHECK(hd.representatives.size() == hd.betti);
      for (const auto& v : hd.representatives) CHECK(is_zero(c.d(p) * v));
    }

    // permute every degree's basis and recompute
    std::map<int, Matrix> perm;
    for (int p = -2; p <= 4; ++p) {
      const std::size_t n = c.basis.dim(p);
      std::vector<std::size_t> order(n);
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(order.begin(), order.end(), rng);
      Matrix m(n, n);
      for (std::size_t i = 0; i < n; ++i) m(order[i], i) = 1;
      perm[p] = m;
    }
    std::map<int, Matrix> blocks;
    for (int p = -2; p < 4; ++p) blocks[p] = perm[p + 1].transpose() * c.d(p) * perm[p];
    const auto shuffled = make_complex(c.basis, blocks, -2, 4);
    const auto hp = homology(shuffled, -2, 3);
    for (int p = -2; p <= 3; ++p) CHECK(hp.betti(p) == h.betti(p));

    const auto dual = graded_dual(c);
    const auto hdual = homology(dual, -3, 2);
    for (int p = -2; p <= 2; ++p) CHECK(hdual.betti(-p) == h.betti(p));
  }
}

TEST_CASE("Hom differential squares to zero") {
  for (unsigned seed = 0; seed < 10; ++seed) {
    std::mt19937 rng(100 + seed);
    const auto s = random_complex(rng, 0, 4).complex;
    const auto t = random_complex(rng, -1, 5).complex;
    for (int k : {-1, 0, 1}) {
      const auto phi = random_map(s, t, k, rng);
      const auto once = hom_complex_differential(phi, s, t);
      const auto twice = hom_complex_differential(once, s, t);
      // blocks near the stored edges see truncated differentials
      for (int p = s.bottom + 1; p + k + 2 < t.top && p + 2 < s.top; ++p) CHECK(twice.block(p).is_zero());
    }
  }
}
