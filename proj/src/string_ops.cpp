#include "stringtop/string_ops.hpp"

#include <algorithm>
#include <numeric>

#include "stringtop/error.hpp"

namespace stringtop {

namespace {

int suspended_degree(const FiniteCdga& a, const Word& w) {
  int deg = 0;
  for (auto i : w) deg += a.degree(i) - 1;
  return deg;
}

FiniteElement to_finite(const Element& x) {
  FiniteElement out;
  for (const auto& [t, c] : x) {
    if (!t.monomial.is_unit()) throw Error("expected an element of the base algebra");
    out.add(t.base, c);
  }
  return out;
}

std::vector<FiniteElement> multiplication_map(const FiniteCdga& a) {
  std::vector<FiniteElement> out;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) out.push_back(a.multiply(i, j));
  return out;
}

bool is_isomorphism(const LinearMapByDegree& map, int lo, int hi) {
  for (int p = lo; p <= hi; ++p) {
    const Matrix m = map.block(p);
    if (m.rows() != map.target.dim(p) || m.cols() != map.source.dim(p)) return false;
    if (m.rows() != m.cols() || rank(m) != m.rows()) return false;
  }
  return true;
}

Monomial slice(const Monomial& m, std::size_t from, std::size_t to) {
  Monomial out;
  for (std::size_t i = from; i < to; ++i) out.exponents.push_back(m.exponent(i));
  out.trim();
  return out;
}

Monomial shifted(const Monomial& m, std::size_t offset) {
  if (m.is_unit()) return m;
  Monomial out;
  out.exponents.assign(offset, 0);
  out.exponents.insert(out.exponents.end(), m.exponents.begin(), m.exponents.end());
  return out;
}

Element shifted(const Element& x, std::size_t offset) {
  Element out;
  for (const auto& [t, c] : x) out.add(Term{t.base, shifted(t.monomial, offset)}, c);
  return out;
}

std::size_t full_rank_count(const Matrix& m) { return m.rows() == 0 || m.cols() == 0 ? 0 : rank(m); }

}  // namespace

LoopHomologyTable loop_betti_sullivan(const FreeCdga& model, int max_degree) {
  if (max_degree < 0) throw TruncationError("max_degree must be non-negative");
  const FreeCdga loop = loop_space_model(model);
  const auto c = loop.complex(max_degree + 1);
  const auto h = keyed_homology(c, 0, max_degree, false);
  LoopHomologyTable t{Provenance::Sullivan, max_degree, {}, {}};
  for (int p = 0; p <= max_degree; ++p) {
    t.betti[p] = h.betti(p);
    for (std::size_t i = 0; i < h.betti(p); ++i) t.representatives[p].push_back(c.format(h.representative(p, i)));
  }
  return t;
}

LoopHomologyTable loop_betti_hochschild(const FiniteCdga& a, int max_degree) {
  if (max_degree < 0) throw TruncationError("max_degree must be non-negative");
  const HochschildComplex ch(a);
  const auto c = ch.complex(max_degree + 1);
  const auto h = keyed_homology(c, 0, max_degree, false);
  LoopHomologyTable t{Provenance::Hochschild, max_degree, {}, {}};
  for (int p = 0; p <= max_degree; ++p) {
    t.betti[p] = h.betti(p);
    for (std::size_t i = 0; i < h.betti(p); ++i) t.representatives[p].push_back(c.format(h.representative(p, i)));
  }
  return t;
}

LoopCohomology::LoopCohomology(const FinitePdAlgebra& a, int top)
    : pd_(a), ch_(a.algebra), complex_(ch_.complex(top + 1)), homology_(keyed_homology(complex_, 0, top, true)), top_(top) {
  homology_.complex = &complex_;
}

std::string LoopCohomology::class_label(int p, std::size_t i) {
  return "[" + std::to_string(p) + ":" + std::to_string(i) + "]";
}

Combination<PairCoordinate> LoopCohomology::classify_pair(const Combination<HochschildPair>& x) const {
  Combination<PairCoordinate> out;
  std::map<HochschildKey, Vector> cache;
  auto coords = [&](const HochschildKey& k) -> const Vector& {
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
    const int p = ch_.degree(k);
    if (p > top_) throw TruncationError("class in degree " + std::to_string(p) + " exceeds truncation " + std::to_string(top_));
    return cache.emplace(k, homology_.classify(p, Combination<HochschildKey>(k))).first->second;
  };
  for (const auto& [k, c] : x) {
    const Vector& u = coords(k.first);
    const Vector& v = coords(k.second);
    const int q = ch_.degree(k.first), r = ch_.degree(k.second);
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (is_zero(u[i])) continue;
      for (std::size_t j = 0; j < v.size(); ++j)
        if (!is_zero(v[j])) out.add(PairCoordinate{q, i, r, j}, c * u[i] * v[j]);
    }
  }
  return out;
}

Combination<HochschildPair> mu_D_tensor_one(const FinitePdAlgebra& a, const DiagonalClass& dc, const NablaKey& k) {
  Combination<HochschildPair> out;
  const auto& alg = a.algebra;
  const std::size_t n = alg.dim();
  const long w1 = suspended_degree(alg, k.first);
  for (const auto& [t, c] : apply_mu_D(a, dc, FiniteElement(k.a))) {
    const std::size_t b = t / n, cc = t % n;
    out.add(HochschildPair{HochschildKey{b, k.first}, HochschildKey{cc, k.second}},
            sign_power(w1 * alg.degree(cc) + static_cast<long>(a.dimension) * alg.degree(k.a)) * c);
  }
  return out;
}

Combination<HochschildPair> loop_coproduct_cochain(const FinitePdAlgebra& a, const DiagonalClass& dc,
                                                   const Combination<HochschildKey>& x) {
  Combination<HochschildPair> out;
  for (const auto& [k, c] : x)
    for (const auto& [nk, c2] : nabla(k)) out.add(mu_D_tensor_one(a, dc, nk), c * c2);
  return out;
}

DualLoopProduct dual_loop_product(const FinitePdAlgebra& a, int max_degree) {
  require_poincare_duality(a);
  if (max_degree < 0) throw TruncationError("max_degree must be non-negative");
  const int m = a.dimension;
  const auto dc = diagonal_class(a);
  const LoopCohomology lc(a, max_degree + m);
  DualLoopProduct out;
  out.dimension = m;
  out.max_degree = max_degree;
  out.table.shift = -m;
  for (int p = 0; p <= max_degree + m; ++p) out.betti[p] = lc.homology().betti(p);
  auto dual = [](int p, std::size_t i) { return LoopCohomology::class_label(p, i) + "#"; };
  for (int p = 0; p <= max_degree; ++p) {
    auto& images = out.images[p];
    for (std::size_t k = 0; k < lc.homology().betti(p); ++k) {
      images.push_back(lc.classify_pair(loop_coproduct_cochain(a, dc, lc.homology().representative(p, k))));
      out.table.degrees[dual(p, k)] = p;
      for (const auto& [coord, c] : images.back()) {
        const auto& [q, i, r, j] = coord;
        out.table.degrees[dual(q, i)] = q;
        out.table.degrees[dual(r, j)] = r;
        // transpose with the Koszul sign of the pairing in shifted degrees
        const long e = static_cast<long>(q) * (r - m) + static_cast<long>(m) * p;
        out.table.entries[{dual(q, i), dual(r, j)}].add(dual(p, k), sign_power(e) * c);
        out.nontrivial = true;
      }
    }
  }
  return out;
}

Combination<HochschildKey> cap_action(const FiniteCdga& a, const FiniteElement& alpha,
                                      const Combination<HochschildKey>& x) {
  Combination<HochschildKey> out;
  for (const auto& [k, c] : x)
    for (const auto& [ai, ca] : alpha)
      for (const auto& [p, cp] : a.multiply(ai, k.a)) out.add(HochschildKey{p, k.letters}, c * ca * cp);
  return out;
}

namespace {

Combination<HochschildPair> pair_action(const FiniteCdga& a, const FiniteElement& alpha1, const FiniteElement& alpha2,
                                        const Combination<HochschildPair>& x) {
  Combination<HochschildPair> out;
  const long d2 = alpha2.empty() ? 0 : a.degree(alpha2);
  for (const auto& [k, c] : x) {
    const Rational s = sign_power(d2 * (a.degree(k.first.a) + suspended_degree(a, k.first.letters)));
    const auto left = cap_action(a, alpha1, Combination<HochschildKey>(k.first));
    const auto right = cap_action(a, alpha2, Combination<HochschildKey>(k.second));
    for (const auto& [u, cu] : left)
      for (const auto& [v, cv] : right) out.add(HochschildPair{u, v}, s * c * cu * cv);
  }
  return out;
}

}  // namespace

ModuleVerdict check_module_property(const FinitePdAlgebra& a, int max_degree) {
  require_poincare_duality(a);
  const int m = a.dimension;
  const auto& alg = a.algebra;
  const auto dc = diagonal_class(a);
  ModuleVerdict verdict;
  const int top = std::max(max_degree, 0);
  const LoopCohomology lc(a, top);

  // cohomology classes of A
  const auto ac = alg.complex();
  const auto ha = homology(ac, 0, alg.top_degree());
  struct Class {
    std::string label;
    int degree;
    FiniteElement rep;
  };
  std::vector<Class> classes;
  for (const auto& [p, deg] : ha.degrees)
    for (std::size_t i = 0; i < deg.betti; ++i) {
      FiniteElement rep = alg.element(p, deg.representatives[i]);
      classes.push_back({alg.format(rep), p, rep});
    }

  for (const auto& c1 : classes)
    for (const auto& c2 : classes) {
      const int s = c1.degree + c2.degree;
      const FiniteElement product = alg.multiply(c1.rep, c2.rep);
      for (int p = 0; 2 * s + p + m <= max_degree; ++p) {
        for (std::size_t k = 0; k < lc.homology().betti(p); ++k) {
          const auto z = lc.homology().representative(p, k);
          const auto lhs = lc.classify_pair(loop_coproduct_cochain(a, dc, cap_action(alg, product, z)));
          // Phi multiplies by D from the left, so it passes alpha1 alpha2 with a Koszul sign
          const auto rhs = sign_power(static_cast<long>(m) * s) *
                           lc.classify_pair(pair_action(alg, c1.rep, c2.rep, loop_coproduct_cochain(a, dc, z)));
          ++verdict.triples_checked;
          const int total = p + s + m;
          for (int q = 0; q <= total; ++q) {
            const int r = total - q;
            for (std::size_t i = 0; i < lc.homology().betti(q); ++i)
              for (std::size_t j = 0; j < lc.homology().betti(r); ++j) {
                const PairCoordinate coord{q, i, r, j};
                const Rational l = lhs.coefficient(coord), rr = rhs.coefficient(coord);
                ++verdict.coordinates_checked;
                if (!is_zero(l) || !is_zero(rr)) ++verdict.nonzero_coordinates;
                if (l != rr && verdict.pass) {
                  verdict.pass = false;
                  verdict.counterexample =
                      ModuleCounterexample{c1.label, c2.label, LoopCohomology::class_label(p, k), coord, l, rr};
                }
              }
          }
        }
      }
    }
  return verdict;
}

RelativeModel multiplication_model(const FinitePdAlgebra& a, int max_degree, const std::string& prefix) {
  const auto& alg = a.algebra;
  const FiniteCdga square = FiniteCdga::tensor(alg, alg);
  const FreeCdga source(square, {}, {});
  const FreeCdga target(alg, {}, {});
  CdgaMorphism mult{source, target, {}, {}};
  for (const auto& e : multiplication_map(alg)) mult.base_images.push_back(target.base_element(e));
  return relative_sullivan_model(mult, max_degree, prefix);
}

CoproductVerdict loop_coproduct_psi(const FinitePdAlgebra& a, int max_degree) {
  require_poincare_duality(a);
  if (max_degree < 0) throw TruncationError("max_degree must be non-negative");
  const int m = a.dimension;
  const auto& alg = a.algebra;
  const auto dc = diagonal_class(a);
  const auto rel = multiplication_model(a, max_degree + m + 1);
  const FreeCdga& e = rel.extension;
  const std::size_t nz = e.generator_count();

  std::vector<Generator> zp;
  std::vector<Element> dzp;
  for (std::size_t k = 0; k < nz; ++k) {
    zp.push_back({e.generators()[k].name + "'", e.generators()[k].degree});
    dzp.push_back(shifted(e.differential()[k], nz));
  }
  const FreeCdga e2 = e.extended(zp, dzp);
  const auto mult = multiplication_map(alg);
  const FreeCdga source = e2.change_base(alg, mult);
  const FreeCdga target = FreeCdga(e.base(), zp, e.differential()).change_base(alg, mult);

  CdgaMorphism theta{e2, target, {}, {}};
  for (const auto& x : mult) theta.base_images.push_back(target.base_element(x));
  for (std::size_t k = 0; k < nz; ++k)
    theta.generator_images.push_back(target.base_element(to_finite(rel.quasi_iso.generator_images[k])));
  for (std::size_t k = 0; k < nz; ++k) theta.generator_images.push_back(target.generator(k));
  if (auto bad = theta.chain_defect()) throw Error("theta (x) 1 is not a chain map on " + *bad);

  auto q_shriek = [&](const Element& x) {
    Element out;
    for (const auto& [t, c] : x)
      for (const auto& [s, cs] : apply_mu_D(a, dc, FiniteElement(t.base))) out.add(Term{s, t.monomial}, c * cs);
    return out;
  };
  auto psi = [&](const Element& x) { return theta.apply(q_shriek(x)); };

  CoproductVerdict v;
  v.max_degree = max_degree;
  v.euler_characteristic = euler_characteristic(a);
  for (auto i : rel.adjoined) v.adjoined.push_back(e.generators()[i].name);
  const Rational chi = v.euler_characteristic;

  std::vector<Term> keys;
  for (int p = 0; p <= max_degree; ++p)
    for (auto& t : source.basis(p)) keys.push_back(std::move(t));
  if (auto bad = chain_map_defect<Term, Term>(
          keys, m, [&](const Element& x) { return q_shriek(x); }, [&](const Term& t) { return source.d(t); },
          [&](const Term& t) { return e2.d(t); }))
    throw Error("q^! is not a chain map on " + source.label(*bad));

  bool unit_ok = true;
  for (const auto& t : keys) {
    const Monomial zpart = slice(t.monomial, 0, nz);
    const Monomial zprime = slice(t.monomial, nz, 2 * nz);
    Element expected;
    if (t.base == 0 && zpart.is_unit()) expected.add(Term{a.fundamental, zprime}, chi);
    const Element got = psi(Element(t));
    ++v.terms_checked;
    if (got != expected) {
      if (t.base == 0 && zpart.is_unit()) unit_ok = false;
      if (v.closed_form_holds) {
        v.closed_form_holds = false;
        v.closed_form_failure = "psi(" + source.label(t) + ") = " + target.format(got) + ", expected " + target.format(expected);
      }
    }
  }
  if (unit_ok) v.unit_coefficient = chi;

  const auto sc = source.complex(max_degree + 1);
  const auto tc = target.complex(max_degree + m + 1);
  const auto hs = keyed_homology(sc, 0, max_degree, false);
  const auto ht = keyed_homology(tc, 0, max_degree + m, true);
  v.trivial = true;
  for (int p = 0; p <= max_degree; ++p) {
    const Matrix blk = induced_block(hs, p, ht, p + m, psi);
    v.psi_rank[p] = full_rank_count(blk);
    if (v.psi_rank[p] != 0) v.trivial = false;
  }
  return v;
}

FiberIntersection intersection_with_fiber(const FinitePdAlgebra& a, int max_degree, bool with_sullivan) {
  require_poincare_duality(a);
  if (max_degree < 0) throw TruncationError("max_degree must be non-negative");
  const int m = a.dimension;
  const auto& alg = a.algebra;
  FiberIntersection out;
  out.dimension = m;
  out.max_degree = max_degree;

  const BarConstruction bar(alg);
  const auto bc = bar.complex(max_degree + 1);
  const auto hb = keyed_homology(bc, 0, max_degree, false);
  const HochschildComplex ch(alg);
  const auto cc = ch.complex(max_degree + m + 1);
  const auto hc = keyed_homology(cc, 0, max_degree + m, true);
  for (int p = 0; p <= max_degree; ++p) {
    Matrix blk = induced_block(hb, p, hc, p + m, [&](const Combination<BarWord>& x) {
      return x.map_linear([&](const BarWord& w) { return omega_inclusion(a, w); });
    });
    out.bar_betti[p] = hb.betti(p);
    out.hochschild_rank[p] = full_rank_count(blk);
    if (out.hochschild_rank[p] != hb.betti(p)) out.injective = false;
    out.hochschild_blocks.emplace(p, std::move(blk));
  }
  if (!with_sullivan) return out;

  const auto rel = multiplication_model(a, max_degree + m + 1);
  const FreeCdga& e = rel.extension;
  const FreeCdga loop = e.change_base(alg, multiplication_map(alg));
  std::vector<FiniteElement> augmentation(alg.dim() * alg.dim());
  augmentation[0] = FiniteElement(0);
  const FreeCdga fiber = e.change_base(FiniteCdga::ground(), augmentation);
  auto inclusion = [&](const Element& x) {
    Element y;
    for (const auto& [t, c] : x)
      y.add(Term{a.fundamental, t.monomial}, sign_power(static_cast<long>(m) * fiber.degree(t.monomial)) * c);
    return y;
  };
  const auto fc = fiber.complex(max_degree + 1);
  const auto lc = loop.complex(max_degree + m + 1);
  for (int p = 0; p <= max_degree; ++p)
    for (const auto& t : fc.basis(p))
      if (loop.d(inclusion(Element(t))) != inclusion(fiber.d(t)))
        throw Error("fiber inclusion is not a chain map on " + fiber.label(t));
  const auto hf = keyed_homology(fc, 0, max_degree, false);
  const auto hl = keyed_homology(lc, 0, max_degree + m, true);
  for (int p = 0; p <= max_degree; ++p) {
    out.sullivan_rank[p] = full_rank_count(induced_block(hf, p, hl, p + m, inclusion));
    if (out.sullivan_rank[p] != out.hochschild_rank[p]) out.ranks_agree = false;
  }
  return out;
}

void BGPresentation::validate() const {
  if (degrees.empty()) throw ValidationError("BG presentation needs rank >= 1");
  for (int d : degrees)
    if (d < 2 || d % 2 != 0) throw ValidationError("BG generator degrees must be even and >= 2, got " + std::to_string(d));
}

namespace {

std::string indexed(const std::string& stem, std::size_t i, std::size_t rank, const std::string& mark = "") {
  return rank == 1 ? stem + mark : stem + std::to_string(i + 1) + mark;
}

/// Rank of a degree-k map between two free algebras on each source degree.
Matrix chain_matrix(const FreeCdga& src, int p, const FreeCdga& tgt, int k, const std::function<Element(const Term&)>& f) {
  const auto keys = src.basis(p);
  const auto tkeys = tgt.basis(p + k);
  std::map<Term, std::size_t> index;
  for (std::size_t i = 0; i < tkeys.size(); ++i) index.emplace(tkeys[i], i);
  Matrix m(tkeys.size(), keys.size());
  for (std::size_t j = 0; j < keys.size(); ++j)
    for (const auto& [t, c] : f(keys[j])) m(index.at(t), j) += c;
  return m;
}

}  // namespace

BGProductVerdict bg_loop_product(const BGPresentation& g, int max_degree) {
  g.validate();
  if (max_degree < 0) throw TruncationError("max_degree must be non-negative");
  const std::size_t n = g.rank();
  std::vector<Generator> gens;
  for (std::size_t i = 0; i < n; ++i) gens.push_back({indexed("x", i, n), g.degrees[i]});
  for (std::size_t i = 0; i < n; ++i) gens.push_back({indexed("x", i, n, "'"), g.degrees[i]});
  for (std::size_t i = 0; i < n; ++i) gens.push_back({indexed("xh", i, n), g.degrees[i] - 1});
  for (std::size_t i = 0; i < n; ++i) gens.push_back({indexed("xh", i, n, "'"), g.degrees[i] - 1});
  for (std::size_t i = 0; i < n; ++i) gens.push_back({indexed("xb", i, n), g.degrees[i] - 1});
  const FreeCdga scratch(gens, {});
  std::vector<Element> diff(5 * n);
  for (std::size_t i = 0; i < n; ++i) diff[4 * n + i] = scratch.generator(i) - scratch.generator(n + i);
  const FreeCdga p(gens, diff);
  const FreeCdga target(std::vector<Generator>(gens.begin(), gens.begin() + 4 * static_cast<std::ptrdiff_t>(n)), {});
  int k = 0;
  for (int d : g.degrees) k -= d - 1;

  auto psi = [&](const Term& t) {
    Element out;
    for (std::size_t i = 4 * n; i < 5 * n; ++i)
      if (t.monomial.exponent(i) != 1) return out;
    const Monomial rest = slice(t.monomial, 0, 4 * n);
    const int hat = target.degree(slice(t.monomial, 0, 4 * n)) - target.degree(slice(t.monomial, 0, 2 * n));
    out.add(Term{0, rest}, sign_power(static_cast<long>(k) * hat));
    return out;
  };
  auto psi_e = [&](const Element& x) { return x.map_linear(psi); };

  BGProductVerdict v;
  v.max_degree = max_degree;
  v.psi_chain_map = true;
  for (int d = 0; d <= max_degree; ++d)
    for (const auto& t : p.basis(d))
      if (!psi_e(p.d(t)).empty()) v.psi_chain_map = false;

  std::vector<Generator> sgens(gens.begin(), gens.begin() + static_cast<std::ptrdiff_t>(n));
  sgens.insert(sgens.end(), gens.begin() + 2 * static_cast<std::ptrdiff_t>(n), gens.begin() + 4 * static_cast<std::ptrdiff_t>(n));
  const FreeCdga sub(sgens, {});
  CdgaMorphism iota{sub, p, {p.unit()}, {}};
  for (std::size_t i = 0; i < n; ++i) iota.generator_images.push_back(p.generator(i));
  for (std::size_t i = 2 * n; i < 4 * n; ++i) iota.generator_images.push_back(p.generator(i));
  v.inclusion_quasi_iso = is_isomorphism(morphism_induced_map(iota, 0, max_degree), 0, max_degree);

  bool zero = true;
  for (int d = 0; d <= max_degree; ++d)
    for (const auto& t : sub.basis(d)) {
      ++v.monomials_checked;
      if (!psi_e(iota.apply(t)).empty()) zero = false;
    }
  v.trivial = zero && v.inclusion_quasi_iso && v.psi_chain_map;
  return v;
}

BGCoproductVerdict bg_loop_coproduct(const BGPresentation& g, int max_degree) {
  g.validate();
  if (max_degree < 0) throw TruncationError("max_degree must be non-negative");
  const std::size_t n = g.rank();
  const auto N = static_cast<std::ptrdiff_t>(n);
  int k = 0;
  for (int d : g.degrees) k -= d - 1;

  // R = /\(x, x', x-, x^, x~)
  std::vector<Generator> rg;
  for (std::size_t i = 0; i < n; ++i) rg.push_back({indexed("x", i, n), g.degrees[i]});
  for (std::size_t i = 0; i < n; ++i) rg.push_back({indexed("x", i, n, "'"), g.degrees[i]});
  for (std::size_t i = 0; i < n; ++i) rg.push_back({indexed("xb", i, n), g.degrees[i] - 1});
  for (std::size_t i = 0; i < n; ++i) rg.push_back({indexed("xh", i, n), g.degrees[i] - 1});
  for (std::size_t i = 0; i < n; ++i) rg.push_back({indexed("xt", i, n), g.degrees[i] - 1});
  const FreeCdga rs(rg, {});
  std::vector<Element> rd(5 * n);
  for (std::size_t i = 0; i < n; ++i) {
    rd[2 * n + i] = rs.generator(i) - rs.generator(n + i);
    rd[4 * n + i] = rd[2 * n + i];
  }
  const FreeCdga r(rg, rd);

  // T = /\(x, x', x^, x~)
  std::vector<Generator> tg(rg.begin(), rg.begin() + 2 * N);
  tg.insert(tg.end(), rg.begin() + 3 * N, rg.end());
  const FreeCdga ts(tg, {});
  std::vector<Element> td(4 * n);
  for (std::size_t i = 0; i < n; ++i) td[3 * n + i] = ts.generator(i) - ts.generator(n + i);
  const FreeCdga t(tg, td);

  auto q_shriek = [&](const Term& term) {
    Element out;
    for (std::size_t i = 2 * n; i < 3 * n; ++i)
      if (term.monomial.exponent(i) != 1) return out;
    Monomial rest;
    for (std::size_t i = 0; i < 5 * n; ++i)
      if (i < 2 * n || i >= 3 * n) rest.exponents.push_back(term.monomial.exponent(i));
    rest.trim();
    out.add(Term{0, rest}, 1);
    return out;
  };

  // tau : /\(x, x-, x^) -> R
  std::vector<Generator> sg(rg.begin(), rg.begin() + N);
  sg.insert(sg.end(), rg.begin() + 2 * N, rg.begin() + 4 * N);
  const FreeCdga src(sg, {});
  CdgaMorphism tau{src, r, {r.unit()}, {}};
  for (std::size_t i = 0; i < n; ++i) tau.generator_images.push_back(r.generator(i));
  for (std::size_t i = 0; i < n; ++i) tau.generator_images.push_back(r.generator(2 * n + i) - r.generator(4 * n + i));
  for (std::size_t i = 0; i < n; ++i) tau.generator_images.push_back(r.generator(3 * n + i));

  // psi : T -> /\(x, x^)
  std::vector<Generator> ug(rg.begin(), rg.begin() + N);
  ug.insert(ug.end(), rg.begin() + 3 * N, rg.begin() + 4 * N);
  const FreeCdga u(ug, {});
  CdgaMorphism psi{t, u, {u.unit()}, {}};
  for (std::size_t i = 0; i < n; ++i) psi.generator_images.push_back(u.generator(i));
  for (std::size_t i = 0; i < n; ++i) psi.generator_images.push_back(u.generator(i));
  for (std::size_t i = 0; i < n; ++i) psi.generator_images.push_back(u.generator(n + i));
  for (std::size_t i = 0; i < n; ++i) psi.generator_images.push_back(Element{});

  BGCoproductVerdict v;
  v.max_degree = max_degree;
  const int src_top = max_degree - k;
  std::vector<Term> rkeys;
  for (int d = 0; d <= src_top; ++d)
    for (auto& term : r.basis(d)) rkeys.push_back(std::move(term));
  v.q_chain_map = !chain_map_defect<Term, Term>(
                       rkeys, k, [&](const Element& x) { return x.map_linear(q_shriek); },
                       [&](const Term& x) { return r.d(x); }, [&](const Term& x) { return t.d(x); })
                       .has_value();
  v.tau_quasi_iso = is_isomorphism(morphism_induced_map(tau, 0, src_top), 0, src_top);
  v.psi_quasi_iso = is_isomorphism(morphism_induced_map(psi, 0, max_degree), 0, max_degree);

  bool onto = true;
  for (int d = 0; d <= max_degree; ++d) {
    const Matrix mtx = chain_matrix(src, d - k, u, k, [&](const Term& x) {
      return psi.apply(tau.apply(x).map_linear(q_shriek));
    });
    const std::size_t rk = full_rank_count(mtx);
    v.ranks[d] = {rk, mtx.rows()};
    if (rk != mtx.rows()) onto = false;
  }

  // pi : /\(x, x-) (x) /\(x', x^) -> /\(x, x-, x^), x' -> x
  std::vector<Generator> pg(rg.begin(), rg.begin() + N);
  pg.insert(pg.end(), rg.begin() + 2 * N, rg.begin() + 3 * N);
  pg.insert(pg.end(), rg.begin() + N, rg.begin() + 2 * N);
  pg.insert(pg.end(), rg.begin() + 3 * N, rg.begin() + 4 * N);
  const FreeCdga psrc(pg, {});
  CdgaMorphism pi{psrc, src, {src.unit()}, {}};
  for (std::size_t i = 0; i < n; ++i) pi.generator_images.push_back(src.generator(i));
  for (std::size_t i = 0; i < n; ++i) pi.generator_images.push_back(src.generator(n + i));
  for (std::size_t i = 0; i < n; ++i) pi.generator_images.push_back(src.generator(i));
  for (std::size_t i = 0; i < n; ++i) pi.generator_images.push_back(src.generator(2 * n + i));
  v.pi_surjective = true;
  for (int d = 0; d <= max_degree; ++d) {
    const Matrix mtx = chain_matrix(psrc, d, src, 0, [&](const Term& x) { return pi.apply(x); });
    if (full_rank_count(mtx) != mtx.rows()) v.pi_surjective = false;
  }
  v.surjective = onto && v.q_chain_map && v.tau_quasi_iso && v.psi_quasi_iso;
  return v;
}

namespace {

struct HomKey {
  Monomial mu;  ///< monomial in the sv generators
  Monomial r;   ///< monomial in /\V^{(x)n}

  friend auto operator<=>(const HomKey&, const HomKey&) = default;
};

}  // namespace

ExtDiagonal ext_diagonal(const FreeCdga& model, int copies, int max_degree, std::optional<int> expected_d) {
  if (!model.base().is_ground() || !model.has_zero_differential())
    throw ValidationError("ext_diagonal needs a Sullivan algebra over Q with zero differential");
  if (copies < 1) throw ValidationError("ext_diagonal needs at least one copy");
  if (max_degree < 0) throw TruncationError("max_degree must be non-negative");
  const std::size_t t = model.generator_count();
  const std::size_t nb = t * static_cast<std::size_t>(copies);
  std::vector<Generator> gens;
  for (int j = 1; j <= copies; ++j)
    for (const auto& g : model.generators()) gens.push_back({g.name + "(" + std::to_string(j) + ")", g.degree});
  std::vector<Generator> sgens;
  for (int j = 2; j <= copies; ++j)
    for (const auto& g : model.generators()) {
      if (g.degree < 2) throw ValidationError("generator " + g.name + " has degree 1; its suspension would have degree 0");
      sgens.push_back({"s" + g.name + "(" + std::to_string(j) + ")", g.degree - 1});
    }
  const FreeCdga b(gens, {});
  std::vector<Generator> all = gens;
  all.insert(all.end(), sgens.begin(), sgens.end());
  const FreeCdga scratch(all, {});
  std::vector<Element> diff(all.size());
  for (std::size_t s = 0; s < sgens.size(); ++s) {
    const std::size_t v = s % t, j = s / t + 1;
    diff[nb + s] = scratch.generator(v) - scratch.generator(j * t + v);
  }
  const FreeCdga res(all, diff);
  const FreeCdga svs(sgens, {});

  ExtDiagonal out;
  out.copies = copies;
  out.max_degree = max_degree;

  CdgaMorphism aug{res, model, {model.unit()}, {}};
  for (int j = 0; j < copies; ++j)
    for (std::size_t v = 0; v < t; ++v) aug.generator_images.push_back(model.generator(v));
  for (std::size_t s = 0; s < sgens.size(); ++s) aug.generator_images.push_back(Element{});
  out.resolution_quasi_iso = is_isomorphism(morphism_induced_map(aug, 0, max_degree), 0, max_degree);

  const bool all_even = std::all_of(model.generators().begin(), model.generators().end(),
                                    [](const Generator& g) { return g.degree % 2 == 0; });
  const bool all_odd = std::all_of(model.generators().begin(), model.generators().end(),
                                   [](const Generator& g) { return g.degree % 2 != 0; });
  int sv_total = 0, b_top = 0;
  for (const auto& g : sgens) sv_total += g.degree;
  for (const auto& g : gens) b_top += g.degree;
  if (!all_even && !all_odd && copies > 1)
    throw TruncationError("Hom complex is infinite in each degree when even and odd generators are mixed");
  auto mu_bound = [&](int k) { return all_even || copies == 1 ? sv_total : b_top - k; };

  auto degree = [&](const HomKey& key) { return b.degree(key.r) - svs.degree(key.mu); };
  auto basis = [&](int k) {
    std::vector<HomKey> keys;
    for (int e = 0; e <= mu_bound(k); ++e)
      for (const auto& mu : svs.monomial_basis(e))
        for (const auto& r : b.monomial_basis(k + e)) keys.push_back(HomKey{mu, r});
    return keys;
  };
  auto d = [&](const HomKey& key) {
    Combination<HomKey> out_d;
    const int k = degree(key);
    for (std::size_t g = 0; g < sgens.size(); ++g) {
      Monomial bigger = key.mu;
      if (bigger.exponents.size() <= g) bigger.exponents.resize(g + 1, 0);
      if (sgens[g].degree % 2 != 0 && bigger.exponents[g] > 0) continue;
      bigger.exponents[g] += 1;
      for (const auto& [term, c] : res.d(Term{0, shifted(bigger, nb)})) {
        if (slice(term.monomial, nb, nb + sgens.size()) != key.mu) continue;
        const Monomial bpart = slice(term.monomial, 0, nb);
        const Rational s = -sign_power(k) * sign_power(static_cast<long>(k) * b.degree(bpart));
        for (const auto& [prod, cp] : b.multiply(Element(Term{0, bpart}), Element(Term{0, key.r})))
          out_d.add(HomKey{bigger, prod.monomial}, s * c * cp);
      }
    }
    return out_d;
  };
  auto label = [&](const HomKey& key) { return svs.label(key.mu) + "*->" + b.label(key.r); };
  const KeyedComplex<HomKey> hom(-max_degree - 1, max_degree + 1, false, basis, d, label);
  const auto h = homology(hom.complex(), -max_degree, max_degree);
  for (int k = -max_degree; k <= max_degree; ++k) out.dimensions[k] = h.betti(k);

  auto hx = [&](int p) -> std::size_t { return p < 0 ? 0 : model.monomial_basis(p).size(); };
  if (expected_d) {
    out.shift = (copies - 1) * *expected_d;
  } else {
    for (int k = -max_degree; k <= max_degree; ++k)
      if (out.dimensions[k] != 0) {
        out.shift = k;
        break;
      }
  }
  if (out.shift) {
    if (copies == 1) {
      if (*out.shift == 0) out.gorenstein_dimension = 0;
    } else if (*out.shift % (copies - 1) == 0) {
      out.gorenstein_dimension = *out.shift / (copies - 1);
    }
    out.matches = true;
    for (int k = -max_degree; k <= max_degree; ++k)
      if (out.dimensions[k] != hx(k - *out.shift)) {
        out.matches = false;
        out.first_failure = k;
        break;
      }
  } else {
    out.first_failure = -max_degree;
  }
  return out;
}

}  // namespace stringtop
