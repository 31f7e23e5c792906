#include "stringtop/cdga.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "stringtop/error.hpp"

namespace stringtop {

Monomial Monomial::of(std::size_t generator, int power) {
  Monomial m;
  if (power == 0) return m;
  m.exponents.assign(generator + 1, 0);
  m.exponents[generator] = power;
  return m;
}

void Monomial::trim() {
  while (!exponents.empty() && exponents.back() == 0) exponents.pop_back();
}

FreeCdga::FreeCdga(std::vector<Generator> generators, std::vector<Element> differential)
    : FreeCdga(FiniteCdga::ground(), std::move(generators), std::move(differential)) {}

FreeCdga::FreeCdga(FiniteCdga base, std::vector<Generator> generators, std::vector<Element> differential)
    : base_(std::make_shared<const FiniteCdga>(std::move(base))),
      generators_(std::move(generators)),
      differential_(std::move(differential)) {
  std::set<std::string> names;
  for (const auto& g : generators_) {
    if (g.degree < 1)
      throw ValidationError("generator " + g.name + " has degree " + std::to_string(g.degree) + "; degrees must be >= 1");
    if (!names.insert(g.name).second) throw ValidationError("duplicate generator name '" + g.name + "'");
  }
  if (differential_.empty()) differential_.resize(generators_.size());
  if (differential_.size() != generators_.size())
    throw ValidationError("differential must have one value per generator");
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    for (const auto& [t, c] : differential_[i]) {
      if (t.base >= base_->dim() || t.monomial.exponents.size() > generators_.size())
        throw ValidationError("d " + generators_[i].name + " refers to an unknown generator");
      for (std::size_t j = 0; j < t.monomial.exponents.size(); ++j)
        if (generators_[j].degree % 2 != 0 && t.monomial.exponents[j] > 1)
          throw ValidationError("d " + generators_[i].name + " contains a square of the odd generator " + generators_[j].name);
      if (degree(t) != generators_[i].degree + 1)
        throw ValidationError("d does not raise degree by 1 on " + generators_[i].name);
    }
  }
}

long FreeCdga::generator_index(const std::string& name) const {
  for (std::size_t i = 0; i < generators_.size(); ++i)
    if (generators_[i].name == name) return static_cast<long>(i);
  return -1;
}

bool FreeCdga::has_zero_differential() const {
  return base_->has_zero_differential() &&
         std::all_of(differential_.begin(), differential_.end(), [](const auto& e) { return e.empty(); });
}

int FreeCdga::degree(const Monomial& m) const {
  int deg = 0;
  for (std::size_t i = 0; i < m.exponents.size(); ++i) deg += m.exponents[i] * generators_.at(i).degree;
  return deg;
}

int FreeCdga::degree(const Term& t) const { return base_->degree(t.base) + degree(t.monomial); }

int FreeCdga::degree(const Element& x) const {
  if (x.empty()) throw Error("degree of zero element is undefined");
  const int deg = degree(x.begin()->first);
  for (const auto& [t, c] : x)
    if (degree(t) != deg) throw Error("non-homogeneous input: " + format(x));
  return deg;
}

Element FreeCdga::generator(const std::string& name) const {
  const long i = generator_index(name);
  if (i < 0) throw ValidationError("unknown generator '" + name + "'");
  return generator(static_cast<std::size_t>(i));
}

Element FreeCdga::base_element(const FiniteElement& x) const {
  Element out;
  for (const auto& [i, c] : x) out.add(Term{i, {}}, c);
  return out;
}

std::optional<std::pair<int, Monomial>> FreeCdga::multiply_monomials(const Monomial& a, const Monomial& b) const {
  const std::size_t n = std::max(a.exponents.size(), b.exponents.size());
  Monomial out;
  out.exponents.assign(n, 0);
  long swaps = 0;
  long odd_after = 0;  // odd generators of `a` with index > i
  for (std::size_t k = n; k-- > 0;) {
    const bool odd = generators_.at(k).degree % 2 != 0;
    const int ea = a.exponent(k), eb = b.exponent(k);
    if (odd && ea > 0 && eb > 0) return std::nullopt;
    if (odd && eb > 0) swaps += odd_after;
    if (odd && ea > 0) ++odd_after;
    out.exponents[k] = ea + eb;
  }
  out.trim();
  return std::make_pair(parity_sign(swaps), std::move(out));
}

Element FreeCdga::multiply(const Element& x, const Element& y) const {
  Element out;
  for (const auto& [t1, c1] : x)
    for (const auto& [t2, c2] : y) {
      auto mono = multiply_monomials(t1.monomial, t2.monomial);
      if (!mono) continue;
      const Rational s = sign_power(static_cast<long>(degree(t1.monomial)) * base_->degree(t2.base)) * mono->first;
      for (const auto& [b, cb] : base_->multiply(t1.base, t2.base)) out.add(Term{b, mono->second}, s * c1 * c2 * cb);
    }
  return out;
}

Element FreeCdga::power(const Element& x, int n) const {
  Element out = unit();
  for (int i = 0; i < n; ++i) out = multiply(out, x);
  return out;
}

Element FreeCdga::derive_monomial(const std::vector<Element>& values, int parity, const Monomial& m) const {
  Element out;
  long prefix_degree = 0;
  for (std::size_t i = 0; i < m.exponents.size(); ++i) {
    const int e = m.exponents[i];
    if (e == 0) continue;
    if (i < values.size() && !values[i].empty()) {
      Monomial prefix;
      prefix.exponents.assign(m.exponents.begin(), m.exponents.begin() + static_cast<std::ptrdiff_t>(i));
      prefix.trim();
      Monomial rest = m;
      std::fill(rest.exponents.begin(), rest.exponents.begin() + static_cast<std::ptrdiff_t>(i), 0);
      rest.exponents[i] -= 1;
      rest.trim();
      Element term = multiply(multiply(Element(Term{0, prefix}), values[i]), Element(Term{0, rest}));
      out.add(term, sign_power(parity * prefix_degree) * e);
    }
    prefix_degree += static_cast<long>(e) * generators_[i].degree;
  }
  return out;
}

Element FreeCdga::apply_derivation(const std::vector<Element>& values, int parity, const Element& x,
                                   const std::function<Element(std::size_t)>& on_base) const {
  Element out;
  for (const auto& [t, c] : x) {
    if (on_base) out.add(multiply(on_base(t.base), Element(Term{0, t.monomial})), c);
    const Element dm = derive_monomial(values, parity, t.monomial);
    if (dm.empty()) continue;
    const Rational s = sign_power(static_cast<long>(parity) * base_->degree(t.base));
    out.add(multiply(Element(Term{t.base, {}}), dm), s * c);
  }
  return out;
}

Element FreeCdga::d(const Term& t) const { return d(Element(t)); }

Element FreeCdga::d(const Element& x) const {
  if (base_->has_zero_differential()) return apply_derivation(differential_, 1, x);
  return apply_derivation(differential_, 1, x, [this](std::size_t b) { return base_element(base_->d(b)); });
}

std::vector<Monomial> FreeCdga::monomial_basis(int degree) const {
  std::vector<Monomial> out;
  if (degree < 0) return out;
  std::vector<int> exps(generators_.size(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int remaining) {
    if (i == generators_.size()) {
      if (remaining == 0) {
        Monomial m{exps};
        m.trim();
        out.push_back(std::move(m));
      }
      return;
    }
    const int deg = generators_[i].degree;
    const int max_e = deg % 2 != 0 ? std::min(1, remaining / deg) : remaining / deg;
    for (int e = max_e; e >= 0; --e) {
      exps[i] = e;
      rec(i + 1, remaining - e * deg);
    }
    exps[i] = 0;
  };
  rec(0, degree);
  return out;
}

std::vector<Term> FreeCdga::basis(int degree) const {
  std::vector<Term> out;
  for (std::size_t b = 0; b < base_->dim(); ++b) {
    const int db = base_->degree(b);
    if (db > degree) continue;
    for (auto& m : monomial_basis(degree - db)) out.push_back(Term{b, std::move(m)});
  }
  return out;
}

std::string FreeCdga::label(const Monomial& m) const {
  if (m.is_unit()) return "1";
  std::string out;
  for (std::size_t i = 0; i < m.exponents.size(); ++i) {
    if (m.exponents[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += generators_[i].name;
    if (m.exponents[i] > 1) out += "^" + std::to_string(m.exponents[i]);
  }
  return out;
}

std::string FreeCdga::label(const Term& t) const {
  if (t.base == 0) return label(t.monomial);
  const std::string& b = base_->label(t.base);
  if (t.monomial.is_unit()) return b;
  return "(" + b + ")·" + label(t.monomial);
}

std::string FreeCdga::format(const Element& x) const {
  return format_combination(x, [this](const Term& t) { return label(t); });
}

KeyedComplex<Term> FreeCdga::complex(int top) const { return window(0, top); }

KeyedComplex<Term> FreeCdga::window(int lo, int hi) const {
  auto self = std::make_shared<const FreeCdga>(*this);
  const bool from_bottom = lo <= 0;
  return KeyedComplex<Term>(
      from_bottom ? 0 : lo, hi, from_bottom, [self](int p) { return self->basis(p); },
      [self](const Term& t) { return self->d(t); }, [self](const Term& t) { return self->label(t); });
}

FreeCdga FreeCdga::extended(const std::vector<Generator>& extra, const std::vector<Element>& extra_differential) const {
  auto gens = generators_;
  gens.insert(gens.end(), extra.begin(), extra.end());
  auto diff = differential_;
  diff.insert(diff.end(), extra_differential.begin(), extra_differential.end());
  diff.resize(gens.size());
  return FreeCdga(*base_, std::move(gens), std::move(diff));
}

FreeCdga FreeCdga::change_base(const FiniteCdga& new_base, const std::vector<FiniteElement>& base_map) const {
  if (base_map.size() != base_->dim()) throw ValidationError("change_base: map must cover the base basis");
  for (std::size_t b = 0; b < base_map.size(); ++b)
    for (const auto& [c, coef] : base_map[b])
      if (new_base.degree(c) != base_->degree(b)) throw ValidationError("change_base: map is not degree preserving");
  std::vector<Element> diff;
  for (const auto& dz : differential_) {
    Element out;
    for (const auto& [t, c] : dz)
      for (const auto& [nb, coef] : base_map[t.base]) out.add(Term{nb, t.monomial}, c * coef);
    diff.push_back(std::move(out));
  }
  return FreeCdga(new_base, generators_, std::move(diff));
}

CdgaVerdict check_cdga(const FreeCdga& algebra, int max_degree) {
  CdgaVerdict v;
  for (std::size_t b = 0; b < algebra.base().dim(); ++b) {
    if (!algebra.base().d(algebra.base().d(b)).empty()) {
      v.pass = false;
      v.generator = algebra.base().label(b);
      v.defect = algebra.base_element(algebra.base().d(algebra.base().d(b)));
      v.message = "d o d != 0 on base element " + v.generator;
      return v;
    }
  }
  for (std::size_t i = 0; i < algebra.generator_count(); ++i) {
    const auto& g = algebra.generators()[i];
    if (g.degree + 2 > max_degree + 1) continue;
    Element dd = algebra.d(algebra.d(algebra.generator(i)));
    if (!dd.empty()) {
      v.pass = false;
      v.generator = g.name;
      v.defect = dd;
      v.message = "d o d != 0 on " + g.name + ": " + algebra.format(dd);
      return v;
    }
  }
  v.message = "d o d = 0 on all generators through degree " + std::to_string(max_degree + 1);
  return v;
}

Element CdgaMorphism::apply(const Term& t) const {
  Element out = base_images.at(t.base);
  for (std::size_t i = 0; i < t.monomial.exponents.size(); ++i)
    for (int k = 0; k < t.monomial.exponents[i]; ++k) out = target.multiply(out, generator_images.at(i));
  return out;
}

Element CdgaMorphism::apply(const Element& x) const {
  Element out;
  for (const auto& [t, c] : x) out.add(apply(t), c);
  return out;
}

void CdgaMorphism::validate() const {
  if (base_images.size() != source.base().dim() || generator_images.size() != source.generator_count())
    throw ValidationError("morphism must give an image for every base element and generator");
  for (std::size_t b = 0; b < base_images.size(); ++b)
    for (const auto& [t, c] : base_images[b])
      if (target.degree(t) != source.base().degree(b))
        throw ValidationError("morphism does not preserve the degree of " + source.base().label(b));
  for (std::size_t i = 0; i < generator_images.size(); ++i)
    for (const auto& [t, c] : generator_images[i])
      if (target.degree(t) != source.generators()[i].degree)
        throw ValidationError("morphism does not preserve the degree of " + source.generators()[i].name);
}

std::optional<std::string> CdgaMorphism::chain_defect() const {
  for (std::size_t b = 0; b < source.base().dim(); ++b) {
    const Element x(Term{b, {}});
    if (apply(source.d(x)) != target.d(apply(x))) return source.base().label(b);
  }
  for (std::size_t i = 0; i < source.generator_count(); ++i) {
    const Element x = source.generator(i);
    if (apply(source.d(x)) != target.d(apply(x))) return source.generators()[i].name;
  }
  return std::nullopt;
}

CdgaMorphism identity_morphism(const FreeCdga& algebra) { return inclusion_morphism(algebra, algebra); }

CdgaMorphism inclusion_morphism(const FreeCdga& source, const FreeCdga& target) {
  if (source.base().dim() != target.base().dim() || source.generator_count() > target.generator_count())
    throw ValidationError("inclusion: target does not extend source");
  CdgaMorphism phi{source, target, {}, {}};
  for (std::size_t b = 0; b < source.base().dim(); ++b) phi.base_images.push_back(Element(Term{b, {}}));
  for (std::size_t i = 0; i < source.generator_count(); ++i) {
    if (source.generators()[i].name != target.generators()[i].name)
      throw ValidationError("inclusion: generator " + source.generators()[i].name + " is not preserved");
    phi.generator_images.push_back(target.generator(i));
  }
  return phi;
}

LinearMapByDegree morphism_induced_map(const CdgaMorphism& phi, int lo, int hi) {
  phi.validate();
  if (auto bad = phi.chain_defect()) throw ValidationError("non-chain-map input: phi does not commute with d on " + *bad);
  lo = std::max(lo, 0);
  const auto src = phi.source.complex(hi + 1);
  const auto tgt = phi.target.complex(hi + 1);
  const auto hs = keyed_homology(src, lo, hi, false);
  const auto ht = keyed_homology(tgt, lo, hi, true);
  LinearMapByDegree map{homology_basis(hs.summary), homology_basis(ht.summary), 0, {}};
  for (int p = lo; p <= hi; ++p)
    map.set_block(p, induced_block(hs, p, ht, p, [&](const Element& e) { return phi.apply(e); }));
  return map;
}

FreeCdga loop_space_model(const FreeCdga& model) {
  if (!model.base().is_ground()) throw ValidationError("loop_space_model expects a Sullivan algebra over Q");
  const std::size_t n = model.generator_count();
  std::vector<Generator> gens = model.generators();
  for (const auto& g : model.generators()) {
    if (g.degree <= 1)
      throw ValidationError("generator " + g.name + " has degree " + std::to_string(g.degree) +
                            "; its loop partner would have degree <= 0");
    gens.push_back({"s" + g.name, g.degree - 1});
  }
  std::vector<Element> diff = model.differential();
  diff.resize(2 * n);
  const FreeCdga scratch(gens, diff);
  std::vector<Element> s_values(2 * n);
  for (std::size_t i = 0; i < n; ++i) s_values[i] = scratch.generator(n + i);
  for (std::size_t i = 0; i < n; ++i) diff[n + i] = -scratch.apply_derivation(s_values, 1, model.differential()[i]);
  return FreeCdga(std::move(gens), std::move(diff));
}

RelativeModel relative_sullivan_model(const CdgaMorphism& phi, int max_degree, const std::string& prefix) {
  phi.validate();
  if (auto bad = phi.chain_defect()) throw ValidationError("non-chain-map input: phi does not commute with d on " + *bad);
  if (max_degree < 0) throw TruncationError("relative model needs max_degree >= 0");
  FreeCdga ext = phi.source;
  const FreeCdga& target = phi.target;
  std::vector<Element> images = phi.generator_images;
  std::vector<std::size_t> adjoined;
  std::map<int, int> counters;
  auto current = [&] { return CdgaMorphism{ext, target, phi.base_images, images}; };
  auto apply_fn = [&](const CdgaMorphism& m) { return [m](const Element& e) { return m.apply(e); }; };

  {
    const auto tc = target.window(0, 1);
    const auto sc = ext.window(0, 1);
    if (keyed_homology(tc, 0, 0, false).betti(0) != 1) throw ValidationError("target cohomology is not connected");
    if (keyed_homology(sc, 0, 0, false).betti(0) != 1) throw ValidationError("source cohomology is not connected");
  }

  auto adjoin = [&](int degree, std::vector<Element> diffs, std::vector<Element> imgs) {
    if (diffs.empty()) return;
    std::vector<Generator> gens;
    for (std::size_t i = 0; i < diffs.size(); ++i) {
      std::string name;
      do {
        name = prefix + std::to_string(degree) + "_" + std::to_string(counters[degree]++);
      } while (ext.generator_index(name) >= 0);
      gens.push_back({name, degree});
      adjoined.push_back(ext.generator_count() + i);
    }
    ext = ext.extended(gens, diffs);
    images.insert(images.end(), imgs.begin(), imgs.end());
  };

  for (int n = 1; n <= max_degree; ++n) {
    {  // onto H^n
      const auto we = ext.window(n - 1, n + 1);
      const auto wc = target.window(n - 1, n + 1);
      const auto he = keyed_homology(we, n, n, false);
      const auto hc = keyed_homology(wc, n, n, true);
      const auto phi_now = current();
      const Matrix m = induced_block(he, n, hc, n, apply_fn(phi_now));
      const std::size_t hs = m.cols(), ht = m.rows();
      Matrix aug(ht, hs + ht);
      for (std::size_t r = 0; r < ht; ++r) {
        for (std::size_t c = 0; c < hs; ++c) aug(r, c) = m(r, c);
        aug(r, hs + r) = 1;
      }
      std::vector<Element> diffs, imgs;
      for (auto p : rref(aug)) {
        if (p < hs) continue;
        diffs.emplace_back();
        imgs.push_back(hc.representative(n, p - hs));
      }
      adjoin(n, std::move(diffs), std::move(imgs));
    }
    const auto wc = target.window(n, n + 2);
    const auto hc = keyed_homology(wc, n + 1, n + 1, true);
    for (int round = 0;; ++round) {  // injective on H^{n+1}
      if (round > 64) throw TruncationError("relative model does not stabilize in degree " + std::to_string(n));
      const auto we = ext.window(n, n + 2);
      const auto he = keyed_homology(we, n + 1, n + 1, false);
      const auto phi_now = current();
      const Matrix m = induced_block(he, n + 1, hc, n + 1, apply_fn(phi_now));
      const auto kernel = nullspace(m);
      if (kernel.empty()) break;
      std::vector<Element> diffs, imgs;
      for (const auto& k : kernel) {
        Element e;
        for (std::size_t i = 0; i < k.size(); ++i) e.add(he.representative(n + 1, i), k[i]);
        const Vector target_coords = wc.coordinates(n + 1, phi_now.apply(e));
        auto pre = solve(wc.complex().d(n), target_coords);
        if (!pre) throw Error("relative model: image of a kernel class is not a boundary");
        diffs.push_back(std::move(e));
        imgs.push_back(wc.element(n, *pre));
      }
      adjoin(n, std::move(diffs), std::move(imgs));
    }
  }
  return RelativeModel{ext, current(), adjoined, max_degree};
}

FiniteCdga truncate(const FreeCdga& algebra, int top) {
  std::vector<Term> terms;
  for (int p = 0; p <= top; ++p)
    for (auto& t : algebra.basis(p)) terms.push_back(std::move(t));
  std::map<Term, std::size_t> index;
  std::vector<FiniteBasisElement> basis;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    index.emplace(terms[i], i);
    basis.push_back({algebra.label(terms[i]), algebra.degree(terms[i])});
  }
  auto to_finite = [&](const Element& x) {
    FiniteElement out;
    for (const auto& [t, c] : x) {
      auto it = index.find(t);
      if (it != index.end()) out.add(it->second, c);
    }
    return out;
  };
  FiniteCdga::ProductTable products;
  for (std::size_t i = 1; i < terms.size(); ++i)
    for (std::size_t j = i; j < terms.size(); ++j) {
      if (basis[i].degree + basis[j].degree > top) continue;
      auto prod = to_finite(algebra.multiply(Element(terms[i]), Element(terms[j])));
      if (!prod.empty()) products[{i, j}] = std::move(prod);
    }
  std::vector<FiniteElement> diff;
  for (const auto& t : terms) diff.push_back(to_finite(algebra.d(t)));
  return FiniteCdga(std::move(basis), products, std::move(diff));
}

}  // namespace stringtop
