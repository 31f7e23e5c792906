#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stringtop/combination.hpp"
#include "stringtop/error.hpp"
#include "stringtop/graded.hpp"

namespace stringtop {

/// Materializes a complex whose basis elements are structured keys (words,
/// monomials, tensors) over a degree window, and converts between sparse
/// combinations of keys and dense coordinate vectors.
template <class Key>
class KeyedComplex {
 public:
  using BasisFn = std::function<std::vector<Key>(int)>;
  using DiffFn = std::function<Combination<Key>(const Key&)>;
  using LabelFn = std::function<std::string(const Key&)>;

  KeyedComplex(int bottom, int top, bool zero_below, BasisFn basis, DiffFn d, LabelFn label)
      : d_(std::move(d)), label_(std::move(label)) {
    GradedBasis gb;
    for (int p = bottom; p <= top; ++p) {
      auto keys = basis(p);
      auto& idx = index_[p];
      for (std::size_t i = 0; i < keys.size(); ++i) {
        idx.emplace(keys[i], i);
        gb.add(p, label_(keys[i]));
      }
      bases_[p] = std::move(keys);
    }
    std::map<int, Matrix> blocks;
    for (int p = bottom; p < top; ++p) {
      const auto& src = bases_[p];
      Matrix m(bases_[p + 1].size(), src.size());
      for (std::size_t j = 0; j < src.size(); ++j) {
        for (const auto& [k, c] : d_(src[j])) {
          auto it = index_[p + 1].find(k);
          if (it == index_[p + 1].end())
            throw std::logic_error("differential of '" + label_(src[j]) + "' leaves the degree-" + std::to_string(p + 1) +
                                   " basis at '" + label_(k) + "'");
          m(it->second, j) += c;
        }
      }
      blocks.emplace(p, std::move(m));
    }
    complex_ = make_complex(std::move(gb), std::move(blocks), bottom, top, zero_below);
  }

  const ChainComplex& complex() const { return complex_; }
  int bottom() const { return complex_.bottom; }
  int top() const { return complex_.top; }

  const std::vector<Key>& basis(int p) const {
    static const std::vector<Key> empty;
    auto it = bases_.find(p);
    return it == bases_.end() ? empty : it->second;
  }

  bool stores(int p) const { return bases_.count(p) > 0; }

  Combination<Key> d(const Key& k) const { return d_(k); }
  Combination<Key> d(const Combination<Key>& x) const { return x.map_linear(d_); }
  std::string label(const Key& k) const { return label_(k); }
  const DiffFn& differential_fn() const { return d_; }

  Vector coordinates(int p, const Combination<Key>& x) const {
    if (!stores(p)) throw TruncationError("degree " + std::to_string(p) + " is not materialized");
    const auto& idx = index_.at(p);
    Vector v(bases_.at(p).size());
    for (const auto& [k, c] : x) {
      auto it = idx.find(k);
      if (it == idx.end()) throw Error("element '" + label_(k) + "' is not in the degree-" + std::to_string(p) + " basis");
      v[it->second] += c;
    }
    return v;
  }

  Combination<Key> element(int p, const Vector& v) const {
    const auto& keys = basis(p);
    Combination<Key> out;
    for (std::size_t i = 0; i < v.size() && i < keys.size(); ++i) out.add(keys[i], v[i]);
    return out;
  }

  std::string format(const Combination<Key>& x) const;

 private:
  DiffFn d_;
  LabelFn label_;
  std::map<int, std::vector<Key>> bases_;
  std::map<int, std::map<Key, std::size_t>> index_;
  ChainComplex complex_;
};

/// Renders a combination as "c1*label1 + c2*label2".
template <class Key, class LabelF>
std::string format_combination(const Combination<Key>& x, LabelF&& label) {
  if (x.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [k, c] : x) {
    Rational a = abs(c);
    if (first) {
      if (sgn(c) < 0) out += "-";
    } else {
      out += sgn(c) < 0 ? " - " : " + ";
    }
    if (a != 1) out += a.get_str() + "*";
    out += label(k);
    first = false;
  }
  return out;
}

template <class Key>
std::string KeyedComplex<Key>::format(const Combination<Key>& x) const {
  return format_combination(x, label_);
}

/// Homology of a keyed complex with projections onto class coordinates.
template <class Key>
struct KeyedHomology {
  const KeyedComplex<Key>* complex = nullptr;
  HomologySummary summary;
  std::map<int, Matrix> projections;

  std::size_t betti(int p) const { return summary.betti(p); }

  Combination<Key> representative(int p, std::size_t i) const {
    return complex->element(p, summary.degrees.at(p).representatives.at(i));
  }

  /// Class coordinates of a cocycle (or any chain, through the projection).
  Vector classify(int p, const Combination<Key>& x) const {
    auto it = projections.find(p);
    if (it == projections.end()) throw TruncationError("no homology projection stored for degree " + std::to_string(p));
    return it->second * complex->coordinates(p, x);
  }
};

template <class Key>
KeyedHomology<Key> keyed_homology(const KeyedComplex<Key>& c, int lo, int hi, bool with_projections = true) {
  KeyedHomology<Key> h;
  h.complex = &c;
  h.summary = homology(c.complex(), lo, hi);
  if (with_projections) {
    for (const auto& [p, deg] : h.summary.degrees) {
      const std::size_t dim = c.basis(p).size();
      Matrix incoming = c.complex().has_block(p - 1) ? c.complex().d(p - 1) : Matrix(dim, 0);
      h.projections.emplace(p, homology_projection(incoming, deg, dim));
    }
  }
  return h;
}

/// Matrix of the map induced on homology by a chain-level map f, from
/// H^p(source) to H^q(target).
template <class K1, class K2, class F>
Matrix induced_block(const KeyedHomology<K1>& source, int p, const KeyedHomology<K2>& target, int q, F&& f) {
  const std::size_t hs = source.betti(p);
  const std::size_t ht = target.betti(q);
  Matrix m(ht, hs);
  for (std::size_t i = 0; i < hs; ++i) {
    const Vector v = target.classify(q, f(source.representative(p, i)));
    for (std::size_t r = 0; r < ht; ++r) m(r, i) = v[r];
  }
  return m;
}

/// Graded basis of homology classes, labelled "[p:i]".
inline GradedBasis homology_basis(const HomologySummary& h) {
  GradedBasis gb;
  for (const auto& [p, deg] : h.degrees)
    for (std::size_t i = 0; i < deg.betti; ++i) gb.add(p, "[" + std::to_string(p) + ":" + std::to_string(i) + "]");
  return gb;
}

/// Matrix form of a keyed map of degree k on every source degree whose image
/// degree is stored in the target.
template <class K1, class K2, class F>
LinearMapByDegree chain_level_map(const KeyedComplex<K1>& source, const KeyedComplex<K2>& target, int k, F&& f) {
  LinearMapByDegree out{source.complex().basis, target.complex().basis, k, {}};
  for (int p = source.bottom(); p <= source.top(); ++p) {
    if (!target.stores(p + k)) continue;
    const auto& keys = source.basis(p);
    Matrix m(target.basis(p + k).size(), keys.size());
    for (std::size_t j = 0; j < keys.size(); ++j) {
      const Vector v = target.coordinates(p + k, f(keys[j]));
      for (std::size_t r = 0; r < v.size(); ++r) m(r, j) = v[r];
    }
    out.blocks.emplace(p, std::move(m));
  }
  return out;
}

/// First basis key on which f fails d o f = (-1)^k f o d, or nullopt.
template <class K1, class K2, class F, class DS, class DT>
std::optional<K1> chain_map_defect(const std::vector<K1>& keys, int degree, F&& f, DS&& d_source, DT&& d_target) {
  const Rational sign = sign_power(degree);
  for (const auto& k : keys) {
    Combination<K2> lhs = f(Combination<K1>(k)).map_linear(d_target);
    Combination<K2> rhs = f(d_source(k));
    lhs.add(rhs, -sign);
    if (!lhs.empty()) return k;
  }
  return std::nullopt;
}

}  // namespace stringtop
