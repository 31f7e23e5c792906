#pragma once

#include <map>
#include <utility>

#include "stringtop/rational.hpp"

namespace stringtop {

/// Finite formal linear combination of keys with exact coefficients.
/// Zero coefficients are never stored.
template <class Key>
class Combination {
 public:
  using Map = std::map<Key, Rational>;
  using const_iterator = typename Map::const_iterator;

  Combination() = default;
  Combination(const Key& key, const Rational& coeff = 1) { add(key, coeff); }

  void add(const Key& key, const Rational& coeff) {
    if (stringtop::is_zero(coeff)) return;
    auto [it, inserted] = terms_.try_emplace(key, coeff);
    if (!inserted) {
      it->second += coeff;
      if (stringtop::is_zero(it->second)) terms_.erase(it);
    }
  }

  void add(const Combination& other, const Rational& scale = 1) {
    if (stringtop::is_zero(scale)) return;
    for (const auto& [k, c] : other.terms_) add(k, c * scale);
  }

  Combination& operator+=(const Combination& other) {
    add(other);
    return *this;
  }
  Combination& operator-=(const Combination& other) {
    add(other, -1);
    return *this;
  }
  Combination& operator*=(const Rational& s) {
    if (stringtop::is_zero(s)) {
      terms_.clear();
    } else {
      for (auto& [k, c] : terms_) c *= s;
    }
    return *this;
  }

  friend Combination operator+(Combination a, const Combination& b) { return a += b; }
  friend Combination operator-(Combination a, const Combination& b) { return a -= b; }
  friend Combination operator*(const Rational& s, Combination a) { return a *= s; }
  friend Combination operator-(Combination a) { return a *= Rational(-1); }
  friend bool operator==(const Combination& a, const Combination& b) { return a.terms_ == b.terms_; }

  Rational coefficient(const Key& key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  bool empty() const { return terms_.empty(); }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const_iterator begin() const { return terms_.begin(); }
  const_iterator end() const { return terms_.end(); }
  const Map& terms() const { return terms_; }

  /// Applies a key-level linear map term by term.
  template <class F>
  auto map_linear(F&& f) const -> decltype(f(std::declval<const Key&>())) {
    decltype(f(std::declval<const Key&>())) out;
    for (const auto& [k, c] : terms_) out.add(f(k), c);
    return out;
  }

 private:
  Map terms_;
};

}  // namespace stringtop
