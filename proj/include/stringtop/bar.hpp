#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "stringtop/combination.hpp"
#include "stringtop/finite_cdga.hpp"
#include "stringtop/keyed_complex.hpp"
#include "stringtop/pd_algebra.hpp"

namespace stringtop {

/// Letters of a bar word, as basis indices of the augmentation ideal.
using Word = std::vector<std::size_t>;

/// n[a_1|...|a_k]m. A ground-field side always holds index 0 (the unit).
struct BarWord {
  std::size_t left = 0;
  Word letters;
  std::size_t right = 0;

  friend auto operator<=>(const BarWord&, const BarWord&) = default;
};

enum class Side { Ground, Algebra };

/// B(N, A, M) with N, M each either Q or A. Requires A^0 = Q and A^1 = 0, so
/// every letter has suspended degree >= 1.
class BarConstruction {
 public:
  explicit BarConstruction(FiniteCdga algebra, Side left = Side::Ground, Side right = Side::Ground);

  const FiniteCdga& algebra() const { return algebra_; }
  Side left_side() const { return left_; }
  Side right_side() const { return right_; }

  /// Sum of |a_i| - 1.
  int word_degree(const Word& w) const;
  int degree(const BarWord& w) const;

  Combination<BarWord> d0(const BarWord& w) const;
  Combination<BarWord> d1(const BarWord& w) const;
  Combination<BarWord> d(const BarWord& w) const;

  /// Words of the given suspended degree, by length then letter indices.
  std::vector<Word> words(int degree) const;
  std::vector<BarWord> basis(int degree) const;

  std::string word_label(const Word& w) const;
  std::string label(const BarWord& w) const;

  /// The complex on [0, top].
  KeyedComplex<BarWord> complex(int top) const;

 private:
  FiniteCdga algebra_;
  Side left_;
  Side right_;
  std::vector<std::size_t> augmentation_ideal_;
};

/// Deconcatenation [a_1|...|a_r] -> sum_i [a_1|...|a_i] (x) [a_{i+1}|...|a_r].
Combination<std::pair<Word, Word>> bar_coproduct(const Word& w);

/// a (x) [a_1|...|a_k] in A (x) T(sA-bar).
struct HochschildKey {
  std::size_t a = 0;
  Word letters;

  friend auto operator<=>(const HochschildKey&, const HochschildKey&) = default;
};

using HochschildPair = std::pair<HochschildKey, HochschildKey>;

/// CH(A) = A (x)_{A^e} B(A, A, A). The differential is the bar differential
/// on a[w]1 followed by n[w]m -> (-1)^{|m|(|n|+|w|)} mn (x) [w].
class HochschildComplex {
 public:
  explicit HochschildComplex(FiniteCdga algebra);

  const FiniteCdga& algebra() const { return bar_.algebra(); }
  const BarConstruction& bar() const { return bar_; }

  int degree(const HochschildKey& k) const;
  std::vector<HochschildKey> basis(int degree) const;
  Combination<HochschildKey> d(const HochschildKey& k) const;
  Combination<HochschildKey> d(const Combination<HochschildKey>& x) const;
  std::string label(const HochschildKey& k) const;
  KeyedComplex<HochschildKey> complex(int top) const;

  /// Koszul differential on CH (x) CH.
  Combination<HochschildPair> d_pair(const HochschildPair& k) const;

 private:
  BarConstruction bar_;
};

/// a (x) [w1] (x) [w2], a basis element of A (x)_{A (x) A} (CH (x) CH).
struct NablaKey {
  std::size_t a = 0;
  Word first;
  Word second;

  friend auto operator<=>(const NablaKey&, const NablaKey&) = default;
};

/// The coequalized square A (x)_{A (x) A} (CH (x) CH), identified with
/// A (x) T (x) T through (a (x) w1) (x) (b (x) w2) -> (-1)^{|b||w1|} ab (x) w1 (x) w2.
class NablaTarget {
 public:
  explicit NablaTarget(HochschildComplex ch);

  const HochschildComplex& hochschild() const { return ch_; }
  int degree(const NablaKey& k) const;
  std::vector<NablaKey> basis(int degree) const;
  Combination<NablaKey> project(const Combination<HochschildPair>& x) const;
  Combination<NablaKey> d(const NablaKey& k) const;
  std::string label(const NablaKey& k) const;
  KeyedComplex<NablaKey> complex(int top) const;

 private:
  HochschildComplex ch_;
};

/// a (x) [a_1|...|a_n] -> sum_i a (x) [a_1|...|a_i] (x) [a_{i+1}|...|a_n].
Combination<NablaKey> nabla(const HochschildKey& k);

/// [w] -> omega (x) [w], a degree-m map from the reduced bar construction to CH.
Combination<HochschildKey> omega_inclusion(const FinitePdAlgebra& a, const BarWord& w);

}  // namespace stringtop
