#include "stringtop/bar.hpp"

#include <algorithm>
#include <functional>
#include <memory>

#include "stringtop/error.hpp"

namespace stringtop {

BarConstruction::BarConstruction(FiniteCdga algebra, Side left, Side right)
    : algebra_(std::move(algebra)), left_(left), right_(right) {
  if (algebra_.indices_in_degree(0).size() != 1 || algebra_.degree(0) != 0)
    throw ValidationError("bar construction needs a connected algebra (A^0 = Q)");
  for (std::size_t i = 0; i < algebra_.dim(); ++i) {
    const int deg = algebra_.degree(i);
    if (deg < 0) throw ValidationError("bar construction needs a non-negatively graded algebra");
    if (deg == 1) throw ValidationError("bar construction needs A^1 = 0; " + algebra_.label(i) + " has degree 1");
    if (deg > 0) augmentation_ideal_.push_back(i);
  }
}

int BarConstruction::word_degree(const Word& w) const {
  int deg = 0;
  for (auto i : w) deg += algebra_.degree(i) - 1;
  return deg;
}

int BarConstruction::degree(const BarWord& w) const {
  return algebra_.degree(w.left) + word_degree(w.letters) + algebra_.degree(w.right);
}

Combination<BarWord> BarConstruction::d0(const BarWord& w) const {
  Combination<BarWord> out;
  const int dn = algebra_.degree(w.left);
  if (left_ == Side::Algebra)
    for (const auto& [n, c] : algebra_.d(w.left)) out.add(BarWord{n, w.letters, w.right}, c);
  long eps = dn;
  for (std::size_t i = 0; i < w.letters.size(); ++i) {
    for (const auto& [a, c] : algebra_.d(w.letters[i])) {
      Word letters = w.letters;
      letters[i] = a;
      out.add(BarWord{w.left, std::move(letters), w.right}, -sign_power(eps) * c);
    }
    eps += algebra_.degree(w.letters[i]) - 1;
  }
  if (right_ == Side::Algebra)
    for (const auto& [m, c] : algebra_.d(w.right)) out.add(BarWord{w.left, w.letters, m}, sign_power(eps) * c);
  return out;
}

Combination<BarWord> BarConstruction::d1(const BarWord& w) const {
  Combination<BarWord> out;
  const std::size_t k = w.letters.size();
  if (k == 0) return out;
  const int dn = algebra_.degree(w.left);
  if (left_ == Side::Algebra) {
    const Word rest(w.letters.begin() + 1, w.letters.end());
    for (const auto& [p, c] : algebra_.multiply(w.left, w.letters[0]))
      out.add(BarWord{p, rest, w.right}, sign_power(dn) * c);
  }
  long eps = dn + algebra_.degree(w.letters[0]) - 1;
  for (std::size_t i = 1; i < k; ++i) {
    for (const auto& [p, c] : algebra_.multiply(w.letters[i - 1], w.letters[i])) {
      if (algebra_.degree(p) == 0) continue;
      Word letters(w.letters.begin(), w.letters.begin() + static_cast<std::ptrdiff_t>(i - 1));
      letters.push_back(p);
      letters.insert(letters.end(), w.letters.begin() + static_cast<std::ptrdiff_t>(i + 1), w.letters.end());
      out.add(BarWord{w.left, std::move(letters), w.right}, sign_power(eps) * c);
    }
    eps += algebra_.degree(w.letters[i]) - 1;
  }
  if (right_ == Side::Algebra) {
    eps = dn + word_degree(Word(w.letters.begin(), w.letters.end() - 1));
    const Word rest(w.letters.begin(), w.letters.end() - 1);
    for (const auto& [p, c] : algebra_.multiply(w.letters[k - 1], w.right))
      out.add(BarWord{w.left, rest, p}, -sign_power(eps) * c);
  }
  return out;
}

Combination<BarWord> BarConstruction::d(const BarWord& w) const {
  auto out = d0(w);
  out += d1(w);
  return out;
}

std::vector<Word> BarConstruction::words(int degree) const {
  std::vector<Word> out;
  if (degree < 0) return out;
  Word current;
  std::function<void(int)> rec = [&](int remaining) {
    if (remaining == 0) {
      out.push_back(current);
      return;
    }
    for (auto i : augmentation_ideal_) {
      const int s = algebra_.degree(i) - 1;
      if (s > remaining) continue;
      current.push_back(i);
      rec(remaining - s);
      current.pop_back();
    }
  };
  rec(degree);
  std::stable_sort(out.begin(), out.end(), [](const Word& a, const Word& b) { return a.size() < b.size(); });
  return out;
}

std::vector<BarWord> BarConstruction::basis(int degree) const {
  std::vector<BarWord> out;
  const std::size_t nl = left_ == Side::Algebra ? algebra_.dim() : 1;
  const std::size_t nr = right_ == Side::Algebra ? algebra_.dim() : 1;
  for (std::size_t l = 0; l < nl; ++l)
    for (std::size_t r = 0; r < nr; ++r) {
      const int rest = degree - algebra_.degree(l) - algebra_.degree(r);
      for (auto& w : words(rest)) out.push_back(BarWord{l, std::move(w), r});
    }
  return out;
}

std::string BarConstruction::word_label(const Word& w) const {
  if (w.empty()) return "[ ]";
  std::string out = "[";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += "|";
    out += algebra_.label(w[i]);
  }
  return out + "]";
}

std::string BarConstruction::label(const BarWord& w) const {
  std::string out;
  if (left_ == Side::Algebra) out += algebra_.label(w.left);
  out += word_label(w.letters);
  if (right_ == Side::Algebra) out += algebra_.label(w.right);
  return out;
}

KeyedComplex<BarWord> BarConstruction::complex(int top) const {
  auto self = std::make_shared<const BarConstruction>(*this);
  return KeyedComplex<BarWord>(
      0, top, true, [self](int p) { return self->basis(p); }, [self](const BarWord& w) { return self->d(w); },
      [self](const BarWord& w) { return self->label(w); });
}

Combination<std::pair<Word, Word>> bar_coproduct(const Word& w) {
  Combination<std::pair<Word, Word>> out;
  for (std::size_t i = 0; i <= w.size(); ++i)
    out.add({Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i)),
             Word(w.begin() + static_cast<std::ptrdiff_t>(i), w.end())},
            1);
  return out;
}

HochschildComplex::HochschildComplex(FiniteCdga algebra)
    : bar_(std::move(algebra), Side::Algebra, Side::Algebra) {}

int HochschildComplex::degree(const HochschildKey& k) const {
  return algebra().degree(k.a) + bar_.word_degree(k.letters);
}

std::vector<HochschildKey> HochschildComplex::basis(int degree) const {
  std::vector<HochschildKey> out;
  for (std::size_t a = 0; a < algebra().dim(); ++a)
    for (auto& w : bar_.words(degree - algebra().degree(a))) out.push_back(HochschildKey{a, std::move(w)});
  return out;
}

Combination<HochschildKey> HochschildComplex::d(const HochschildKey& k) const {
  Combination<HochschildKey> out;
  const auto& alg = algebra();
  for (const auto& [w, c] : bar_.d(BarWord{k.a, k.letters, 0})) {
    const long mdeg = alg.degree(w.right);
    const Rational s = sign_power(mdeg * (alg.degree(w.left) + bar_.word_degree(w.letters)));
    for (const auto& [p, cp] : alg.multiply(w.right, w.left)) out.add(HochschildKey{p, w.letters}, s * c * cp);
  }
  return out;
}

Combination<HochschildKey> HochschildComplex::d(const Combination<HochschildKey>& x) const {
  return x.map_linear([this](const HochschildKey& k) { return d(k); });
}

std::string HochschildComplex::label(const HochschildKey& k) const {
  return algebra().label(k.a) + "⊗" + bar_.word_label(k.letters);
}

KeyedComplex<HochschildKey> HochschildComplex::complex(int top) const {
  auto self = std::make_shared<const HochschildComplex>(*this);
  return KeyedComplex<HochschildKey>(
      0, top, true, [self](int p) { return self->basis(p); }, [self](const HochschildKey& k) { return self->d(k); },
      [self](const HochschildKey& k) { return self->label(k); });
}

Combination<HochschildPair> HochschildComplex::d_pair(const HochschildPair& k) const {
  Combination<HochschildPair> out;
  for (const auto& [u, c] : d(k.first)) out.add(HochschildPair{u, k.second}, c);
  const Rational s = sign_power(degree(k.first));
  for (const auto& [v, c] : d(k.second)) out.add(HochschildPair{k.first, v}, s * c);
  return out;
}

NablaTarget::NablaTarget(HochschildComplex ch) : ch_(std::move(ch)) {}

int NablaTarget::degree(const NablaKey& k) const {
  return ch_.algebra().degree(k.a) + ch_.bar().word_degree(k.first) + ch_.bar().word_degree(k.second);
}

std::vector<NablaKey> NablaTarget::basis(int degree) const {
  std::vector<NablaKey> out;
  const auto& alg = ch_.algebra();
  for (std::size_t a = 0; a < alg.dim(); ++a) {
    const int rest = degree - alg.degree(a);
    for (int s1 = 0; s1 <= rest; ++s1) {
      const auto second = ch_.bar().words(rest - s1);
      if (second.empty()) continue;
      for (const auto& w1 : ch_.bar().words(s1))
        for (const auto& w2 : second) out.push_back(NablaKey{a, w1, w2});
    }
  }
  return out;
}

Combination<NablaKey> NablaTarget::project(const Combination<HochschildPair>& x) const {
  Combination<NablaKey> out;
  const auto& alg = ch_.algebra();
  for (const auto& [k, c] : x) {
    const auto& [u, v] = k;
    const Rational s = sign_power(static_cast<long>(alg.degree(v.a)) * ch_.bar().word_degree(u.letters));
    for (const auto& [p, cp] : alg.multiply(u.a, v.a)) out.add(NablaKey{p, u.letters, v.letters}, s * c * cp);
  }
  return out;
}

Combination<NablaKey> NablaTarget::d(const NablaKey& k) const {
  return project(ch_.d_pair(HochschildPair{HochschildKey{k.a, k.first}, HochschildKey{0, k.second}}));
}

std::string NablaTarget::label(const NablaKey& k) const {
  return ch_.algebra().label(k.a) + "⊗" + ch_.bar().word_label(k.first) + "⊗" + ch_.bar().word_label(k.second);
}

KeyedComplex<NablaKey> NablaTarget::complex(int top) const {
  auto self = std::make_shared<const NablaTarget>(*this);
  return KeyedComplex<NablaKey>(
      0, top, true, [self](int p) { return self->basis(p); }, [self](const NablaKey& k) { return self->d(k); },
      [self](const NablaKey& k) { return self->label(k); });
}

Combination<NablaKey> nabla(const HochschildKey& k) {
  Combination<NablaKey> out;
  for (std::size_t i = 0; i <= k.letters.size(); ++i)
    out.add(NablaKey{k.a, Word(k.letters.begin(), k.letters.begin() + static_cast<std::ptrdiff_t>(i)),
                     Word(k.letters.begin() + static_cast<std::ptrdiff_t>(i), k.letters.end())},
            1);
  return out;
}

Combination<HochschildKey> omega_inclusion(const FinitePdAlgebra& a, const BarWord& w) {
  return Combination<HochschildKey>(HochschildKey{a.fundamental, w.letters});
}

}  // namespace stringtop
