#include "stringtop/finite_cdga.hpp"

#include <algorithm>

#include "stringtop/error.hpp"
#include "stringtop/keyed_complex.hpp"

namespace stringtop {

namespace {

void require_homogeneous(const std::vector<FiniteBasisElement>& basis, const FiniteElement& x, int degree,
                         const std::string& what) {
  for (const auto& [i, c] : x) {
    if (i >= basis.size()) throw ValidationError(what + ": basis index out of range");
    if (basis[i].degree != degree)
      throw ValidationError(what + " has a term '" + basis[i].label + "' of degree " + std::to_string(basis[i].degree) +
                            ", expected degree " + std::to_string(degree));
  }
}

}  // namespace

FiniteCdga::FiniteCdga(std::vector<FiniteBasisElement> basis, std::vector<FiniteElement> table,
                       std::vector<FiniteElement> differential, bool)
    : basis_(std::move(basis)), table_(std::move(table)), differential_(std::move(differential)) {}

FiniteCdga::FiniteCdga(std::vector<FiniteBasisElement> basis, const ProductTable& products,
                       std::vector<FiniteElement> differential)
    : basis_(std::move(basis)) {
  const std::size_t n = basis_.size();
  if (n == 0 || basis_[0].degree != 0) throw ValidationError("basis must start with the unit in degree 0");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (basis_[i].label == basis_[j].label) throw ValidationError("duplicate basis label '" + basis_[i].label + "'");
  table_.assign(n * n, FiniteElement{});
  for (std::size_t i = 0; i < n; ++i) {
    table_[i] = FiniteElement(i);
    table_[i * n] = FiniteElement(i);
  }
  for (const auto& [key, value] : products) {
    auto [i, j] = key;
    if (i >= n || j >= n) throw ValidationError("product entry refers to an unknown basis element");
    if (i == 0 || j == 0) continue;
    const int deg = basis_[i].degree + basis_[j].degree;
    require_homogeneous(basis_, value, deg, "product " + basis_[i].label + "*" + basis_[j].label);
    table_[i * n + j] = value;
    if (i != j && products.find({j, i}) == products.end())
      table_[j * n + i] = sign_power(static_cast<long>(basis_[i].degree) * basis_[j].degree) * value;
  }
  if (differential.empty()) differential.resize(n);
  if (differential.size() != n) throw ValidationError("differential must have one entry per basis element");
  for (std::size_t i = 0; i < n; ++i)
    require_homogeneous(basis_, differential[i], basis_[i].degree + 1, "d(" + basis_[i].label + ")");
  differential_ = std::move(differential);
}

FiniteCdga FiniteCdga::ground() {
  return FiniteCdga({{"1", 0}}, std::vector<FiniteElement>{FiniteElement(0)}, std::vector<FiniteElement>(1), true);
}

FiniteCdga FiniteCdga::tensor(const FiniteCdga& a, const FiniteCdga& b) {
  const std::size_t na = a.dim(), nb = b.dim(), n = na * nb;
  std::vector<FiniteBasisElement> basis;
  basis.reserve(n);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j) basis.push_back({a.label(i) + "⊗" + b.label(j), a.degree(i) + b.degree(j)});
  std::vector<FiniteElement> table(n * n);
  for (std::size_t i1 = 0; i1 < na; ++i1)
    for (std::size_t j1 = 0; j1 < nb; ++j1)
      for (std::size_t i2 = 0; i2 < na; ++i2)
        for (std::size_t j2 = 0; j2 < nb; ++j2) {
          const Rational s = sign_power(static_cast<long>(b.degree(j1)) * a.degree(i2));
          FiniteElement out;
          for (const auto& [p, cp] : a.multiply(i1, i2))
            for (const auto& [q, cq] : b.multiply(j1, j2)) out.add(p * nb + q, s * cp * cq);
          table[(i1 * nb + j1) * n + (i2 * nb + j2)] = std::move(out);
        }
  std::vector<FiniteElement> diff(n);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j) {
      FiniteElement out;
      for (const auto& [p, c] : a.d(i)) out.add(p * nb + j, c);
      const Rational s = sign_power(a.degree(i));
      for (const auto& [q, c] : b.d(j)) out.add(i * nb + q, s * c);
      diff[i * nb + j] = std::move(out);
    }
  return FiniteCdga(std::move(basis), std::move(table), std::move(diff), true);
}

long FiniteCdga::find(const std::string& label) const {
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (basis_[i].label == label) return static_cast<long>(i);
  return -1;
}

std::vector<std::size_t> FiniteCdga::indices_in_degree(int p) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (basis_[i].degree == p) out.push_back(i);
  return out;
}

int FiniteCdga::top_degree() const {
  int top = 0;
  for (const auto& b : basis_) top = std::max(top, b.degree);
  return top;
}

int FiniteCdga::degree(const FiniteElement& x) const {
  if (x.empty()) throw Error("degree of zero element is undefined");
  const int deg = degree(x.begin()->first);
  for (const auto& [i, c] : x)
    if (degree(i) != deg) throw Error("element is not homogeneous");
  return deg;
}

FiniteElement FiniteCdga::multiply(const FiniteElement& x, const FiniteElement& y) const {
  FiniteElement out;
  for (const auto& [i, a] : x)
    for (const auto& [j, b] : y) out.add(multiply(i, j), a * b);
  return out;
}

FiniteElement FiniteCdga::d(const FiniteElement& x) const {
  FiniteElement out;
  for (const auto& [i, c] : x) out.add(differential_[i], c);
  return out;
}

bool FiniteCdga::has_zero_differential() const {
  return std::all_of(differential_.begin(), differential_.end(), [](const auto& e) { return e.empty(); });
}

std::optional<std::string> FiniteCdga::structure_defect() const {
  const std::size_t n = dim();
  for (std::size_t i = 0; i < n; ++i)
    if (multiply(0, i) != FiniteElement(i) || multiply(i, 0) != FiniteElement(i))
      return "unit law fails on " + label(i);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Rational s = sign_power(static_cast<long>(degree(i)) * degree(j));
      if (multiply(i, j) != s * multiply(j, i))
        return "graded commutativity fails on " + label(i) + ", " + label(j);
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (multiply(multiply(i, j), FiniteElement(k)) != multiply(FiniteElement(i), multiply(j, k)))
          return "associativity fails on " + label(i) + ", " + label(j) + ", " + label(k);
      }
  for (std::size_t i = 0; i < n; ++i) {
    if (!d(d(i)).empty()) return "d o d is nonzero on " + label(i);
    for (std::size_t j = 0; j < n; ++j) {
      FiniteElement lhs = d(multiply(i, j));
      FiniteElement rhs = multiply(d(i), FiniteElement(j));
      rhs.add(multiply(FiniteElement(i), d(j)), sign_power(degree(i)));
      if (lhs != rhs) return "Leibniz rule fails on " + label(i) + ", " + label(j);
    }
  }
  return std::nullopt;
}

GradedBasis FiniteCdga::graded_basis() const {
  GradedBasis gb;
  for (const auto& b : basis_) gb.add(b.degree, b.label);
  return gb;
}

ChainComplex FiniteCdga::complex() const {
  const int top = top_degree() + 1;
  KeyedComplex<std::size_t> kc(
      0, top, true, [this](int p) { return indices_in_degree(p); }, [this](const std::size_t& i) { return d(i); },
      [this](const std::size_t& i) { return label(i); });
  return kc.complex();
}

Vector FiniteCdga::coordinates(int p, const FiniteElement& x) const {
  const auto idx = indices_in_degree(p);
  Vector v(idx.size());
  for (const auto& [i, c] : x) {
    auto it = std::find(idx.begin(), idx.end(), i);
    if (it == idx.end()) throw Error("element term '" + label(i) + "' is not in degree " + std::to_string(p));
    v[static_cast<std::size_t>(it - idx.begin())] += c;
  }
  return v;
}

FiniteElement FiniteCdga::element(int p, const Vector& v) const {
  const auto idx = indices_in_degree(p);
  FiniteElement out;
  for (std::size_t k = 0; k < idx.size() && k < v.size(); ++k) out.add(idx[k], v[k]);
  return out;
}

std::string FiniteCdga::format(const FiniteElement& x) const {
  return format_combination(x, [this](std::size_t i) { return label(i); });
}

}  // namespace stringtop
