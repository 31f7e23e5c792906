#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "stringtop/rational.hpp"

namespace stringtop {

using Vector = std::vector<Rational>;

/// Dense row-major matrix over Q. Blocks in this library are small
/// (a few hundred rows at most), so dense elimination is adequate.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n);
  static Matrix from_columns(std::size_t rows, const std::vector<Vector>& columns);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vector column(std::size_t c) const;
  Vector row(std::size_t r) const;

  bool is_zero() const;
  Matrix transpose() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Vector operator*(const Matrix& a, const Vector& v);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Rational& s, const Matrix& a);
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Reduced row echelon form, computed in place. Returns the pivot columns.
std::vector<std::size_t> rref(Matrix& m);

std::size_t rank(Matrix m);

/// Basis of the null space, one vector per free column, in column order.
std::vector<Vector> nullspace(const Matrix& m);

/// Some x with m x = b, or nullopt. Free variables are set to zero.
std::optional<Vector> solve(const Matrix& m, const Vector& b);

/// Inverse of a square matrix; throws if singular.
Matrix inverse(const Matrix& m);

bool is_zero(const Vector& v);

}  // namespace stringtop
