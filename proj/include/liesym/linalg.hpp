#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "liesym/rational.hpp"

namespace liesym {

using Vector = std::vector<Rational>;

/// Dense row-major rational matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols);
  static Matrix from_columns(const std::vector<Vector>& cols, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vector row(std::size_t r) const;
  Vector column(std::size_t c) const;
  Matrix transpose() const;
  Rational trace() const;
  bool is_zero() const;

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

struct EchelonForm {
  Matrix reduced;                    // reduced row echelon form
  std::vector<std::size_t> pivots;   // pivot column per nonzero row
};

EchelonForm rref(Matrix m);
std::size_t rank(const Matrix& m);
/// Basis of {x : m x = 0}; one vector per free column, with a 1 in that column.
std::vector<Vector> nullspace(const Matrix& m);
Rational determinant(Matrix m);
std::optional<Matrix> inverse(const Matrix& m);
/// Some x with m x = b, or nullopt when inconsistent.
std::optional<Vector> solve(const Matrix& m, const Vector& b);

Vector add(const Vector& a, const Vector& b);
Vector scale(const Rational& s, const Vector& v);
Rational dot(const Vector& a, const Vector& b);
bool is_zero(const Vector& v);
Vector unit_vector(std::size_t n, std::size_t i);

/// Linear subspace of Q^n held in reduced row echelon form, so equality is structural.
class Subspace {
 public:
  explicit Subspace(std::size_t ambient = 0) : ambient_(ambient) {}
  static Subspace span(std::size_t ambient, const std::vector<Vector>& vectors);
  static Subspace whole(std::size_t ambient);

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Vector>& basis() const { return basis_; }
  bool contains(const Vector& v) const;
  bool contains(const Subspace& other) const;
  /// Coordinates of v in basis(), if v lies in the subspace.
  std::optional<Vector> coordinates(const Vector& v) const;

  Subspace sum(const Subspace& other) const;
  Subspace intersect(const Subspace& other) const;
  /// {w : w.v = 0 for all v}, as a subspace of the dual identified with Q^n.
  Subspace annihilator() const;

  friend bool operator==(const Subspace& a, const Subspace& b) = default;

 private:
  std::size_t ambient_;
  std::vector<Vector> basis_;
};

std::string to_string(const Vector& v);

}  // namespace liesym
