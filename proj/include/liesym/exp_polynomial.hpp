#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "liesym/expression.hpp"
#include "liesym/linalg.hpp"

namespace liesym {

/// Finite sum of c * eps^m * e^{k eps} with rational c, k and m >= 0.
class ExpPolynomial {
 public:
  ExpPolynomial() = default;
  ExpPolynomial(const Rational& c);  // NOLINT(google-explicit-constructor)
  ExpPolynomial(int c) : ExpPolynomial(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  static ExpPolynomial term(const Rational& c, int m, const Rational& k);
  /// eps itself.
  static ExpPolynomial epsilon() { return term(1, 1, 0); }
  /// e^{k eps}.
  static ExpPolynomial exp(const Rational& k) { return term(1, 0, k); }
  /// Throws Unsupported unless e is such a sum in the group parameter eps.
  static ExpPolynomial from_expression(const Expression& e, const Symbol& eps);

  /// (m, k) -> c, no zero coefficients.
  const std::map<std::pair<int, Rational>, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational value_at_zero() const;
  ExpPolynomial derivative() const;
  /// Integral from 0 to eps.
  ExpPolynomial integral() const;
  /// eps -> -eps.
  ExpPolynomial negated_parameter() const;
  /// Exact value at a group parameter value, when rational.
  std::optional<Rational> evaluate(const ParamValue& value) const;

  Expression to_expression(const Symbol& eps) const;
  std::string to_string(const std::string& eps = "eps") const;

  friend ExpPolynomial operator+(const ExpPolynomial& a, const ExpPolynomial& b);
  friend ExpPolynomial operator-(const ExpPolynomial& a, const ExpPolynomial& b);
  friend ExpPolynomial operator*(const ExpPolynomial& a, const ExpPolynomial& b);
  ExpPolynomial operator-() const;
  ExpPolynomial& operator+=(const ExpPolynomial& b) { return *this = *this + b; }
  friend bool operator==(const ExpPolynomial& a, const ExpPolynomial& b) { return a.terms_ == b.terms_; }

 private:
  void add_term(int m, const Rational& k, const Rational& c);
  std::map<std::pair<int, Rational>, Rational> terms_;
};

/// Dense matrix of ExpPolynomial entries.
class ExpMatrix {
 public:
  ExpMatrix() = default;
  ExpMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static ExpMatrix constant(const Matrix& m);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  ExpPolynomial& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const ExpPolynomial& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Matrix value_at_zero() const;
  ExpMatrix derivative() const;
  ExpMatrix integral() const;
  ExpMatrix negated_parameter() const;
  ExpMatrix transpose() const;
  /// Rational matrix at a parameter value, when every entry evaluates rationally.
  std::optional<Matrix> evaluate(const ParamValue& value) const;
  std::vector<ExpPolynomial> apply(const std::vector<ExpPolynomial>& v) const;

  friend ExpMatrix operator*(const ExpMatrix& a, const ExpMatrix& b);
  friend bool operator==(const ExpMatrix& a, const ExpMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<ExpPolynomial> data_;
};

/// Polynomial with rational coefficients, lowest degree first.
using Polynomial = std::vector<Rational>;

/// det(lambda I - A), monic, via Faddeev-LeVerrier.
Polynomial characteristic_polynomial(const Matrix& a);

struct RationalSpectrum {
  std::vector<std::pair<Rational, int>> roots;  // eigenvalue, algebraic multiplicity
  Polynomial leftover;                           // factor without rational roots (degree 0 when split)
};

RationalSpectrum rational_roots(const Polynomial& p);
std::string polynomial_to_string(const Polynomial& p, const std::string& var = "t");

/// exp(eps A) through the Jordan-Chevalley split A = S + N. Throws
/// UnsupportedSpectrum naming the factor of the characteristic polynomial
/// without rational roots.
ExpMatrix matrix_exp(const Matrix& a);

}  // namespace liesym
