#pragma once

#include <compare>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "liesym/rational.hpp"
#include "liesym/symbol.hpp"

namespace liesym {

class Expression;

/// Formal function application. `orders` counts derivatives taken with
/// respect to each argument slot, so f_{(1,0)}(x, y) is df/dx.
struct FunctionCall {
  std::string name;
  std::vector<int> orders;
  std::vector<Expression> args;
};

/// Indivisible factor of a monomial: a symbol or a function application.
class Atom {
 public:
  Atom(Symbol s) : v_(s) {}  // NOLINT(google-explicit-constructor)
  explicit Atom(std::shared_ptr<const FunctionCall> f) : v_(std::move(f)) {}

  bool is_symbol() const { return std::holds_alternative<Symbol>(v_); }
  const Symbol& symbol() const { return std::get<Symbol>(v_); }
  const FunctionCall& function() const { return *std::get<1>(v_); }

  friend bool operator==(const Atom& a, const Atom& b);
  friend std::strong_ordering operator<=>(const Atom& a, const Atom& b);

 private:
  std::variant<Symbol, std::shared_ptr<const FunctionCall>> v_;
};

/// Laurent monomial times a product of group-parameter exponentials e^{k s}.
struct Monomial {
  std::vector<std::pair<Atom, int>> powers;        // sorted by atom, no zero exponents
  std::vector<std::pair<Symbol, Rational>> rates;  // sorted by symbol, no zero rates

  int degree() const;
  bool is_one() const { return powers.empty() && rates.empty(); }
  int exponent_of(const Atom& a) const;

  friend bool operator==(const Monomial& a, const Monomial& b);
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);
};

Monomial operator*(const Monomial& a, const Monomial& b);
Monomial inverse(const Monomial& m);

struct Term {
  Rational coeff;
  Monomial mono;
};

class Tree;

/// Immutable exact expression in canonical form.
///
/// Every value is a finite sum of rational multiples of distinct monomials,
/// sorted by the monomial order. Construction and arithmetic always return
/// the canonical form, so structural equality is semantic equality for
/// Laurent-polynomial expressions.
class Expression {
 public:
  Expression();
  Expression(int value);               // NOLINT(google-explicit-constructor)
  Expression(const Rational& value);   // NOLINT(google-explicit-constructor)
  Expression(const Symbol& symbol);    // NOLINT(google-explicit-constructor)

  static Expression from_terms(std::vector<Term> terms);
  static Expression monomial(const Rational& coeff, Monomial mono);
  static Expression atom(const Atom& a, int exponent = 1);
  /// e^{k s} for a group-parameter symbol s.
  static Expression param_exp(const Symbol& s, const Rational& k);
  static Expression function(const std::string& name, std::vector<Expression> args,
                             std::vector<int> orders = {});

  const std::vector<Term>& terms() const;
  std::size_t size() const { return terms().size(); }

  bool is_zero() const;
  bool is_rational() const;
  /// Throws Unsupported unless is_rational().
  Rational rational() const;
  bool is_single_term() const { return size() == 1; }
  /// True if this is exactly the given symbol.
  bool is_symbol() const;
  Symbol as_symbol() const;

  bool depends_on(const Symbol& s) const;
  /// Every symbol occurring anywhere, including function arguments and rates.
  std::vector<Symbol> symbols() const;

  /// Canonical tree view.
  Tree tree() const;

  Expression operator-() const;
  friend Expression operator+(const Expression& a, const Expression& b);
  friend Expression operator-(const Expression& a, const Expression& b);
  friend Expression operator*(const Expression& a, const Expression& b);
  /// Division by a single nonzero term only; throws DegenerateInput on zero
  /// and Unsupported on a multi-term divisor.
  friend Expression operator/(const Expression& a, const Expression& b);
  Expression& operator+=(const Expression& b) { return *this = *this + b; }
  Expression& operator-=(const Expression& b) { return *this = *this - b; }
  Expression& operator*=(const Expression& b) { return *this = *this * b; }

  Expression pow(int exponent) const;

  friend bool operator==(const Expression& a, const Expression& b);
  friend std::strong_ordering operator<=>(const Expression& a, const Expression& b);

 private:
  explicit Expression(std::shared_ptr<const std::vector<Term>> terms) : terms_(std::move(terms)) {}
  std::shared_ptr<const std::vector<Term>> terms_;
};

/// Unnormalized expression tree, as produced by a parser or a random generator.
class Tree {
 public:
  enum class Kind { Constant, Symbol, Sum, Product, Power, ParamExp, Function };

  static Tree constant(const Rational& value);
  static Tree symbol(const Symbol& s);
  static Tree sum(std::vector<Tree> operands);
  static Tree product(std::vector<Tree> operands);
  static Tree power(Tree base, int exponent);
  static Tree param_exp(const Symbol& s, const Rational& rate);
  static Tree function(const std::string& name, std::vector<int> orders, std::vector<Tree> args);

  Kind kind() const;
  const Rational& value() const;          // Constant; ParamExp rate
  const liesym::Symbol& symbol() const;   // Symbol; ParamExp parameter
  const std::vector<Tree>& operands() const;  // Sum, Product, Function arguments; Power base at [0]
  int exponent() const;
  const std::string& name() const;
  const std::vector<int>& orders() const;

  friend bool operator==(const Tree& a, const Tree& b);

 private:
  struct Node;
  explicit Tree(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

Expression normalize(const Tree& tree);
inline Expression normalize(const Expression& e) { return normalize(e.tree()); }

/// Exact partial derivative, all other symbols constant.
Expression diff(const Expression& e, const Symbol& s);

using Substitution = std::map<Symbol, Expression>;

/// Simultaneous substitution followed by normalization. A group parameter
/// occurring in an exponential may only be replaced by a rational linear
/// combination of group parameters (or zero).
Expression substitute(const Expression& e, const Substitution& rules);

/// Exponent vector over an ordered variable list to coefficient.
using MonomialMap = std::map<std::vector<int>, Expression>;

/// Splits e by monomials in `vars`. Throws NonPolynomial for negative powers,
/// exponentials in a var, or a var inside a function argument.
MonomialMap collect(const Expression& e, const std::vector<Symbol>& vars);
Expression reassemble(const MonomialMap& map, const std::vector<Symbol>& vars);

/// Exact polynomial quotient a/b, or nullopt if b does not divide a. Both
/// operands must be polynomials (non-negative exponents, no exponentials).
std::optional<Expression> exact_divide(const Expression& a, const Expression& b);

/// Value of a group parameter: either the parameter itself (additive) or e^s (multiplicative).
struct ParamValue {
  enum class Kind { Additive, Multiplicative };
  Kind kind = Kind::Additive;
  Rational value;

  static ParamValue additive(const Rational& v) { return {Kind::Additive, v}; }
  static ParamValue multiplicative(const Rational& v) { return {Kind::Multiplicative, v}; }
};

/// Evaluates s exactly. Additive values reject e^{k s}; multiplicative values
/// reject polynomial powers of s and non-integer rates.
Expression evaluate_parameter(const Expression& e, const Symbol& s, const ParamValue& value);

enum class PrintStyle { Display, Source };

std::string to_string(const Expression& e, PrintStyle style = PrintStyle::Display);
std::ostream& operator<<(std::ostream& os, const Expression& e);

}  // namespace liesym
