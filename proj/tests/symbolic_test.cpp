#include <gtest/gtest.h>

#include "liesym/errors.hpp"
#include "liesym/expression.hpp"
#include "liesym/rational.hpp"

using namespace liesym;

namespace {

const Symbol x(Role::Independent, "x");
const Symbol y(Role::Independent, "y");
const Symbol u = Symbol::jet("u", {0, 0}, {"x", "y"});
const Symbol eps(Role::GroupParameter, "eps");

}  // namespace

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(*parse_rational("-6/4"), Rational(-3, 2));
  EXPECT_EQ(*parse_rational("7"), Rational(7));
  EXPECT_FALSE(parse_rational("1/0"));
  EXPECT_FALSE(parse_rational("1.5"));
  EXPECT_FALSE(parse_rational("abc"));
  EXPECT_EQ(to_fraction_string(Rational(3)), "3/1");
  EXPECT_EQ(to_fraction_string(Rational(-5, 2)), "-5/2");
  EXPECT_EQ(to_string(Rational(-5, 2)), "-5/2");
  EXPECT_EQ(to_string(Rational(4)), "4");
}

TEST(Rational, ExactRoot) {
  EXPECT_EQ(*exact_root(Rational(9, 4), 2), Rational(3, 2));
  EXPECT_EQ(*exact_root(Rational(1, 16), 4), Rational(1, 2));
  EXPECT_FALSE(exact_root(Rational(2), 2));
  EXPECT_EQ(lcm_of_denominators({Rational(1, 4), Rational(5, 6)}), Integer(12));
}

TEST(Symbol, Interning) {
  EXPECT_EQ(Symbol(Role::Independent, "x"), x);
  EXPECT_NE(Symbol(Role::Parameter, "x"), x);
  const auto uxy = Symbol::jet("u", {1, 1}, {"x", "y"});
  EXPECT_EQ(uxy.role(), Role::Jet);
  EXPECT_EQ(u.role(), Role::Dependent);
  EXPECT_EQ(uxy.display(), "u_xy");
  EXPECT_EQ(uxy.source(), "d(u, x, y)");
  EXPECT_EQ(uxy.order(), 2);
  EXPECT_EQ(u.derivative(0).derivative(1), uxy);
}

TEST(Expression, CanonicalForm) {
  const Expression X = x, Y = y;
  EXPECT_EQ(X + Y, Y + X);
  EXPECT_EQ((X + Y) * (X - Y), X * X - Y * Y);
  EXPECT_TRUE((X - X).is_zero());
  EXPECT_EQ(X * X.pow(-1), Expression(1));
  EXPECT_EQ(Expression(Rational(1, 2)) + Rational(1, 2), Expression(1));
  EXPECT_EQ((X + 1).pow(2), X * X + 2 * X + 1);
}

TEST(Expression, DivisionRules) {
  const Expression X = x, Y = y;
  EXPECT_EQ((X * Y) / X, Y);
  EXPECT_THROW(X / Expression(0), DegenerateInput);
  EXPECT_THROW(X / (X + Y), Unsupported);
}

TEST(Expression, Differentiation) {
  const Expression X = x, Y = y;
  EXPECT_EQ(diff(X.pow(3) * Y, x), 3 * X.pow(2) * Y);
  EXPECT_EQ(diff(X.pow(-2), x), -2 * X.pow(-3));
  EXPECT_TRUE(diff(Y, x).is_zero());
  const auto e = Expression::param_exp(eps, 2) * X;
  EXPECT_EQ(diff(e, eps), 2 * e);
}

TEST(Expression, FunctionChainRule) {
  const Expression X = x, Y = y;
  const auto f = Expression::function("f", {X, Y});
  EXPECT_EQ(diff(f, x), Expression::function("f", {X, Y}, {1, 0}));
  const auto g = Expression::function("f", {X * Y, Y});
  EXPECT_THROW(diff(g, x), UnsupportedComposition);
}

TEST(Expression, Substitution) {
  const Expression X = x, Y = y;
  EXPECT_EQ(substitute(X * X + Y, {{x, Y + 1}}), Y * Y + 3 * Y + 1);
  // Simultaneous, not sequential.
  EXPECT_EQ(substitute(X - Y, {{x, Y}, {y, X}}), Y - X);
  const auto e = Expression::param_exp(eps, 3);
  const Symbol s(Role::GroupParameter, "s");
  EXPECT_EQ(substitute(e, {{eps, 2 * Expression(s)}}), Expression::param_exp(s, 6));
}

TEST(Expression, CollectAndReassemble) {
  const Expression X = x, Y = y, U = u;
  const auto e = 3 * X * U + Y * U * U - 2;
  const auto m = collect(e, {u});
  ASSERT_EQ(m.size(), 3U);
  EXPECT_EQ(m.at({1}), 3 * X);
  EXPECT_EQ(m.at({2}), Y);
  EXPECT_EQ(m.at({0}), Expression(-2));
  EXPECT_EQ(reassemble(m, {u}), e);
  EXPECT_THROW(collect(U.pow(-1), {u}), NonPolynomial);
}

TEST(Expression, ExactDivide) {
  const Expression X = x, Y = y;
  EXPECT_EQ(*exact_divide(X * X - Y * Y, X - Y), X + Y);
  EXPECT_FALSE(exact_divide(X * X + Y * Y, X - Y));
}

TEST(Expression, EvaluateParameter) {
  const Expression X = x;
  const auto e = Expression::param_exp(eps, 2) * X + Expression(eps);
  EXPECT_EQ(evaluate_parameter(Expression::param_exp(eps, 2) * X, eps, ParamValue::multiplicative(3)), 9 * X);
  EXPECT_EQ(evaluate_parameter(Expression(eps) * X, eps, ParamValue::additive(Rational(1, 2))), X / 2);
  EXPECT_THROW(evaluate_parameter(e, eps, ParamValue::additive(1)), Error);
}

TEST(Expression, Printing) {
  const Expression X = x, U = u;
  const auto ux = Symbol::jet("u", {1, 0}, {"x", "y"});
  EXPECT_EQ(to_string(2 * X * Expression(ux) - U), "-u + 2*x*u_x");
  EXPECT_EQ(to_string(Expression(ux), PrintStyle::Source), "d(u, x)");
  EXPECT_EQ(to_string(Expression::param_exp(eps, -4)), "exp(-4*eps)");
}

TEST(Expression, NormalizeIsIdempotentOnTrees) {
  const Expression X = x, Y = y;
  const auto t = Tree::sum({Tree::product({Tree::symbol(x), Tree::constant(2)}), Tree::symbol(y),
                            Tree::power(Tree::symbol(x), 0)});
  const auto e = normalize(t);
  EXPECT_EQ(e, 2 * X + Y + 1);
  EXPECT_EQ(normalize(e.tree()), e);
}
