#include <gtest/gtest.h>

#include "liesym/errors.hpp"
#include "liesym/jet.hpp"
#include "liesym/vector_field.hpp"
#include "support.hpp"

using namespace liesym;
using liesym::testing::recursive_prolongation;

TEST(JetSpace, Coordinates) {
  const JetSpace js({"x", "y"}, {"u", "v"}, 2);
  EXPECT_EQ(js.p(), 2U);
  EXPECT_EQ(js.q(), 2U);
  EXPECT_EQ(js.base_coordinates().size(), 4U);
  // Order 1: 2 per dependent; order 2: 3 per dependent.
  EXPECT_EQ(js.derivative_coordinates(2).size(), 10U);
  EXPECT_EQ(js.multi_indices(2), (std::vector<MultiIndex>{{2, 0}, {1, 1}, {0, 2}}));
  const auto uxy = js.jet(0, {1, 1});
  EXPECT_EQ(uxy.display(), "u_xy");
  EXPECT_EQ(js.locate(uxy)->index, (MultiIndex{1, 1}));
  EXPECT_THROW(js.jet(0, {5, 0}), OrderLimit);
}

TEST(JetSpace, TotalDerivative) {
  const JetSpace js({"x", "y"}, {"u"}, 2);
  const Expression X = js.independents()[0], U = js.dependents()[0];
  const Expression ux = js.jet(0, {1, 0}), uxx = js.jet(0, {2, 0});
  EXPECT_EQ(total_derivative(X * U, 0, js), U + X * ux);
  EXPECT_EQ(total_derivative(U * U, 0, js), 2 * U * ux);
  EXPECT_EQ(total_derivative(ux, 0, js), uxx);
  EXPECT_EQ(total_derivative(U, MultiIndex{1, 1}, js), Expression(js.jet(0, {1, 1})));
}

TEST(Prolongation, FirstOrderTemplate) {
  // phi^x = D_x phi - u_x D_x xi - u_y D_x eta, written out by hand.
  const JetSpace js({"x", "y"}, {"u"}, 2);
  const Expression X = js.independents()[0], Y = js.independents()[1], U = js.dependents()[0];
  const Expression ux = js.jet(0, {1, 0}), uy = js.jet(0, {0, 1});
  const VectorField v(js, {X * Y, U, X * U});
  const auto pr = prolong(v, 1, js);
  // D_x phi = U + X*ux; D_x xi = Y; D_x eta = ux.
  EXPECT_EQ(pr.coefficient(js.jet(0, {1, 0})), U + X * ux - ux * Y - uy * ux);
}

TEST(Prolongation, MatchesRecursiveFormula) {
  const JetSpace js({"x", "y"}, {"u", "v"}, 3);
  const auto z = js.base_coordinates();
  const Expression X = z[0], Y = z[1], U = z[2], V = z[3];
  const std::vector<VectorField> fields{
      VectorField(js, {X * U, Y * Y, U * V, X}),
      VectorField(js, {1, X, -2 * U, Y * V}),
      VectorField(js, {U, V, X * Y, U * U}),
  };
  for (const auto& f : fields) {
    const auto pr = prolong(f, 3, js);
    const auto oracle = recursive_prolongation(f, 3, js);
    for (const auto& [jet, coeff] : oracle) EXPECT_EQ(pr.coefficient(jet), coeff) << jet.display();
  }
}

TEST(Prolongation, ApplyRespectsOrder) {
  const JetSpace js({"x"}, {"u"}, 2);
  const VectorField v(js, {1, 0});
  const auto pr = prolong(v, 1, js);
  EXPECT_THROW(pr.apply(Expression(js.jet(0, {2}))), OrderLimit);
}

TEST(PDESystem, GoldenReduction) {
  const auto sys = liesym::testing::golden_system();
  const auto& js = sys.jet_space();
  ASSERT_EQ(sys.rules().size(), 3U);
  for (const auto& eq : sys.equations()) EXPECT_TRUE(reduce_mod(sys, eq).is_zero());
  // v_y = -u_x, so v_yy = -u_xy.
  const auto vyy = js.jet(1, {0, 2});
  EXPECT_EQ(reduce_mod(sys, Expression(vyy)), -Expression(js.jet(0, {1, 1})));
  EXPECT_TRUE(sys.is_principal(js.jet(2, {1, 1})));
  EXPECT_FALSE(sys.is_principal(js.jet(2, {1, 0})));
}

TEST(VectorFieldAlgebra, BracketOfCoordinateFields) {
  const JetSpace js({"x", "y"}, {"u"}, 1);
  const Expression X = js.independents()[0];
  const VectorField dx = VectorField::coordinate(js, 0);
  const VectorField scale(js, {X, 0, 0});
  EXPECT_EQ(bracket(dx, scale), dx);
  EXPECT_TRUE(bracket(dx, dx).is_zero());
  EXPECT_EQ(scale.to_string(), "x*D(x)");
}

TEST(VectorFieldAlgebra, SymmetryResidual) {
  const auto sys = liesym::testing::golden_system();
  for (const auto& g : liesym::testing::golden_generators(sys.jet_space())) EXPECT_TRUE(is_symmetry(g, sys));
  const auto z = sys.jet_space().base_coordinates();
  const VectorField bad(sys.jet_space(), {0, 0, 0, 0, Expression(z[1])});
  EXPECT_FALSE(is_symmetry(bad, sys));
}
