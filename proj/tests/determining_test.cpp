#include <gtest/gtest.h>

#include "liesym/determining.hpp"
#include "liesym/lie_algebra.hpp"
#include "support.hpp"

using namespace liesym;
using liesym::testing::golden_generators;
using liesym::testing::golden_system;

TEST(Determining, GoldenCounts) {
  const auto sys = golden_system();
  const auto det = build_determining(sys, 1);
  // 5 coordinates, affine ansatz in 5 variables: 6 unknowns each.
  EXPECT_EQ(det.unknowns.size(), 30U);
  EXPECT_EQ(det.raw_count, 50U);
  EXPECT_EQ(det.equations.size(), 30U);
}

TEST(Determining, GoldenGeneratorsInSolvedSpan) {
  const auto sys = golden_system();
  const auto sol = compute_symmetries(sys, 1);
  EXPECT_EQ(sol.generators.size(), 6U);
  for (const auto& g : sol.generators) EXPECT_TRUE(is_symmetry(g, sys)) << g.to_string();
  for (const auto& g : golden_generators(sys.jet_space())) {
    EXPECT_TRUE(decompose(sol.generators, g).has_value()) << g.to_string();
  }
  // The sixth direction outside the printed five.
  const auto z = sys.jet_space().base_coordinates();
  const VectorField extra(sys.jet_space(), {0, Expression(z[0]), 0, Expression(z[2]), 0});
  EXPECT_TRUE(decompose(sol.generators, extra).has_value());
  auto all = golden_generators(sys.jet_space());
  all.push_back(extra);
  EXPECT_EQ(field_rank(all), 6U);
}

TEST(Determining, ConstantAnsatzGivesTranslations) {
  const auto sys = golden_system();
  const auto sol = compute_symmetries(sys, 0);
  const auto gens = golden_generators(sys.jet_space());
  EXPECT_EQ(sol.generators.size(), 3U);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_TRUE(decompose(sol.generators, gens[i]).has_value());
}

TEST(Determining, HeatEquation) {
  // u_t = u_xx; an affine ansatz admits d/dt, d/dx, u d/du, 2t d/dt + x d/dx
  // and the linear superposition fields d/du, x d/du.
  const JetSpace js({"t", "x"}, {"u"}, 2);
  const Expression ut = js.jet(0, {1, 0}), uxx = js.jet(0, {0, 2});
  const PDESystem sys(js, {ut - uxx}, {{js.jet(0, {1, 0}), uxx}});
  const auto sol = compute_symmetries(sys, 1);
  EXPECT_EQ(sol.generators.size(), 6U);
  const Expression T = js.independents()[0], X = js.independents()[1], U = js.dependents()[0];
  const VectorField scaling(js, {2 * T, X, 0});
  const VectorField superposition(js, {0, 0, X});
  EXPECT_TRUE(decompose(sol.generators, scaling).has_value());
  EXPECT_TRUE(decompose(sol.generators, superposition).has_value());
}

TEST(Determining, ParameterPivotsAreRecorded) {
  const auto sys = golden_system();
  const auto sol = compute_symmetries(sys, 1);
  for (const auto& a : sol.assumptions) {
    for (const auto& s : a.symbols()) EXPECT_EQ(s.role(), Role::Parameter);
  }
}
