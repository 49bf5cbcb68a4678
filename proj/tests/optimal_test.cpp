#include <gtest/gtest.h>

#include "liesym/errors.hpp"
#include "liesym/optimal.hpp"
#include "support.hpp"

using namespace liesym;
using liesym::testing::read_data;
using liesym::testing::table_algebra;

TEST(Optimal, AdjointApply) {
  const auto L = table_algebra();
  // Ad(exp(eps v1)) v4 = v4 - eps v1.
  EXPECT_EQ(adjoint_apply(L, 0, ParamValue::additive(2), unit_vector(5, 3)), (Vector{-2, 0, 0, 1, 0}));
  // Ad(exp(eps v4)) v3 = e^{2 eps} v3.
  EXPECT_EQ(adjoint_apply(L, 3, ParamValue::multiplicative(3), unit_vector(5, 2)), (Vector{0, 0, 9, 0, 0}));
  EXPECT_THROW(adjoint_apply(L, 3, ParamValue::additive(1), unit_vector(5, 2)), Unsupported);
}

TEST(Optimal, InvariantComponents) {
  const auto L = table_algebra();
  // [g,g] = <v1, v2, v3>, so the invariant part is (a4, a5).
  EXPECT_EQ(invariant_components(L, {1, 2, 3, 4, 5}), (Vector{4, 5}));
  EXPECT_EQ(fingerprint(L, {1, 2, 3, -2, 6}), (Vector{1, -3}));
  EXPECT_EQ(fingerprint(L, {1, 2, 3, 0, 0}), (Vector{0, 0}));
}

TEST(Optimal, NormalForms) {
  const auto L = table_algebra();
  // Nilpotent directions clear the derived part when a4, a5 allow it.
  const auto a = normal_form_1d(L, {1, 2, 3, 4, 5});
  EXPECT_EQ(a.output, (Vector{0, 0, 0, 4, 5}));
  EXPECT_EQ(replay(L, a), a.output);
  // Pure translations scale to unit coefficients.
  const auto b = normal_form_1d(L, {3, 0, 0, 0, 0});
  EXPECT_EQ(b.output, (Vector{1, 0, 0, 0, 0}));
  const auto c = normal_form_1d(L, {-4, 0, 0, 0, 0});
  EXPECT_EQ(c.output, (Vector{1, 0, 0, 0, 0}));
  EXPECT_TRUE(c.sign_flipped);
  // v1 + 2 v2 + 3 v3: a3 a2^4 / a1^2 survives once a1, a2 are 1.
  const auto d = normal_form_1d(L, {1, 2, 3, 0, 0});
  EXPECT_EQ(d.output, (Vector{1, 1, 48, 0, 0}));
  EXPECT_EQ(replay(L, d), d.output);
}

TEST(Optimal, NormalFormIsIdempotent) {
  const auto L = table_algebra();
  for (const Vector& v : std::vector<Vector>{{1, 2, 3, 4, 5}, {0, 1, 1, 0, 0}, {2, 0, 0, 1, 0}, {0, 0, 7, 0, -1}}) {
    const auto once = normal_form_1d(L, v);
    EXPECT_EQ(normal_form_1d(L, once.output).output, once.output) << to_string(v);
  }
}

TEST(Optimal, VerifyTable) {
  const auto L = table_algebra();
  const auto entries = load_optimal_table(read_data("optimal_table.json"), L.labels());
  EXPECT_GT(entries.size(), 33U);
  const auto report = verify_optimal_table(L, entries);
  std::vector<std::string> open;
  for (const auto& e : report.entries) {
    if (!e.closed) open.push_back(e.label);
  }
  ASSERT_EQ(open.size(), 2U);
  for (const auto& label : open) EXPECT_NE(label.find("v1 + 5/2 b3 (v4 + v5)"), std::string::npos);
  EXPECT_FALSE(report.all_closed());
  EXPECT_EQ(report.uncovered_basis_vectors, (std::vector<std::size_t>{3, 4}));
}

TEST(Optimal, ClosedFailureBracket) {
  const auto L = table_algebra();
  const auto report = verify_optimal_table(L, {{"bad", {{0, 1, 1, 0, 0}, {1, 0, 0, Rational(5, 2), Rational(5, 2)}}}});
  ASSERT_EQ(report.entries.size(), 1U);
  const auto& e = report.entries[0];
  EXPECT_FALSE(e.closed);
  // [v2 + v3, v1 + 5/2 (v4 + v5)] = 5/2 v2 - 5 v3.
  EXPECT_EQ(e.failing_bracket, (Vector{0, Rational(5, 2), -5, 0, 0}));
}

TEST(Optimal, TableParsing) {
  const std::vector<std::string> labels{"v1", "v2", "v3"};
  EXPECT_EQ(parse_algebra_element("v1 - 2*v3", labels), (Vector{1, 0, -2}));
  EXPECT_EQ(parse_algebra_element("b*(v2 + v3)/2", labels, {{"b", 4}}), (Vector{0, 2, 2}));
  EXPECT_THROW(parse_algebra_element("v1*v2", labels), Error);
  EXPECT_THROW(parse_algebra_element("v1 + 1", labels), Error);
  const auto t = load_optimal_table(
      R"({"parameters": ["a"], "instantiations": [{"a": 1}, {"a": "1/2"}],
          "entries": [{"label": "<v1>", "generators": ["v1"]}, {"label": "<a v2>", "generators": ["a*v2"]}]})",
      labels);
  ASSERT_EQ(t.size(), 3U);
  EXPECT_EQ(t[2].label, "<a v2> [a=1/2]");
  EXPECT_EQ(t[2].generators[0], (Vector{0, Rational(1, 2), 0}));
}

TEST(Optimal, StructureConstantsFile) {
  const auto L = load_structure_constants(read_data("structure_constants.json"));
  const auto T = table_algebra();
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) EXPECT_EQ(L.constant(i, j), T.constant(i, j));
  }
  EXPECT_THROW(load_structure_constants(R"({"dim": 2, "brackets": [{"i": 1, "j": 3, "coeffs": [1, 0]}]})"), Error);
  EXPECT_THROW(load_structure_constants("{"), Error);
}
