#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "liesym/errors.hpp"
#include "support.hpp"

using namespace liesym;
using liesym::testing::golden_document;
using liesym::testing::golden_reference;
using liesym::testing::read_data;

namespace {

ParseError parse_error(const std::string& text) {
  try {
    parse_system(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no error for:\n" << text;
  return ParseError("", 0, 0);
}

const char* kHeader = "independent x, y\ndependent u(x, y)\n";

}  // namespace

TEST(Document, GoldenFixture) {
  const auto doc = golden_document();
  EXPECT_EQ(doc.equations.size(), 3U);
  EXPECT_EQ(doc.independents.size(), 2U);
  EXPECT_EQ(doc.dependents.size(), 3U);
  ASSERT_EQ(doc.parameters.size(), 2U);
  EXPECT_TRUE(doc.parameters[0].positive);
  EXPECT_EQ(doc.leads.size(), 3U);
}

TEST(Document, RoundTrip) {
  const auto doc = golden_document();
  const auto printed = print_system(doc);
  EXPECT_EQ(parse_system(printed), doc);
  EXPECT_EQ(print_system(parse_system(printed)), printed);
  const auto other = parse_system(read_data("boundary_layer_printed.sys"));
  EXPECT_EQ(parse_system(print_system(other)), other);
  EXPECT_NE(other, doc);
}

TEST(Document, SourceAndDisplayJetsAgree) {
  const auto a = parse_system(std::string(kHeader) + "eq d(u, x, y) + u_xy = 0\n");
  ASSERT_EQ(a.equations.size(), 1U);
  const auto& e = a.equations[0].lhs;
  EXPECT_EQ(e.size(), 1U);
  EXPECT_EQ(to_string(e), "2*u_xy");
}

TEST(Document, Options) {
  const auto doc = parse_system(std::string(kHeader) + "eq u_x = 0\noption ansatz_degree 0\noption invariant_order = 1\n");
  EXPECT_EQ(doc.ansatz_degree, 0);
  EXPECT_EQ(doc.invariant_order, 1);
}

TEST(Document, Errors) {
  EXPECT_NE(std::string(parse_error("").what()).find("no equations"), std::string::npos);
  EXPECT_NE(std::string(parse_error("# only a comment\n").what()).find("no equations"), std::string::npos);

  const auto undeclared = parse_error(std::string(kHeader) + "eq u_x = q\n");
  EXPECT_EQ(undeclared.line(), 3);
  EXPECT_EQ(undeclared.column(), 10);
  EXPECT_NE(std::string(undeclared.what()).find("q"), std::string::npos);

  const auto division = parse_error(std::string(kHeader) + "eq u_x/u = 0\n");
  EXPECT_EQ(division.line(), 3);
  EXPECT_NE(std::string(division.what()).find("non-polynomial"), std::string::npos);

  const auto lexical = parse_error(std::string(kHeader) + "eq u_x $ 0\n");
  EXPECT_EQ(lexical.line(), 3);
  EXPECT_EQ(lexical.column(), 8);

  const auto lead = parse_error(std::string(kHeader) + "eq u_x = 0\nlead u_xx\n");
  EXPECT_EQ(lead.line(), 4);

  EXPECT_EQ(parse_error("param d\n").line(), 1);
  EXPECT_EQ(parse_error(std::string(kHeader) + "eq u_x = 0\nbogus\n").line(), 4);
}

TEST(Document, ParameterDivisionAllowed) {
  const auto doc = parse_system("param k > 0\nindependent x\ndependent u(x)\neq u_x/k - u = 0\n");
  EXPECT_EQ(doc.equations.size(), 1U);
  const auto sys = to_system(doc);
  ASSERT_EQ(sys.rules().size(), 1U);
  EXPECT_EQ(sys.rules()[0].lead.display(), "u_x");
}

TEST(Document, Fields) {
  const auto doc = golden_document();
  const auto js = jet_space(doc);
  const auto scope = make_scope(doc);
  const auto a = parse_field("x*D(x) + u*D(u) + 2*p*D(p)", scope, js);
  const auto b = parse_field("x, 0, u, 0, 2*p", scope, js);
  EXPECT_EQ(a, b);
  EXPECT_THROW(parse_field("1, 2", scope, js), Error);
  EXPECT_EQ(parse_vector("1, -2, 5/2, 0.5"), (Vector{1, -2, Rational(5, 2), Rational(1, 2)}));
}

TEST(Pipeline, CommutatorGridConvention) {
  const auto doc = golden_document();
  const auto ref = golden_reference(doc);
  PipelineOptions o;
  o.reference = &ref;
  o.stages = {Stage::Structure};
  const auto text = emit_text(run_pipeline(doc, o));
  EXPECT_NE(text.find("row i, column j holds [v_i, v_j]"), std::string::npos);
  EXPECT_NE(text.find("v3     0      0      0      2*v3   -4*v3"), std::string::npos);
}

TEST(Pipeline, JsonIsExactAndStable) {
  const auto doc = golden_document();
  const auto ref = golden_reference(doc);
  PipelineOptions o;
  o.reference = &ref;
  const auto first = emit_json(run_pipeline(doc, o));
  const auto second = emit_json(run_pipeline(doc, o));
  EXPECT_EQ(first, second);
  const auto j = nlohmann::json::parse(first);
  EXPECT_EQ(j.at("schema"), 1);
  // Killing form entries round-trip as exact num/den strings.
  const auto& K = j.at("structure").at("killing_form");
  EXPECT_EQ(K.at(3).at(4), "-8/1");
  EXPECT_EQ(*parse_rational(K.at(4).at(4).get<std::string>()), 17);
  for (const auto& note : j.at("notes")) EXPECT_FALSE(note.at("anchor").get<std::string>().empty());
}

TEST(Pipeline, GeneratorsCarryResidualConfirmation) {
  const auto doc = golden_document();
  PipelineOptions o;
  o.stages = {Stage::Symmetries, Stage::Structure, Stage::Adjoint, Stage::Flows};
  const auto r = run_pipeline(doc, o);
  ASSERT_EQ(r.basis.size(), 6U);
  for (bool ok : r.basis_residual_zero) EXPECT_TRUE(ok);
  EXPECT_FALSE(r.basis_from_reference);
  EXPECT_EQ(r.algebra->dim(), 6U);
  // The solved sixth field x D(y) + u D(v) has no weight-lattice treatment.
  o.stages = {Stage::Invariants};
  EXPECT_THROW(run_pipeline(doc, o), StageError);
}

TEST(Pipeline, ConstantAnsatz) {
  const auto doc = golden_document();
  PipelineOptions o;
  o.ansatz_degree = 0;
  o.stages = {Stage::Symmetries};
  const auto r = run_pipeline(doc, o);
  EXPECT_EQ(r.solved.size(), 3U);
}

TEST(Pipeline, StageIsAttachedToErrors) {
  // A rotation is affine but neither a translation nor a scaling.
  const auto doc = parse_system("independent x, y\ndependent u(x, y)\neq u_xx + u_yy = 0\nlead u_xx\n");
  PipelineOptions o;
  o.stages = {Stage::Invariants};
  try {
    run_pipeline(doc, o);
    FAIL() << "expected a stage error";
  } catch (const StageError& e) {
    EXPECT_EQ(e.stage(), Stage::Invariants);
    EXPECT_EQ(std::string(e.what()).rfind("invariants: ", 0), 0U);
  }
}

TEST(Pipeline, StructureOnlyReport) {
  const auto L = load_structure_constants(read_data("structure_constants.json"));
  const auto r = structure_report(L, true);
  EXPECT_EQ(r.adjoint.size(), 5U);
  EXPECT_TRUE(r.solvable);
  const auto text = emit_text(r);
  EXPECT_EQ(text.find("symmetries"), std::string::npos);
  EXPECT_NE(text.find("Killing form"), std::string::npos);
}
