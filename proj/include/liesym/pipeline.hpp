#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "liesym/determining.hpp"
#include "liesym/errors.hpp"
#include "liesym/document.hpp"
#include "liesym/flows.hpp"
#include "liesym/invariants.hpp"
#include "liesym/optimal.hpp"

namespace liesym {

enum class Stage { Symmetries, Structure, Adjoint, Flows, Invariants, Optimal };

const char* stage_name(Stage stage);

/// A module error with the pipeline stage attached.
class StageError : public Error {
 public:
  StageError(Stage stage, const std::string& what)
      : Error(std::string(stage_name(stage)) + ": " + what), stage_(stage) {}
  Stage stage() const { return stage_; }

 private:
  Stage stage_;
};

/// Published values to compare against. Every section carries the anchor of
/// the place it was transcribed from.
struct Reference {
  std::map<std::string, std::string> anchors;
  std::vector<std::string> labels;
  std::vector<VectorField> generators;
  /// commutators[i][j] = coordinates of [v_i, v_j].
  std::vector<std::vector<Vector>> commutators;
  std::optional<Matrix> killing_form;
  std::vector<Subspace> derived_series;
  std::optional<bool> solvable;
  std::optional<bool> semisimple;
  std::optional<bool> radical_is_whole;
  std::vector<Vector> abelian_ideal;
  std::vector<Vector> abelian_complement;
  /// Printed layout: row i holds the image of v_i.
  std::vector<std::vector<std::vector<Expression>>> adjoint_rows;
  std::vector<std::vector<Expression>> flows;
  std::vector<std::string> functions;
  std::vector<std::vector<Expression>> transformed;
  std::vector<Expression> composite;
  std::vector<Expression> first_order_invariants;
  std::vector<Expression> second_order_invariants;
  struct InvariantRow {
    std::string generator;
    /// Entries for orders 0, 1, 2.
    std::vector<std::vector<Expression>> by_order;
  };
  std::vector<InvariantRow> invariant_table;
  struct SimilarityRow {
    std::string generator;
    bool dependent_only = false;
    std::vector<std::pair<Symbol, Expression>> substitution;
  };
  std::vector<SimilarityRow> similarity;
  std::vector<TableEntry> optimal_table;

  std::string anchor(const std::string& section) const;
};

/// Scope for reference expressions: the document's names, formal functions,
/// group parameters eps and s, and the reduced variable r.
Scope reference_scope(const SystemDocument& doc);

/// Loads a reference document; `base_dir` resolves a linked optimal table file.
Reference load_reference(std::string_view json_text, const SystemDocument& doc, const std::string& base_dir = ".");

/// Coordinates of a linear combination such as "v1 + 5/2*beta3*(v4 + v5)"
/// with the named parameters replaced by the given values.
Vector parse_algebra_element(std::string_view text, const std::vector<std::string>& labels,
                             const std::map<std::string, Rational>& values = {});

/// Entries with parameters are instantiated once per instantiation; the
/// label then gets the parameter values appended.
std::vector<TableEntry> load_optimal_table(std::string_view json_text, const std::vector<std::string>& labels);

/// {"dim": n, "labels": [...], "brackets": [{"i": 1, "j": 4, "coeffs": [...]}]}
/// with 1-based indices; coefficients are integers or "num/den" strings.
LieAlgebra load_structure_constants(std::string_view json_text);

struct PipelineOptions {
  int ansatz_degree = 1;
  int invariant_order = 2;
  std::set<Stage> stages{Stage::Symmetries, Stage::Structure, Stage::Adjoint,
                         Stage::Flows,      Stage::Invariants, Stage::Optimal};
  const Reference* reference = nullptr;
  /// Overrides the reference table in the optimal stage.
  std::optional<std::vector<TableEntry>> optimal_table;
};

/// One comparison against a published value.
struct Check {
  std::string topic;
  std::string item;
  bool ok = false;
  std::string detail;
};

struct Note {
  std::string anchor;
  std::string message;
};

struct InvariantBlock {
  int order = 0;
  std::vector<Symbol> coordinates;
  std::vector<MonomialInvariant> lattice;
  std::vector<Expression> expressions;
};

struct AnalysisReport {
  std::set<Stage> stages;
  std::size_t equation_count = 0;

  // Symmetries.
  std::size_t raw_equations = 0;
  std::size_t equations = 0;
  std::size_t unknowns = 0;
  std::vector<VectorField> solved;
  std::vector<Expression> assumptions;

  // Basis used for every later stage.
  std::vector<std::string> labels;
  std::vector<VectorField> basis;
  bool basis_from_reference = false;
  std::vector<bool> basis_residual_zero;

  // Structure.
  std::optional<LieAlgebra> algebra;
  Matrix killing;
  Rational killing_determinant;
  std::vector<Subspace> derived_series;
  std::vector<Subspace> lower_central_series;
  bool solvable = false;
  bool nilpotent = false;
  bool semisimple = false;
  Subspace center;
  Subspace radical;

  std::vector<ExpMatrix> adjoint;

  std::vector<FlowMap> flows;
  std::vector<std::vector<Expression>> transformed;
  std::optional<FlowMap> composite;
  std::vector<Expression> composite_transformed;

  std::vector<InvariantBlock> invariants;
  std::vector<std::optional<SimilarityForm>> similarity;

  std::vector<TableEntry> optimal_entries;
  std::optional<OptimalTableReport> optimal;

  std::vector<Check> checks;
  std::vector<Note> notes;
};

/// Runs the selected stages in order, pulling in the stages they depend on.
/// Module errors are rethrown as StageError.
AnalysisReport run_pipeline(const SystemDocument& doc, const PipelineOptions& options);

/// Structure (and optionally adjoint) sections for an algebra given directly
/// by its structure constants.
AnalysisReport structure_report(const LieAlgebra& L, bool with_adjoint = false);

/// Function names used for transformed solutions and similarity forms.
std::vector<std::string> solution_names(std::size_t q);

std::string emit_text(const AnalysisReport& report);
/// Schema version 1; rationals as "num/den" strings.
std::string emit_json(const AnalysisReport& report);

}  // namespace liesym
