#include "liesym/pipeline.hpp"

#include <algorithm>
#include <map>

#include "liesym/errors.hpp"

namespace liesym {

namespace {

std::string vector_text(const std::vector<Expression>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + to_string(v[i]);
  return out + ")";
}

template <typename F>
void run_stage(Stage stage, F&& body) {
  try {
    body();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(stage, e.what());
  }
}

struct Context {
  const SystemDocument& doc;
  const PipelineOptions& options;
  const Reference* ref;
  AnalysisReport& report;
  std::optional<PDESystem> sys;
  std::optional<JetSpace> js;
  Symbol eps{Role::GroupParameter, "eps"};

  void check(const std::string& topic, const std::string& item, bool ok, const std::string& detail = {}) {
    report.checks.push_back({topic, item, ok, detail});
  }
  void note(const std::string& section, const std::string& message) {
    report.notes.push_back({ref ? ref->anchor(section) : section, message});
  }
  std::vector<std::string> names() const {
    if (ref && ref->functions.size() == js->q()) return ref->functions;
    return solution_names(js->q());
  }
};

void symmetries(Context& c) {
  auto& r = c.report;
  const auto det = build_determining(*c.sys, c.options.ansatz_degree);
  r.raw_equations = det.raw_count;
  r.equations = det.equations.size();
  r.unknowns = det.unknowns.size();
  const auto sol = solve_determining(det, *c.sys);
  r.solved = sol.generators;
  r.assumptions = sol.assumptions;

  if (c.ref) {
    r.basis = c.ref->generators;
    r.labels = c.ref->labels;
    r.basis_from_reference = true;
  } else {
    r.basis = r.solved;
    for (std::size_t i = 0; i < r.basis.size(); ++i) r.labels.push_back("v" + std::to_string(i + 1));
  }
  for (const auto& g : r.basis) r.basis_residual_zero.push_back(is_symmetry(g, *c.sys));

  if (!c.ref) return;
  for (std::size_t i = 0; i < r.basis.size(); ++i) {
    const bool in_span = decompose(r.solved, r.basis[i]).has_value();
    c.check("generators", r.labels[i], in_span && r.basis_residual_zero[i],
            r.basis[i].to_string() + (in_span ? " in the solved span" : " NOT in the solved span") +
                (r.basis_residual_zero[i] ? ", residual 0" : ", residual nonzero"));
    if (!in_span || !r.basis_residual_zero[i]) {
      c.note("generators", r.labels[i] + " = " + r.basis[i].to_string() + " is not a symmetry at ansatz degree " +
                               std::to_string(c.options.ansatz_degree));
    }
  }
  if (r.solved.size() > field_rank(r.basis)) {
    std::string extra;
    for (const auto& g : r.solved) {
      auto with = r.basis;
      with.push_back(g);
      if (field_rank(with) > field_rank(r.basis)) extra += (extra.empty() ? "" : ", ") + g.to_string();
    }
    c.note("generators", "solved symmetry space has dimension " + std::to_string(r.solved.size()) + ", " +
                             std::to_string(r.basis.size()) + " listed; outside their span: " + extra);
  }
}

void fill_structure(AnalysisReport& r);

void structure(Context& c) {
  auto& r = c.report;
  r.algebra = structure_constants(r.basis, r.labels);
  fill_structure(r);
  const auto& L = *r.algebra;
  if (!c.ref) return;
  const auto& ref = *c.ref;
  const std::size_t n = L.dim();

  if (!ref.commutators.empty()) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const auto& want = ref.commutators.at(i).at(j);
        const bool ok = want == L.constant(i, j);
        c.check("commutators", "[" + r.labels[i] + ", " + r.labels[j] + "]", ok,
                "computed " + L.format(L.constant(i, j)) + ", printed " + L.format(want));
        if (!ok) {
          c.note("commutators", "[" + r.labels[i] + ", " + r.labels[j] + "] = " + L.format(L.constant(i, j)) +
                                    ", printed " + L.format(want));
        }
      }
    }
  }
  if (ref.killing_form) {
    const bool ok = *ref.killing_form == r.killing;
    c.check("killing_form", "matrix", ok);
    if (!ok) c.note("killing_form", "computed Killing form differs from the printed matrix");
  }
  if (ref.solvable) {
    c.check("structure_claims", "solvable", *ref.solvable == r.solvable);
    if (*ref.solvable != r.solvable) c.note("structure_claims", "solvability claim does not hold");
  }
  if (ref.semisimple) {
    c.check("structure_claims", "semisimple", *ref.semisimple == r.semisimple);
    if (*ref.semisimple != r.semisimple) c.note("structure_claims", "semisimplicity claim does not hold");
  }
  if (ref.radical_is_whole) {
    const bool whole = r.radical.dim() == n;
    c.check("structure_claims", "radical is the whole algebra", *ref.radical_is_whole == whole);
    if (*ref.radical_is_whole != whole) c.note("structure_claims", "radical claim does not hold");
  }
  if (!ref.abelian_ideal.empty()) {
    const auto S = Subspace::span(n, ref.abelian_ideal);
    const bool ok = is_abelian(L, S) && is_ideal(L, S);
    c.check("structure_claims", "abelian ideal", ok);
    if (!ok) c.note("structure_claims", "claimed abelian ideal is not an abelian ideal");
  }
  if (!ref.abelian_complement.empty()) {
    const auto S = Subspace::span(n, ref.abelian_complement);
    const bool ok = is_abelian(L, S) && subalgebra_check(L, S);
    c.check("structure_claims", "abelian complement", ok);
    if (!ok) c.note("structure_claims", "claimed abelian subalgebra is not abelian");
  }
  if (!ref.derived_series.empty()) {
    // The printed chain lists g^(1), g^(2), ...; the computed one starts at g.
    std::vector<Subspace> computed(r.derived_series.begin() + 1, r.derived_series.end());
    bool ok = computed.size() == ref.derived_series.size();
    for (std::size_t k = 0; ok && k < computed.size(); ++k) ok = computed[k] == ref.derived_series[k];
    auto describe = [&](const std::vector<Subspace>& chain) {
      std::string s;
      for (std::size_t k = 0; k < chain.size(); ++k) {
        s += (k ? " > " : "") + std::string("dim ") + std::to_string(chain[k].dim());
      }
      return s;
    };
    c.check("derived_series", "chain", ok,
            "computed g^(1).. " + describe(computed) + "; printed " + describe(ref.derived_series));
    if (!ok) {
      std::string msg = "derived series: computed";
      for (std::size_t k = 0; k < computed.size(); ++k) {
        msg += " g^(" + std::to_string(k + 1) + ") = <";
        for (std::size_t b = 0; b < computed[k].basis().size(); ++b) {
          msg += (b ? ", " : "") + L.format(computed[k].basis()[b]);
        }
        msg += ">";
      }
      msg += "; printed chain has dimensions " + describe(ref.derived_series);
      c.note("derived_series", msg);
    }
  }
}

void fill_structure(AnalysisReport& r) {
  const auto& L = *r.algebra;
  r.killing = killing_form(L);
  r.killing_determinant = determinant(r.killing);
  r.derived_series = derived_series(L);
  r.lower_central_series = lower_central_series(L);
  r.solvable = is_solvable(L);
  r.nilpotent = is_nilpotent(L);
  r.semisimple = is_semisimple(L);
  r.center = center(L);
  r.radical = radical(L);
}

void adjoint(Context& c) {
  auto& r = c.report;
  const auto& L = *r.algebra;
  const std::size_t n = L.dim();
  for (std::size_t i = 0; i < n; ++i) r.adjoint.push_back(ad_exp(L, i));
  if (!c.ref || c.ref->adjoint_rows.empty()) return;
  for (std::size_t i = 0; i < n && i < c.ref->adjoint_rows.size(); ++i) {
    const auto& printed = c.ref->adjoint_rows[i];
    std::vector<std::string> bad;
    for (std::size_t row = 0; row < n; ++row) {
      for (std::size_t col = 0; col < n; ++col) {
        // Printed row = image of v_row, so the printed (row, col) entry is computed (col, row).
        const auto want = ExpPolynomial::from_expression(printed.at(row).at(col), c.eps);
        const auto& got = r.adjoint[i](col, row);
        if (!(want == got)) {
          bad.push_back("(" + std::to_string(row + 1) + "," + std::to_string(col + 1) + ") printed " +
                        want.to_string() + ", computed " + got.to_string());
        }
      }
    }
    std::string detail;
    for (const auto& b : bad) detail += (detail.empty() ? "" : "; ") + b;
    c.check("adjoint", "M" + std::to_string(i + 1), bad.empty(), detail);
    if (!bad.empty()) c.note("adjoint", "Ad(exp(eps " + r.labels[i] + ")) differs from the printed matrix: " + detail);
  }
}

void flows(Context& c) {
  auto& r = c.report;
  const auto names = c.names();
  for (const auto& g : r.basis) {
    r.flows.push_back(flow(g, c.eps));
    r.transformed.push_back(transform_solution(r.flows.back(), names));
  }
  // exp(eps v_n) o ... o exp(eps v_1)
  FlowMap comp = identity_flow(r.basis.front().coordinates(), r.basis.front().p());
  for (const auto& f : r.flows) comp = compose(f, comp);
  r.composite = comp;
  r.composite_transformed = transform_solution(comp, names);
  if (!c.ref) return;
  const auto& ref = *c.ref;
  for (std::size_t i = 0; i < r.flows.size() && i < ref.flows.size(); ++i) {
    const bool ok = r.flows[i].images == ref.flows[i];
    c.check("flows", "G" + std::to_string(i + 1), ok,
            "computed " + vector_text(r.flows[i].images) + ", printed " + vector_text(ref.flows[i]));
    if (!ok) {
      c.note("flows", "flow of " + r.labels[i] + " is " + vector_text(r.flows[i].images) + ", printed " +
                          vector_text(ref.flows[i]));
    }
  }
  for (std::size_t i = 0; i < r.transformed.size() && i < ref.transformed.size(); ++i) {
    const bool ok = r.transformed[i] == ref.transformed[i];
    std::string detail = "computed " + vector_text(r.transformed[i]) + ", printed " + vector_text(ref.transformed[i]);
    if (!ok) {
      const auto push = transform_solution(r.flows[i], names, SolutionOrientation::Pushforward);
      const bool push_ok = push == ref.transformed[i];
      detail += push_ok ? "; the printed form matches the pushforward orientation" : "";
      c.note("transformed_solutions", "transformed solution under " + r.labels[i] + ": " + detail);
    }
    c.check("transformed_solutions", "G" + std::to_string(i + 1), ok, detail);
  }
  if (!ref.composite.empty()) {
    const bool ok = r.composite_transformed == ref.composite;
    std::string detail = "computed " + vector_text(r.composite_transformed) + ", printed " + vector_text(ref.composite);
    std::vector<std::string> diffs;
    for (std::size_t a = 0; a < ref.composite.size() && a < r.composite_transformed.size(); ++a) {
      if (!(ref.composite[a] == r.composite_transformed[a])) {
        diffs.push_back(r.basis.front().coordinates()[r.basis.front().p() + a].display() + ": computed " +
                        to_string(r.composite_transformed[a]) + " vs printed " + to_string(ref.composite[a]));
      }
    }
    std::string diff_text;
    for (const auto& d : diffs) diff_text += (diff_text.empty() ? "" : "; ") + d;
    c.check("composite", "composite transformed solution", ok, ok ? detail : diff_text);
    if (!ok) c.note("composite", "composite transformation differs: " + diff_text);
  }
}

void invariants(Context& c) {
  auto& r = c.report;
  const auto& js = *c.js;
  for (int k = 0; k <= c.options.invariant_order; ++k) {
    const auto ws = weight_system(r.basis, js, k);
    InvariantBlock block{k, ws.free_coordinates(), monomial_invariants(ws), {}};
    for (const auto& m : block.lattice) block.expressions.push_back(monomial_expression(block.coordinates, m));
    r.invariants.push_back(std::move(block));
  }
  const auto names = c.names();
  for (const auto& g : r.basis) r.similarity.push_back(similarity_form(g, js, names));

  if (!c.ref) return;
  const auto& ref = *c.ref;
  auto check_list = [&](const std::string& section, const std::string& what, const std::vector<Expression>& list,
                        const std::vector<VectorField>& gens) {
    for (const auto& e : list) {
      const bool ok = verify_invariant(e, gens, js);
      c.check(section, what + ": " + to_string(e), ok);
      if (!ok) c.note(section, to_string(e) + " is not an invariant of " + what);
    }
  };
  check_list("differential_invariants", "first-order list", ref.first_order_invariants, r.basis);
  check_list("differential_invariants", "second-order list", ref.second_order_invariants, r.basis);
  for (const auto& row : ref.invariant_table) {
    const auto it = std::find(r.labels.begin(), r.labels.end(), row.generator);
    if (it == r.labels.end()) throw Error("invariant table names unknown generator " + row.generator);
    const std::vector<VectorField> one{r.basis[static_cast<std::size_t>(it - r.labels.begin())]};
    static const char* orders[] = {"ordinary", "first order", "second order"};
    for (std::size_t k = 0; k < row.by_order.size(); ++k) {
      check_list("invariant_table", row.generator + " " + orders[k], row.by_order[k], one);
    }
  }
  for (const auto& row : ref.similarity) {
    const auto it = std::find(r.labels.begin(), r.labels.end(), row.generator);
    if (it == r.labels.end()) throw Error("similarity table names unknown generator " + row.generator);
    const auto& form = *r.similarity[static_cast<std::size_t>(it - r.labels.begin())];
    bool ok;
    std::string detail;
    if (row.dependent_only) {
      ok = form.kind == SimilarityForm::Kind::DependentOnly;
      detail = ok ? form.note : "computed a reducing form";
    } else {
      ok = form.substitution == row.substitution;
      for (std::size_t k = 0; k < form.substitution.size(); ++k) {
        detail += (k ? ", " : "") + form.substitution[k].first.display() + " = " + to_string(form.substitution[k].second);
      }
    }
    c.check("similarity", row.generator, ok, detail);
    if (!ok) c.note("similarity", "similarity form of " + row.generator + ": computed " + detail);
  }
}

void optimal(Context& c) {
  auto& r = c.report;
  if (c.options.optimal_table) {
    r.optimal_entries = *c.options.optimal_table;
  } else if (c.ref) {
    r.optimal_entries = c.ref->optimal_table;
  }
  if (r.optimal_entries.empty()) return;
  r.optimal = verify_optimal_table(*r.algebra, r.optimal_entries);
  const auto& L = *r.algebra;
  for (const auto& e : r.optimal->entries) {
    std::string detail = "dim " + std::to_string(e.dim);
    if (!e.closed) {
      const auto [a, b] = *e.failing_pair;
      detail += ", bracket of generators " + std::to_string(a + 1) + " and " + std::to_string(b + 1) + " is " +
                L.format(e.failing_bracket) + ", outside the span";
      c.note("optimal_table", e.label + " is not a subalgebra: " + detail);
    }
    c.check("optimal_table", e.label, e.closed, detail);
  }
  // Instantiations of one parametric entry share a family; pairs inside a
  // family are expected to agree, so only cross-family classes are noted.
  auto family = [&](std::size_t k) {
    const auto& label = r.optimal->entries[k].label;
    return label.substr(0, label.find(" ["));
  };
  std::vector<std::size_t> parent(r.optimal->entries.size());
  for (std::size_t k = 0; k < parent.size(); ++k) parent[k] = k;
  auto root = [&](std::size_t k) {
    while (parent[k] != k) k = parent[k] = parent[parent[k]];
    return k;
  };
  for (const auto& [i, j] : r.optimal->not_separated) {
    if (family(i) != family(j)) parent[root(i)] = root(j);
  }
  std::map<std::size_t, std::vector<std::string>> classes;
  for (std::size_t k = 0; k < parent.size(); ++k) {
    auto& members = classes[root(k)];
    if (std::find(members.begin(), members.end(), family(k)) == members.end()) members.push_back(family(k));
  }
  for (const auto& [_, members] : classes) {
    if (members.size() < 2) continue;
    std::string list;
    for (const auto& m : members) list += (list.empty() ? "" : ", ") + m;
    c.note("optimal_table", list + " share every computed conjugacy invariant; not shown to be inequivalent");
  }
  for (auto b : r.optimal->uncovered_basis_vectors) {
    c.note("optimal_table", "no one-dimensional entry covers <" + r.labels[b] + ">");
  }
}

}  // namespace

const char* stage_name(Stage stage) {
  switch (stage) {
    case Stage::Symmetries: return "symmetries";
    case Stage::Structure: return "structure";
    case Stage::Adjoint: return "adjoint";
    case Stage::Flows: return "flows";
    case Stage::Invariants: return "invariants";
    case Stage::Optimal: return "optimal";
  }
  return "?";
}

std::vector<std::string> solution_names(std::size_t q) {
  static const std::vector<std::string> short_names{"f", "g", "h"};
  if (q <= short_names.size()) return {short_names.begin(), short_names.begin() + static_cast<long>(q)};
  std::vector<std::string> out;
  for (std::size_t a = 0; a < q; ++a) out.push_back("f" + std::to_string(a + 1));
  return out;
}

AnalysisReport structure_report(const LieAlgebra& L, bool with_adjoint) {
  AnalysisReport r;
  r.stages = {Stage::Structure};
  r.labels = L.labels();
  r.algebra = L;
  run_stage(Stage::Structure, [&] { fill_structure(r); });
  if (with_adjoint) {
    r.stages.insert(Stage::Adjoint);
    run_stage(Stage::Adjoint, [&] {
      for (std::size_t i = 0; i < L.dim(); ++i) r.adjoint.push_back(ad_exp(L, i));
    });
  }
  return r;
}

AnalysisReport run_pipeline(const SystemDocument& doc, const PipelineOptions& options) {
  AnalysisReport report;
  std::set<Stage> stages = options.stages;
  // Dependencies.
  if (stages.count(Stage::Adjoint) || stages.count(Stage::Optimal)) stages.insert(Stage::Structure);
  stages.insert(Stage::Symmetries);
  report.stages = stages;
  report.equation_count = doc.equations.size();

  Context c{doc, options, options.reference, report, std::nullopt, std::nullopt};
  run_stage(Stage::Symmetries, [&] {
    c.sys = to_system(doc);
    const int order = std::max(c.sys->jet_space().max_order(), options.invariant_order);
    std::vector<std::string> deps;
    for (const auto& d : doc.dependents) deps.push_back(d.name);
    c.js = JetSpace(doc.independents, deps, order);
    symmetries(c);
    if (report.basis.empty()) throw Error("no symmetry generators");
  });
  if (stages.count(Stage::Structure)) run_stage(Stage::Structure, [&] { structure(c); });
  if (stages.count(Stage::Adjoint)) run_stage(Stage::Adjoint, [&] { adjoint(c); });
  if (stages.count(Stage::Flows)) run_stage(Stage::Flows, [&] { flows(c); });
  if (stages.count(Stage::Invariants)) run_stage(Stage::Invariants, [&] { invariants(c); });
  if (stages.count(Stage::Optimal)) run_stage(Stage::Optimal, [&] { optimal(c); });
  return report;
}

}  // namespace liesym
