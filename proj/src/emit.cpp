#include <sstream>

#include <nlohmann/json.hpp>

#include "liesym/pipeline.hpp"

namespace liesym {

namespace {

using nlohmann::ordered_json;

ordered_json rational_json(const Rational& q) { return to_fraction_string(q); }

ordered_json vector_json(const Vector& v) {
  ordered_json out = ordered_json::array();
  for (const auto& x : v) out.push_back(rational_json(x));
  return out;
}

ordered_json matrix_json(const Matrix& m) {
  ordered_json out = ordered_json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(vector_json(m.row(r)));
  return out;
}

ordered_json subspace_json(const Subspace& s) {
  ordered_json out = ordered_json::array();
  for (const auto& b : s.basis()) out.push_back(vector_json(b));
  return out;
}

ordered_json expressions_json(const std::vector<Expression>& v) {
  ordered_json out = ordered_json::array();
  for (const auto& e : v) out.push_back(to_string(e));
  return out;
}

ordered_json field_json(const std::string& label, const VectorField& f) {
  ordered_json coeffs = ordered_json::object();
  for (std::size_t i = 0; i < f.coordinates().size(); ++i) {
    coeffs[f.coordinates()[i].display()] = to_string(f.coefficient(i));
  }
  return {{"label", label}, {"field", f.to_string()}, {"coefficients", coeffs}};
}

std::string subspace_text(const LieAlgebra& L, const Subspace& s) {
  std::string out = "<";
  for (std::size_t b = 0; b < s.basis().size(); ++b) out += (b ? ", " : "") + L.format(s.basis()[b]);
  return out + ">";
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

// Column-aligned rendering of a string grid with row and column headers.
void grid(std::ostream& os, const std::vector<std::string>& cols, const std::vector<std::string>& rows,
          const std::vector<std::vector<std::string>>& cells, const std::string& corner) {
  std::size_t width = corner.size();
  for (const auto& c : cols) width = std::max(width, c.size());
  for (const auto& r : rows) width = std::max(width, r.size());
  for (const auto& row : cells) {
    for (const auto& c : row) width = std::max(width, c.size());
  }
  width += 2;
  os << "  " << pad(corner, width);
  for (const auto& c : cols) os << pad(c, width);
  os << "\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    os << "  " << pad(rows[i], width);
    for (const auto& c : cells[i]) os << pad(c, width);
    os << "\n";
  }
}

}  // namespace

std::string emit_text(const AnalysisReport& r) {
  std::ostringstream os;
  const auto& stages = r.stages;
  if (stages.count(Stage::Symmetries)) {
    os << "symmetries\n";
    os << "  determining equations: " << r.raw_equations << " raw, " << r.equations << " after deduplication, "
       << r.unknowns << " unknowns\n";
    os << "  solved symmetry space: dimension " << r.solved.size() << "\n";
    for (std::size_t i = 0; i < r.solved.size(); ++i) os << "    " << r.solved[i].to_string() << "\n";
    for (const auto& a : r.assumptions) os << "  assumed nonzero: " << to_string(a) << "\n";
    os << "  basis (" << (r.basis_from_reference ? "reference" : "solved") << "):\n";
    for (std::size_t i = 0; i < r.basis.size(); ++i) {
      os << "    " << r.labels[i] << " = " << r.basis[i].to_string()
         << (r.basis_residual_zero[i] ? "   [residual 0]" : "   [residual NONZERO]") << "\n";
    }
  }

  if (r.algebra && stages.count(Stage::Structure)) {
    const auto& L = *r.algebra;
    const std::size_t n = L.dim();
    os << (stages.count(Stage::Symmetries) ? "\n" : "") << "structure\n  commutators (row i, column j holds [v_i, v_j])\n";
    std::vector<std::vector<std::string>> cells(n, std::vector<std::string>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) cells[i][j] = L.format(L.constant(i, j));
    }
    grid(os, r.labels, r.labels, cells, "[,]");
    os << "  Killing form\n";
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) cells[i][j] = to_string(r.killing(i, j));
    }
    grid(os, r.labels, r.labels, cells, "K");
    os << "  det K = " << to_string(r.killing_determinant) << "\n";
    os << "  derived series:";
    for (const auto& s : r.derived_series) os << " " << subspace_text(L, s);
    os << "\n  lower central series:";
    for (const auto& s : r.lower_central_series) os << " " << subspace_text(L, s);
    os << "\n  solvable " << (r.solvable ? "yes" : "no") << ", nilpotent " << (r.nilpotent ? "yes" : "no")
       << ", semisimple " << (r.semisimple ? "yes" : "no") << "\n";
    os << "  center " << subspace_text(L, r.center) << "\n  radical " << subspace_text(L, r.radical) << "\n";
  }

  if (stages.count(Stage::Adjoint)) {
    os << "\nadjoint (Ad(exp(eps v_i)); column j holds the image of v_j)\n";
    for (std::size_t i = 0; i < r.adjoint.size(); ++i) {
      const auto& m = r.adjoint[i];
      std::vector<std::vector<std::string>> cells(m.rows(), std::vector<std::string>(m.cols()));
      for (std::size_t a = 0; a < m.rows(); ++a) {
        for (std::size_t b = 0; b < m.cols(); ++b) cells[a][b] = m(a, b).to_string();
      }
      os << "  " << r.labels[i] << "\n";
      grid(os, r.labels, r.labels, cells, "");
    }
  }

  if (stages.count(Stage::Flows)) {
    os << "\nflows\n";
    auto tuple = [](const std::vector<Expression>& v) {
      std::string s = "(";
      for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + to_string(v[k]);
      return s + ")";
    };
    for (std::size_t i = 0; i < r.flows.size(); ++i) {
      os << "  exp(eps " << r.labels[i] << "): " << tuple(r.flows[i].images) << "\n";
      os << "    transformed solution: " << tuple(r.transformed[i]) << "\n";
    }
    if (r.composite) {
      os << "  composite exp(eps " << r.labels.back() << ") o ... o exp(eps " << r.labels.front()
         << "): " << tuple(r.composite->images) << "\n";
      os << "    transformed solution: " << tuple(r.composite_transformed) << "\n";
    }
  }

  if (stages.count(Stage::Invariants)) {
    os << "\ninvariants (monomial lattice basis per order)\n";
    for (const auto& b : r.invariants) {
      os << "  order " << b.order << ": " << b.expressions.size() << " generators\n";
      for (const auto& e : b.expressions) os << "    " << to_string(e) << "\n";
    }
    os << "  similarity forms\n";
    for (std::size_t i = 0; i < r.similarity.size(); ++i) {
      if (!r.similarity[i]) continue;
      const auto& f = *r.similarity[i];
      os << "    " << r.labels[i] << ": ";
      if (f.kind == SimilarityForm::Kind::DependentOnly) {
        os << f.note << "\n";
        continue;
      }
      for (std::size_t k = 0; k < f.substitution.size(); ++k) {
        os << (k ? ", " : "") << f.substitution[k].first.display() << " = " << to_string(f.substitution[k].second);
      }
      os << "\n";
    }
  }

  if (r.optimal && r.algebra) {
    os << "\noptimal table\n";
    for (const auto& e : r.optimal->entries) {
      os << "  " << pad(e.label, 48) << " dim " << e.dim << (e.closed ? "  subalgebra" : "  NOT CLOSED")
         << (e.abelian ? ", abelian" : "") << (e.ideal ? ", ideal" : "") << ", dim with [g,g] "
         << e.derived_intersection << ", quotient image dim " << e.quotient_image.dim() << "\n";
    }
  }

  if (!r.checks.empty()) {
    std::size_t passed = 0;
    for (const auto& c : r.checks) passed += c.ok ? 1 : 0;
    os << "\nreference comparison: " << passed << "/" << r.checks.size() << " agree\n";
    for (const auto& c : r.checks) {
      if (!c.ok) os << "  MISMATCH " << c.topic << " " << c.item << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
    }
  }
  if (!r.notes.empty()) {
    os << "\ndiscrepancy notes\n";
    for (const auto& n : r.notes) os << "  [" << n.anchor << "] " << n.message << "\n";
  }
  return os.str();
}

std::string emit_json(const AnalysisReport& r) {
  ordered_json out;
  out["schema"] = 1;
  ordered_json stages = ordered_json::array();
  for (auto s : r.stages) stages.push_back(stage_name(s));
  out["stages"] = stages;

  if (r.stages.count(Stage::Symmetries)) {
    ordered_json sym;
    sym["equations"] = r.equation_count;
    sym["determining"] = {{"raw", r.raw_equations}, {"deduplicated", r.equations}, {"unknowns", r.unknowns},
                          {"nullspace_dim", r.solved.size()}};
    ordered_json solved = ordered_json::array();
    for (std::size_t i = 0; i < r.solved.size(); ++i) solved.push_back(field_json("w" + std::to_string(i + 1), r.solved[i]));
    sym["solved"] = solved;
    sym["assumptions"] = expressions_json(r.assumptions);
    ordered_json basis = ordered_json::array();
    for (std::size_t i = 0; i < r.basis.size(); ++i) {
      auto f = field_json(r.labels[i], r.basis[i]);
      f["residual_zero"] = static_cast<bool>(r.basis_residual_zero[i]);
      basis.push_back(f);
    }
    sym["basis_source"] = r.basis_from_reference ? "reference" : "solved";
    sym["basis"] = basis;
    out["symmetries"] = sym;
  }

  if (r.algebra && r.stages.count(Stage::Structure)) {
    const auto& L = *r.algebra;
    ordered_json s;
    s["labels"] = L.labels();
    ordered_json table = ordered_json::array();
    for (std::size_t i = 0; i < L.dim(); ++i) {
      ordered_json row = ordered_json::array();
      for (std::size_t j = 0; j < L.dim(); ++j) row.push_back(vector_json(L.constant(i, j)));
      table.push_back(row);
    }
    s["commutators"] = table;
    s["killing_form"] = matrix_json(r.killing);
    s["killing_determinant"] = rational_json(r.killing_determinant);
    ordered_json ds = ordered_json::array();
    for (const auto& t : r.derived_series) ds.push_back(subspace_json(t));
    s["derived_series"] = ds;
    ordered_json lcs = ordered_json::array();
    for (const auto& t : r.lower_central_series) lcs.push_back(subspace_json(t));
    s["lower_central_series"] = lcs;
    s["solvable"] = r.solvable;
    s["nilpotent"] = r.nilpotent;
    s["semisimple"] = r.semisimple;
    s["center"] = subspace_json(r.center);
    s["radical"] = subspace_json(r.radical);
    out["structure"] = s;
  }

  if (r.stages.count(Stage::Adjoint)) {
    ordered_json adj = ordered_json::array();
    for (std::size_t i = 0; i < r.adjoint.size(); ++i) {
      const auto& m = r.adjoint[i];
      ordered_json rows = ordered_json::array();
      for (std::size_t a = 0; a < m.rows(); ++a) {
        ordered_json row = ordered_json::array();
        for (std::size_t b = 0; b < m.cols(); ++b) row.push_back(m(a, b).to_string());
        rows.push_back(row);
      }
      adj.push_back({{"generator", r.labels[i]}, {"layout", "column j holds the image of v_j"}, {"matrix", rows}});
    }
    out["adjoint"] = adj;
  }

  if (r.stages.count(Stage::Flows)) {
    ordered_json fl = ordered_json::array();
    for (std::size_t i = 0; i < r.flows.size(); ++i) {
      fl.push_back({{"generator", r.labels[i]},
                    {"images", expressions_json(r.flows[i].images)},
                    {"inverse", expressions_json(r.flows[i].inverse_images)},
                    {"transformed_solution", expressions_json(r.transformed[i])}});
    }
    out["flows"] = fl;
    if (r.composite) {
      out["composite"] = {{"images", expressions_json(r.composite->images)},
                          {"transformed_solution", expressions_json(r.composite_transformed)}};
    }
  }

  if (r.stages.count(Stage::Invariants)) {
    ordered_json inv = ordered_json::array();
    for (const auto& b : r.invariants) {
      ordered_json coords = ordered_json::array();
      for (const auto& c : b.coordinates) coords.push_back(c.display());
      ordered_json lattice = ordered_json::array();
      for (const auto& m : b.lattice) {
        ordered_json row = ordered_json::array();
        for (const auto& k : m) row.push_back(k.get_str());
        lattice.push_back(row);
      }
      inv.push_back({{"order", b.order},
                     {"coordinates", coords},
                     {"lattice", lattice},
                     {"expressions", expressions_json(b.expressions)}});
    }
    out["invariants"] = inv;
    ordered_json sim = ordered_json::array();
    for (std::size_t i = 0; i < r.similarity.size(); ++i) {
      if (!r.similarity[i]) continue;
      const auto& f = *r.similarity[i];
      ordered_json subs = ordered_json::object();
      for (const auto& [z, e] : f.substitution) subs[z.display()] = to_string(e);
      const char* kind = f.kind == SimilarityForm::Kind::Translation ? "translation"
                         : f.kind == SimilarityForm::Kind::Scaling   ? "scaling"
                                                                     : "dependent_only";
      sim.push_back({{"generator", r.labels[i]}, {"kind", kind}, {"substitution", subs}, {"note", f.note}});
    }
    out["similarity"] = sim;
  }

  if (r.optimal) {
    ordered_json entries = ordered_json::array();
    for (std::size_t k = 0; k < r.optimal->entries.size(); ++k) {
      const auto& e = r.optimal->entries[k];
      ordered_json gens = ordered_json::array();
      for (const auto& g : r.optimal_entries[k].generators) gens.push_back(vector_json(g));
      ordered_json item{{"label", e.label},
                        {"generators", gens},
                        {"dim", e.dim},
                        {"closed", e.closed},
                        {"abelian", e.abelian},
                        {"ideal", e.ideal},
                        {"derived_intersection", e.derived_intersection},
                        {"quotient_image", subspace_json(e.quotient_image)}};
      if (!e.closed) {
        item["failing_pair"] = {e.failing_pair->first + 1, e.failing_pair->second + 1};
        item["failing_bracket"] = vector_json(e.failing_bracket);
      }
      entries.push_back(item);
    }
    ordered_json ns = ordered_json::array();
    for (const auto& [i, j] : r.optimal->not_separated) ns.push_back({r.optimal->entries[i].label, r.optimal->entries[j].label});
    ordered_json uncovered = ordered_json::array();
    for (auto b : r.optimal->uncovered_basis_vectors) uncovered.push_back(r.labels[b]);
    out["optimal"] = {{"entries", entries}, {"not_separated", ns}, {"uncovered", uncovered}};
  }

  ordered_json checks = ordered_json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"topic", c.topic}, {"item", c.item}, {"ok", c.ok}, {"detail", c.detail}});
  }
  out["checks"] = checks;
  ordered_json notes = ordered_json::array();
  for (const auto& n : r.notes) notes.push_back({{"anchor", n.anchor}, {"message", n.message}});
  out["notes"] = notes;
  return out.dump(2) + "\n";
}

}  // namespace liesym
