#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "liesym/errors.hpp"
#include "liesym/pipeline.hpp"

namespace liesym {

namespace {

using nlohmann::json;

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(std::string("invalid JSON: ") + e.what());
  }
}

Rational json_rational(const json& v) {
  if (v.is_number_integer()) return Rational(Integer(v.dump(), 10));
  if (v.is_string()) {
    const auto parsed = parse_vector(v.get<std::string>());
    if (parsed.size() == 1) return parsed.front();
  }
  throw Error("expected an integer or a \"num/den\" string, got " + v.dump());
}

std::vector<std::string> strings(const json& v) {
  std::vector<std::string> out;
  for (const auto& s : v) out.push_back(s.get<std::string>());
  return out;
}

std::vector<Expression> expressions(const json& v, const Scope& scope) {
  std::vector<Expression> out;
  for (const auto& s : v) out.push_back(parse_expression(s.get<std::string>(), scope));
  return out;
}

Scope algebra_scope(const std::vector<std::string>& labels, const std::map<std::string, Rational>& values,
                    std::vector<Symbol>& label_symbols) {
  Scope scope;
  scope.polynomial_only = false;
  for (const auto& l : labels) {
    label_symbols.emplace_back(Role::AnsatzUnknown, "[" + l + "]");
    scope.names.emplace(l, label_symbols.back());
  }
  for (const auto& [name, value] : values) scope.names.emplace(name, Symbol(Role::Parameter, name));
  return scope;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::string Reference::anchor(const std::string& section) const {
  auto it = anchors.find(section);
  return it == anchors.end() ? section : it->second;
}

Scope reference_scope(const SystemDocument& doc) {
  Scope scope = make_scope(doc);
  scope.allow_functions = true;
  scope.polynomial_only = false;
  scope.add_group_parameter("eps");
  scope.add_group_parameter("s");
  scope.names.emplace("r", Symbol(Role::Independent, "r"));
  return scope;
}

Vector parse_algebra_element(std::string_view text, const std::vector<std::string>& labels,
                             const std::map<std::string, Rational>& values) {
  std::vector<Symbol> label_symbols;
  const Scope scope = algebra_scope(labels, values, label_symbols);
  Expression e = parse_expression(text, scope);
  Substitution subs;
  for (const auto& [name, value] : values) subs.emplace(Symbol(Role::Parameter, name), Expression(value));
  e = substitute(e, subs);
  Vector out(labels.size());
  for (const auto& [exps, coeff] : collect(e, label_symbols)) {
    int degree = 0;
    std::size_t at = 0;
    for (std::size_t k = 0; k < exps.size(); ++k) {
      degree += exps[k];
      if (exps[k]) at = k;
    }
    if (degree != 1 || !coeff.is_rational()) {
      throw Error("'" + std::string(text) + "' is not a rational linear combination of " + labels.front() + "..." +
                  labels.back());
    }
    out[at] = coeff.rational();
  }
  return out;
}

std::vector<TableEntry> load_optimal_table(std::string_view json_text, const std::vector<std::string>& labels) {
  const json doc = parse_json(json_text);
  std::vector<std::string> params;
  if (doc.contains("parameters")) params = strings(doc["parameters"]);
  std::vector<std::map<std::string, Rational>> instances;
  if (doc.contains("instantiations")) {
    for (const auto& inst : doc["instantiations"]) {
      std::map<std::string, Rational> values;
      for (const auto& [k, v] : inst.items()) values.emplace(k, json_rational(v));
      instances.push_back(values);
    }
  }
  std::vector<TableEntry> out;
  for (const auto& entry : doc.at("entries")) {
    const auto label = entry.at("label").get<std::string>();
    const auto gens = strings(entry.at("generators"));
    // Find the parameters the entry uses.
    std::set<std::string> used;
    for (const auto& g : gens) {
      std::map<std::string, Rational> probe;
      for (const auto& p : params) probe.emplace(p, 0);
      std::vector<Symbol> label_symbols;
      const Scope scope = algebra_scope(labels, probe, label_symbols);
      for (const auto& s : parse_expression(g, scope).symbols()) {
        if (s.role() == Role::Parameter) used.insert(s.name());
      }
    }
    if (used.empty()) {
      TableEntry t{label, {}};
      for (const auto& g : gens) t.generators.push_back(parse_algebra_element(g, labels));
      out.push_back(std::move(t));
      continue;
    }
    if (instances.empty()) throw Error("entry " + label + " has parameters but the table has no instantiations");
    for (const auto& values : instances) {
      std::string suffix;
      for (const auto& p : used) {
        if (!values.count(p)) throw Error("instantiation does not bind " + p);
        suffix += (suffix.empty() ? "" : ", ") + p + "=" + to_string(values.at(p));
      }
      TableEntry t{label + " [" + suffix + "]", {}};
      for (const auto& g : gens) t.generators.push_back(parse_algebra_element(g, labels, values));
      out.push_back(std::move(t));
    }
  }
  return out;
}

LieAlgebra load_structure_constants(std::string_view json_text) {
  const json doc = parse_json(json_text);
  const auto n = doc.at("dim").get<std::size_t>();
  if (n == 0) throw Error("dim must be positive");
  std::vector<std::string> labels;
  if (doc.contains("labels")) {
    labels = strings(doc["labels"]);
    if (labels.size() != n) throw Error("labels do not match dim");
  } else {
    for (std::size_t i = 0; i < n; ++i) labels.push_back("e" + std::to_string(i + 1));
  }
  std::vector<std::vector<Vector>> c(n, std::vector<Vector>(n, Vector(n)));
  std::vector<std::vector<bool>> given(n, std::vector<bool>(n, false));
  for (const auto& b : doc.at("brackets")) {
    const auto i = b.at("i").get<std::size_t>();
    const auto j = b.at("j").get<std::size_t>();
    if (i < 1 || i > n || j < 1 || j > n) throw Error("bracket index out of range in " + b.dump());
    Vector coeffs;
    for (const auto& v : b.at("coeffs")) coeffs.push_back(json_rational(v));
    if (coeffs.size() != n) throw Error("bracket coefficients do not match dim in " + b.dump());
    if (given[i - 1][j - 1]) throw Error("bracket given twice: " + b.dump());
    given[i - 1][j - 1] = true;
    c[i - 1][j - 1] = coeffs;
    if (!given[j - 1][i - 1]) c[j - 1][i - 1] = scale(-1, coeffs);
  }
  return LieAlgebra(labels, c);
}

Reference load_reference(std::string_view json_text, const SystemDocument& sysdoc, const std::string& base_dir) {
  const json doc = parse_json(json_text);
  const Scope scope = reference_scope(sysdoc);
  const JetSpace js = jet_space(sysdoc);
  Reference ref;
  for (const auto& [key, section] : doc.items()) {
    if (section.is_object() && section.contains("anchor")) ref.anchors.emplace(key, section["anchor"].get<std::string>());
  }

  const auto& gens = doc.at("generators");
  ref.labels = strings(gens.at("labels"));
  for (const auto& f : gens.at("fields")) ref.generators.push_back(parse_field(f.get<std::string>(), scope, js));
  if (ref.labels.size() != ref.generators.size()) throw Error("reference labels and fields differ in length");
  const auto& labels = ref.labels;

  if (doc.contains("commutators")) {
    for (const auto& row : doc["commutators"].at("rows")) {
      std::vector<Vector> r;
      for (const auto& cell : row) r.push_back(parse_algebra_element(cell.get<std::string>(), labels));
      ref.commutators.push_back(std::move(r));
    }
  }
  if (doc.contains("killing_form")) {
    const auto& rows = doc["killing_form"].at("rows");
    Matrix k(rows.size(), rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t j = 0; j < rows[i].size(); ++j) k(i, j) = json_rational(rows[i][j]);
    }
    ref.killing_form = k;
  }
  if (doc.contains("derived_series")) {
    for (const auto& term : doc["derived_series"].at("terms")) {
      std::vector<Vector> vs;
      for (const auto& e : term) vs.push_back(parse_algebra_element(e.get<std::string>(), labels));
      ref.derived_series.push_back(Subspace::span(labels.size(), vs));
    }
  }
  if (doc.contains("structure_claims")) {
    const auto& s = doc["structure_claims"];
    if (s.contains("solvable")) ref.solvable = s["solvable"].get<bool>();
    if (s.contains("semisimple")) ref.semisimple = s["semisimple"].get<bool>();
    if (s.contains("radical_is_whole")) ref.radical_is_whole = s["radical_is_whole"].get<bool>();
    for (const auto& e : s.value("abelian_ideal", json::array())) {
      ref.abelian_ideal.push_back(parse_algebra_element(e.get<std::string>(), labels));
    }
    for (const auto& e : s.value("abelian_complement", json::array())) {
      ref.abelian_complement.push_back(parse_algebra_element(e.get<std::string>(), labels));
    }
  }
  if (doc.contains("adjoint")) {
    for (const auto& m : doc["adjoint"].at("matrices")) {
      std::vector<std::vector<Expression>> rows;
      for (const auto& row : m) rows.push_back(expressions(row, scope));
      ref.adjoint_rows.push_back(std::move(rows));
    }
  }
  if (doc.contains("flows")) {
    for (const auto& row : doc["flows"].at("images")) ref.flows.push_back(expressions(row, scope));
  }
  if (doc.contains("transformed_solutions")) {
    ref.functions = strings(doc["transformed_solutions"].at("functions"));
    for (const auto& row : doc["transformed_solutions"].at("solutions")) {
      ref.transformed.push_back(expressions(row, scope));
    }
  }
  if (doc.contains("composite")) ref.composite = expressions(doc["composite"].at("solution"), scope);
  if (doc.contains("differential_invariants")) {
    ref.first_order_invariants = expressions(doc["differential_invariants"].at("first_order"), scope);
    ref.second_order_invariants = expressions(doc["differential_invariants"].at("second_order"), scope);
  }
  if (doc.contains("invariant_table")) {
    for (const auto& row : doc["invariant_table"].at("rows")) {
      Reference::InvariantRow r{row.at("generator").get<std::string>(), {}};
      for (const char* key : {"ordinary", "first_order", "second_order"}) {
        r.by_order.push_back(expressions(row.value(key, json::array()), scope));
      }
      ref.invariant_table.push_back(std::move(r));
    }
  }
  if (doc.contains("similarity")) {
    for (const auto& row : doc["similarity"].at("rows")) {
      Reference::SimilarityRow r{row.at("generator").get<std::string>(), row.value("dependent_only", false), {}};
      if (row.contains("substitution")) {
        for (const auto& z : js.base_coordinates()) {
          const auto& sub = row["substitution"];
          if (!sub.contains(z.display())) throw Error("similarity row " + r.generator + " misses " + z.display());
          r.substitution.emplace_back(z, parse_expression(sub[z.display()].get<std::string>(), scope));
        }
      }
      ref.similarity.push_back(std::move(r));
    }
  }
  if (doc.contains("optimal_table")) {
    const auto& t = doc["optimal_table"];
    std::string text;
    if (t.is_string()) {
      text = read_file((std::filesystem::path(base_dir) / t.get<std::string>()).string());
    } else {
      text = t.dump();
    }
    const json table = parse_json(text);
    if (table.contains("anchor")) ref.anchors.insert_or_assign("optimal_table", table["anchor"].get<std::string>());
    ref.optimal_table = load_optimal_table(text, labels);
  }
  return ref;
}

}  // namespace liesym
