#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "liesym/errors.hpp"
#include "liesym/pipeline.hpp"

namespace fs = std::filesystem;
using namespace liesym;
using nlohmann::ordered_json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Global {
  std::string system = std::string(LIESYM_DATA_DIR) + "/boundary_layer.sys";
  std::string reference;
  int ansatz_degree = 1;
  std::string format = "text";
  std::string out;
};

struct Loaded {
  SystemDocument doc;
  std::optional<Reference> ref;
};

Loaded load(const Global& g) {
  Loaded l{parse_system(read_file(g.system)), std::nullopt};
  std::string ref_path = g.reference;
  if (ref_path.empty()) {
    // Sibling "<stem>.ref.json" next to the system file.
    fs::path p(g.system);
    const auto sibling = p.parent_path() / (p.stem().string() + ".ref.json");
    if (fs::exists(sibling)) ref_path = sibling.string();
  }
  if (!ref_path.empty() && ref_path != "none") {
    l.ref = load_reference(read_file(ref_path), l.doc, fs::path(ref_path).parent_path().string());
  }
  return l;
}

void write(const Global& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw Error("cannot write " + g.out);
  f << text;
}

std::string emit(const Global& g, const AnalysisReport& r) { return g.format == "json" ? emit_json(r) : emit_text(r); }

PipelineOptions options(const Global& g, const Loaded& l, std::set<Stage> stages) {
  PipelineOptions o;
  o.ansatz_degree = l.doc.ansatz_degree.value_or(g.ansatz_degree);
  if (l.doc.invariant_order) o.invariant_order = *l.doc.invariant_order;
  o.stages = std::move(stages);
  o.reference = l.ref ? &*l.ref : nullptr;
  return o;
}

/// The algebra of the system's basis, or the one given by structure constants.
LieAlgebra algebra(const Global& g, const std::string& constants) {
  if (!constants.empty()) return load_structure_constants(read_file(constants));
  const auto l = load(g);
  auto r = run_pipeline(l.doc, options(g, l, {Stage::Structure}));
  return *r.algebra;
}

std::string vector_json_or_text(const Global& g, const LieAlgebra& L, const NormalFormReport& nf) {
  if (g.format == "json") {
    auto vec = [](const Vector& v) {
      ordered_json a = ordered_json::array();
      for (const auto& x : v) a.push_back(to_fraction_string(x));
      return a;
    };
    ordered_json out;
    out["schema"] = 1;
    out["input"] = vec(nf.input);
    ordered_json steps = ordered_json::array();
    for (const auto& s : nf.steps) {
      steps.push_back({{"generator", L.labels()[s.generator]},
                       {"kind", s.value.kind == ParamValue::Kind::Additive ? "eps" : "exp(eps)"},
                       {"value", to_fraction_string(s.value.value)},
                       {"before", vec(s.before)},
                       {"after", vec(s.after)}});
    }
    out["steps"] = steps;
    out["sign_flipped"] = nf.sign_flipped;
    out["output"] = vec(nf.output);
    out["fingerprint"] = vec(nf.fingerprint);
    out["replay_matches"] = replay(L, nf) == nf.output;
    return out.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "normal form\n  input  " << L.format(nf.input) << "\n";
  for (const auto& s : nf.steps) {
    os << "  Ad(exp(eps " << L.labels()[s.generator] << ")) with "
       << (s.value.kind == ParamValue::Kind::Additive ? "eps = " : "exp(eps) = ") << to_string(s.value.value) << ": "
       << L.format(s.before) << " -> " << L.format(s.after) << "\n";
  }
  if (nf.sign_flipped) os << "  multiplied by -1\n";
  os << "  output " << L.format(nf.output) << "\n  fingerprint " << to_string(nf.fingerprint) << "\n"
     << "  replay " << (replay(L, nf) == nf.output ? "matches" : "DIFFERS") << "\n";
  return os.str();
}

std::string check_generator(const Global& g, const std::string& field) {
  const auto l = load(g);
  const auto sys = to_system(l.doc);
  const auto vf = parse_field(field, make_scope(l.doc), sys.jet_space());
  const auto residual = symmetry_residual(vf, sys);
  bool ok = true;
  for (const auto& e : residual) ok = ok && e.is_zero();
  if (g.format == "json") {
    ordered_json out;
    out["schema"] = 1;
    out["field"] = vf.to_string();
    ordered_json res = ordered_json::array();
    for (const auto& e : residual) res.push_back(to_string(e));
    out["residual"] = res;
    out["symmetry"] = ok;
    return out.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "generator " << vf.to_string() << "\n";
  for (std::size_t k = 0; k < residual.size(); ++k) os << "  residual " << k + 1 << ": " << to_string(residual[k]) << "\n";
  os << (ok ? "  symmetry: yes\n" : "  symmetry: no\n");
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lie point symmetry workbench"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--system", g.system, "System definition file")->capture_default_str();
  app.add_option("--reference", g.reference, "Reference values (JSON); 'none' disables the sibling default");
  app.add_option("--ansatz-degree", g.ansatz_degree, "Polynomial degree of the generator ansatz")
      ->capture_default_str()
      ->check(CLI::Range(0, 4));
  app.add_option("--report", g.format, "Output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  app.add_option("--out", g.out, "Write the report to a file");

  std::string constants;
  int order = 2;
  std::string field, vector, table;

  auto* symmetries = app.add_subcommand("symmetries", "Determining system and generators");
  auto* structure = app.add_subcommand("structure", "Commutator table, Killing form, series");
  structure->add_option("--constants", constants, "Structure constants (JSON) instead of a system");
  auto* adjoint = app.add_subcommand("adjoint", "Adjoint matrices Ad(exp(eps v_i))");
  adjoint->add_option("--constants", constants, "Structure constants (JSON) instead of a system");
  auto* flows = app.add_subcommand("flows", "One-parameter groups and transformed solutions");
  auto* invariants = app.add_subcommand("invariants", "Differential invariants and similarity forms");
  invariants->add_option("--order", order, "Highest jet order")->capture_default_str()->check(CLI::Range(0, 4));
  auto* check = app.add_subcommand("check-generator", "Symmetry residual of a vector field");
  check->add_option("--field", field, "Components 'xi1, ..., phiq' or 'c1*D(x) + ...'")->required();
  auto* normal = app.add_subcommand("normal-form", "Adjoint-orbit normal form of an algebra element");
  normal->add_option("--vector", vector, "Coordinates, comma separated rationals")->required();
  normal->add_option("--constants", constants, "Structure constants (JSON) instead of a system");
  auto* verify = app.add_subcommand("verify-optimal", "Verify a table of subalgebras");
  verify->add_option("--file", table, "Table (JSON)")->required();
  auto* report = app.add_subcommand("report", "Every stage with reference comparison");

  CLI11_PARSE(app, argc, argv);

  try {
    auto run = [&](std::set<Stage> stages) {
      const auto l = load(g);
      write(g, emit(g, run_pipeline(l.doc, options(g, l, std::move(stages)))));
    };
    if (*symmetries) {
      run({Stage::Symmetries});
    } else if (*structure || *adjoint) {
      const bool with_adjoint = static_cast<bool>(*adjoint);
      if (!constants.empty()) {
        write(g, emit(g, structure_report(load_structure_constants(read_file(constants)), with_adjoint)));
      } else {
        run(with_adjoint ? std::set<Stage>{Stage::Adjoint} : std::set<Stage>{Stage::Structure});
      }
    } else if (*flows) {
      run({Stage::Flows});
    } else if (*invariants) {
      const auto l = load(g);
      auto o = options(g, l, {Stage::Invariants});
      o.invariant_order = order;
      write(g, emit(g, run_pipeline(l.doc, o)));
    } else if (*check) {
      write(g, check_generator(g, field));
    } else if (*normal) {
      const auto L = algebra(g, constants);
      const auto a = parse_vector(vector);
      if (a.size() != L.dim()) {
        throw Error("vector has " + std::to_string(a.size()) + " coordinates, algebra has dimension " +
                    std::to_string(L.dim()));
      }
      write(g, vector_json_or_text(g, L, normal_form_1d(L, a)));
    } else if (*verify) {
      const auto l = load(g);
      auto o = options(g, l, {Stage::Optimal});
      const auto labels = l.ref ? l.ref->labels : run_pipeline(l.doc, options(g, l, {Stage::Symmetries})).labels;
      o.optimal_table = load_optimal_table(read_file(table), labels);
      write(g, emit(g, run_pipeline(l.doc, o)));
    } else if (*report) {
      run({Stage::Symmetries, Stage::Structure, Stage::Adjoint, Stage::Flows, Stage::Invariants, Stage::Optimal});
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
