// Acceptance checks against the golden boundary-layer data. Each criterion
// prints one PASS/FAIL line; values marked as derived are recomputed here by
// an oracle that does not share code paths with the engine routine under test.
#include <cstdlib>
#include <algorithm>
#include <functional>
#include <iostream>
#include <random>

#include "liesym/errors.hpp"
#include "liesym/optimal.hpp"
#include "support.hpp"

using namespace liesym;
namespace lt = liesym::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
  void info(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

struct Golden {
  SystemDocument doc = lt::golden_document();
  PDESystem sys = to_system(doc);
  Reference ref = lt::golden_reference(doc);
  Symbol eps{Role::GroupParameter, "eps"};

  const AnalysisReport& report() const {
    static const AnalysisReport r = [this] {
      PipelineOptions o;
      o.reference = &ref;
      return run_pipeline(doc, o);
    }();
    return r;
  }
};

const Golden& golden() {
  static const Golden g;
  return g;
}

bool has_note(const AnalysisReport& r, const std::string& anchor, const std::string& fragment = {}) {
  for (const auto& n : r.notes) {
    if (n.anchor == anchor && n.message.find(fragment) != std::string::npos) return true;
  }
  return false;
}

/// pr v applied to e through the recursive prolongation oracle.
Expression oracle_apply(const VectorField& v, int order, const JetSpace& js, const Expression& e) {
  Expression out;
  for (std::size_t i = 0; i < js.p(); ++i) out += v.xi(i) * diff(e, js.independents()[i]);
  for (const auto& [jet, coeff] : lt::recursive_prolongation(v, order, js)) out += coeff * diff(e, jet);
  return out;
}

/// Field bracket straight from the coefficient formula.
VectorField oracle_bracket(const VectorField& a, const VectorField& b) {
  std::vector<Expression> c;
  const auto& z = a.coordinates();
  for (std::size_t k = 0; k < z.size(); ++k) {
    Expression s;
    for (std::size_t j = 0; j < z.size(); ++j) {
      s += a.coefficient(j) * diff(b.coefficient(k), z[j]) - b.coefficient(j) * diff(a.coefficient(k), z[j]);
    }
    c.push_back(s);
  }
  return a.with_coefficients(c);
}

LieAlgebra printed_algebra() {
  const auto& g = golden();
  const std::size_t n = g.ref.labels.size();
  std::vector<std::vector<Vector>> c(n, std::vector<Vector>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) c[i][j] = g.ref.commutators.at(i).at(j);
  }
  return LieAlgebra(g.ref.labels, c);
}

Outcome criterion1() {
  Outcome o;
  const auto& g = golden();
  const auto sol = compute_symmetries(g.sys, 1);
  const auto& js = g.sys.jet_space();
  const int order = g.sys.equation_order();
  o.info("nullspace dim " + std::to_string(sol.generators.size()));
  for (std::size_t i = 0; i < g.ref.generators.size(); ++i) {
    const auto& v = g.ref.generators[i];
    o.require(decompose(sol.generators, v).has_value(), g.ref.labels[i] + " outside the solved span");
    bool zero = true;
    for (const auto& eq : g.sys.equations()) zero = zero && reduce_mod(g.sys, oracle_apply(v, order, js, eq)).is_zero();
    o.require(zero, g.ref.labels[i] + " residual nonzero under the recursive prolongation");
    o.require(is_symmetry(v, g.sys), g.ref.labels[i] + " engine residual nonzero");
  }
  if (o.pass) o.info("v1..v5 in span, residual 0 by two routes");
  return o;
}

Outcome criterion2() {
  Outcome o;
  const auto& g = golden();
  const auto L = structure_constants(g.ref.generators, g.ref.labels);
  const std::size_t n = L.dim();
  int entries = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto& printed = g.ref.commutators.at(i).at(j);
      o.require(L.constant(i, j) == printed, "[" + L.labels()[i] + ", " + L.labels()[j] + "] differs from the table");
      const auto direct = oracle_bracket(g.ref.generators[i], g.ref.generators[j]);
      o.require(direct == combine(g.ref.generators, printed),
                "direct bracket of " + L.labels()[i] + ", " + L.labels()[j] + " is not the table entry");
      ++entries;
    }
  }
  if (o.pass) o.info(std::to_string(entries) + " entries equal, direct bracket agrees");
  return o;
}

Outcome criterion3() {
  Outcome o;
  const auto& g = golden();
  const auto L = structure_constants(g.ref.generators, g.ref.labels);
  const auto K = killing_form(L);
  o.require(g.ref.killing_form && K == *g.ref.killing_form, "Killing form differs from the printed matrix");
  // Oracle: trace(ad_i ad_j) from the printed constants, summed by hand.
  const auto P = printed_algebra();
  const std::size_t n = P.dim();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Rational t = 0;
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) t += P.constant(i, b, a) * P.constant(j, a, b);
      }
      o.require(t == K(i, j), "trace oracle differs at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
    }
  }
  o.require(determinant(K) == 0, "determinant nonzero");
  o.require(!is_semisimple(L), "reported semisimple");
  o.require(is_solvable(L), "reported not solvable");
  if (o.pass) o.info("K45 block [[5,-8],[-8,17]], det 0, solvable, not semisimple");
  return o;
}

Outcome criterion4() {
  Outcome o;
  const auto& g = golden();
  const auto P = printed_algebra();
  const std::size_t n = P.dim();
  // Oracle: brute-force spans of brackets from the table constants.
  std::vector<Vector> first;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) first.push_back(P.constant(i, j));
  }
  const auto g1 = Subspace::span(n, first);
  std::vector<Vector> second;
  for (const auto& a : g1.basis()) {
    for (const auto& b : g1.basis()) second.push_back(P.bracket(a, b));
  }
  const auto g2 = Subspace::span(n, second);
  const auto want1 = Subspace::span(n, {unit_vector(n, 0), unit_vector(n, 1), unit_vector(n, 2)});
  o.require(g1 == want1 && g2.dim() == 0, "oracle chain is not <v1,v2,v3> > 0");
  const auto L = structure_constants(g.ref.generators, g.ref.labels);
  const auto ds = derived_series(L);
  o.require(ds.size() == 3 && ds[1] == g1 && ds[2] == g2, "engine derived series differs from the oracle");
  const auto r = g.report();
  o.require(has_note(r, g.ref.anchor("derived_series")), "no discrepancy note against the printed chain");
  if (o.pass) o.info("g(1) = <v1, v2, v3>, g(2) = 0; note emitted against the printed chain");
  return o;
}

/// Truncated Lie series sum_k (-eps)^k/k! ad^k when ad is nilpotent, or
/// exp(-eps lambda) when ad is diagonal.
std::optional<ExpMatrix> lie_series_oracle(const Matrix& ad) {
  const std::size_t n = ad.rows();
  ExpMatrix out(n, n);
  bool diagonal = true;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) diagonal = diagonal && (i == j || ad(i, j) == 0);
  }
  if (diagonal) {
    for (std::size_t i = 0; i < n; ++i) out(i, i) = ExpPolynomial::exp(-ad(i, i));
    return out;
  }
  Matrix power = Matrix::identity(n);
  Rational factorial = 1;
  for (int k = 0; k <= static_cast<int>(n); ++k) {
    if (power.is_zero()) return out;
    if (k > 0) factorial *= k;
    const Rational sign = k % 2 ? -1 : 1;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (power(i, j) != 0) out(i, j) += ExpPolynomial::term(sign * power(i, j) / factorial, k, 0);
      }
    }
    power = ad * power;
  }
  return power.is_zero() ? std::optional<ExpMatrix>(out) : std::nullopt;
}

Outcome criterion5() {
  Outcome o;
  const auto& g = golden();
  const auto L = structure_constants(g.ref.generators, g.ref.labels);
  const std::size_t n = L.dim();
  std::vector<std::string> m4_diffs;
  for (std::size_t i = 0; i < n; ++i) {
    const auto M = ad_exp(L, i);
    const auto oracle = lie_series_oracle(printed_algebra().ad(i));
    o.require(oracle.has_value() && *oracle == M, "Lie series oracle differs for M" + std::to_string(i + 1));
    for (std::size_t row = 0; row < n; ++row) {
      for (std::size_t col = 0; col < n; ++col) {
        const auto printed = ExpPolynomial::from_expression(g.ref.adjoint_rows.at(i).at(row).at(col), g.eps);
        if (printed == M(col, row)) continue;
        const auto where = "(" + std::to_string(row + 1) + "," + std::to_string(col + 1) + ")";
        if (i == 3) {
          m4_diffs.push_back(where);
        } else {
          o.require(false, "M" + std::to_string(i + 1) + " differs at " + where);
        }
      }
    }
  }
  o.require(m4_diffs == std::vector<std::string>{"(3,4)"}, "M4 differs outside the (3,4) entry");
  const auto r = g.report();
  o.require(has_note(r, g.ref.anchor("adjoint"), "(3,4)"), "M4 (3,4) entry not flagged");
  if (o.pass) o.info("M1, M2, M3, M5 exact; M4 exact except printed (3,4), flagged");
  return o;
}

Outcome criterion6() {
  Outcome o;
  const auto& g = golden();
  const Symbol delta(Role::GroupParameter, "delta");
  std::mt19937 rng(606);
  for (std::size_t i = 0; i < g.ref.generators.size(); ++i) {
    const auto& v = g.ref.generators[i];
    const auto F = flow(v, g.eps);
    const auto label = "G" + std::to_string(i + 1);
    o.require(F.images == g.ref.flows.at(i), label + " differs from the printed row");
    // Oracle: the images solve dF/deps = v(F) with F(0) = identity.
    Substitution at;
    for (std::size_t k = 0; k < F.coords.size(); ++k) at.emplace(F.coords[k], F.images[k]);
    for (std::size_t k = 0; k < F.coords.size(); ++k) {
      o.require(diff(F.images[k], g.eps) == substitute(v.coefficient(k), at), label + " does not solve its ODE");
    }
    const auto Fd = flow(v, delta);
    const auto composed = compose(F, Fd);
    o.require(composed.images == reparametrize(F, g.eps, Expression(g.eps) + Expression(delta)).images,
              label + " symbolic group law fails");
    bool exponential = false;
    for (const auto& e : F.images) {
      for (const auto& t : e.terms()) exponential = exponential || !t.mono.rates.empty();
    }
    for (int trial = 0; trial < 3; ++trial) {
      // Additive values for polynomial flows; e^eps values for exponential ones.
      Rational a = lt::random_rational(rng, 5, 4), b = lt::random_rational(rng, 5, 4);
      ParamValue va = ParamValue::additive(a), vb = ParamValue::additive(b), vab = ParamValue::additive(a + b);
      if (exponential) {
        a = abs(a) + 1;
        b = abs(b) + 1;
        va = ParamValue::multiplicative(a);
        vb = ParamValue::multiplicative(b);
        vab = ParamValue::multiplicative(a * b);
      }
      for (std::size_t k = 0; k < F.coords.size(); ++k) {
        const auto lhs = evaluate_parameter(evaluate_parameter(composed.images[k], g.eps, va), delta, vb);
        const auto rhs = evaluate_parameter(F.images[k], g.eps, vab);
        o.require(lhs == rhs, label + " group law fails at a rational pair");
      }
    }
  }
  if (o.pass) o.info("G1..G5 exact, ODE oracle, group law symbolic and at 3 rational pairs each");
  return o;
}

Outcome criterion7() {
  Outcome o;
  const auto& g = golden();
  const auto names = g.ref.functions;
  std::vector<std::string> exact, reversed;
  for (std::size_t i = 0; i < g.ref.generators.size(); ++i) {
    const auto F = flow(g.ref.generators[i], g.eps);
    const auto label = "G" + std::to_string(i + 1);
    const auto& printed = g.ref.transformed.at(i);
    if (transform_solution(F, names) == printed) {
      exact.push_back(label);
      continue;
    }
    // The same one-parameter family traversed with eps -> -eps.
    const auto back = reparametrize(F, g.eps, -Expression(g.eps));
    if (transform_solution(back, names) == printed) {
      reversed.push_back(label);
    } else {
      o.require(false, label + " is not in the transformed family");
    }
  }
  std::string e, r;
  for (const auto& s : exact) e += (e.empty() ? "" : ",") + s;
  for (const auto& s : reversed) r += (r.empty() ? "" : ",") + s;
  o.info("exact " + e + (r.empty() ? "" : "; equal after eps -> -eps " + r));
  const auto rep = g.report();
  if (!reversed.empty()) {
    o.require(has_note(rep, g.ref.anchor("transformed_solutions")), "orientation difference not noted");
  }
  o.require(rep.composite.has_value() && !rep.composite_transformed.empty(), "composite not computed");
  const bool composite_equal = rep.composite_transformed == g.ref.composite;
  o.require(composite_equal || has_note(rep, g.ref.anchor("composite")), "composite mismatch not reported");
  o.info(composite_equal ? "composite equal" : "composite diff reported");
  return o;
}

Outcome criterion8() {
  Outcome o;
  const auto& g = golden();
  const auto& js = g.sys.jet_space();
  const auto& gens = g.ref.generators;
  auto oracle_invariant = [&](const Expression& e, const std::vector<VectorField>& vs) {
    for (const auto& v : vs) {
      if (!oracle_apply(v, 2, js, e).is_zero()) return false;
    }
    return true;
  };
  o.require(g.ref.first_order_invariants.size() == 6, "expected six first-order arguments");
  o.require(g.ref.second_order_invariants.size() == 15, "expected fifteen second-order arguments");
  for (const auto* list : {&g.ref.first_order_invariants, &g.ref.second_order_invariants}) {
    for (const auto& e : *list) {
      o.require(verify_invariant(e, gens, js), to_string(e) + " fails verify_invariant");
      o.require(oracle_invariant(e, gens), to_string(e) + " fails the prolongation oracle");
    }
  }
  // Table rows for v4 and v5, entry by entry.
  int checked = 0;
  std::vector<std::string> failing;
  for (const auto& row : g.ref.invariant_table) {
    if (row.generator != "v4" && row.generator != "v5") continue;
    const auto idx = static_cast<std::size_t>(row.generator[1] - '1');
    for (const auto& entries : row.by_order) {
      for (const auto& e : entries) {
        ++checked;
        const bool ok = verify_invariant(e, {gens[idx]}, js);
        o.require(ok == oracle_invariant(e, {gens[idx]}), "engine and oracle disagree on " + to_string(e));
        if (!ok) failing.push_back(row.generator + ": " + to_string(e));
      }
    }
  }
  std::string f;
  for (const auto& s : failing) f += (f.empty() ? "" : ", ") + s;
  o.info("6 + 15 arguments invariant; table rows v4/v5: " + std::to_string(checked) + " entries, " +
         std::to_string(failing.size()) + " not invariant (" + f + ")");

  // Brute force over exponents in [-4, 4] at order 1: every zero-weight
  // monomial in the free coordinates lies in the computed lattice.
  const auto ws = weight_system(gens, js, 1);
  const auto free = ws.free_coordinates();
  const auto lattice = monomial_invariants(ws);
  const std::size_t m = free.size();
  // Weights from the prolonged scaling generators, not from the weight table.
  std::vector<std::vector<long>> w;
  for (std::size_t gi = 3; gi < 5; ++gi) {
    std::vector<long> row;
    const auto pr = lt::recursive_prolongation(gens[gi], 1, js);
    for (const auto& z : free) {
      const auto it = pr.find(z);
      const Expression c = it == pr.end() ? gens[gi].coefficient_of(z) : it->second;
      const auto q = (c / Expression(z)).rational();
      if (!is_integer(q)) throw Error("non-integer weight on " + z.display());
      row.push_back(q.get_num().get_si());
    }
    w.push_back(row);
  }
  // Lattice membership via the rational coordinates of v in the lattice basis.
  const std::size_t rank = lattice.size();
  Matrix B(m, rank);
  for (std::size_t r = 0; r < rank; ++r) {
    for (std::size_t c = 0; c < m; ++c) B(c, r) = Rational(lattice[r][c]);
  }
  o.require(rank == 6 && rank + w.size() == m, "lattice rank " + std::to_string(rank) + " over " + std::to_string(m) + " coordinates");
  for (const auto& b : lattice) {
    for (const auto& row : w) {
      Integer s = 0;
      for (std::size_t k = 0; k < m; ++k) s += b[k] * row[k];
      o.require(s == 0, "lattice vector with nonzero weight");
    }
  }
  std::vector<int> e(m, -4);
  long zero_weight = 0, outside = 0;
  while (true) {
    long s0 = 0, s1 = 0;
    for (std::size_t k = 0; k < m; ++k) {
      s0 += w[0][k] * e[k];
      s1 += w[1][k] * e[k];
    }
    if (s0 == 0 && s1 == 0) {
      ++zero_weight;
      Vector v(m);
      for (std::size_t k = 0; k < m; ++k) v[k] = e[k];
      const auto coeffs = solve(B, v);
      bool inside = coeffs.has_value();
      if (inside) {
        for (const auto& c : *coeffs) inside = inside && c.get_den() == 1;
      }
      if (!inside) ++outside;
    }
    std::size_t k = 0;
    while (k < m && e[k] == 4) e[k++] = -4;
    if (k == m) break;
    ++e[k];
  }
  o.require(outside == 0, std::to_string(outside) + " zero-weight monomials outside the lattice");
  o.info("brute force: " + std::to_string(zero_weight) + " zero-weight exponent vectors over " + std::to_string(m) +
         " coordinates, all in the lattice");
  return o;
}

Outcome criterion9() {
  Outcome o;
  const auto& g = golden();
  const auto L = structure_constants(g.ref.generators, g.ref.labels);
  const auto report = verify_optimal_table(L, g.ref.optimal_table);
  std::size_t closed = 0;
  for (const auto& e : report.entries) closed += e.closed;
  // Oracle: brackets of each entry's generators stay in its span.
  const auto P = printed_algebra();
  for (std::size_t k = 0; k < g.ref.optimal_table.size(); ++k) {
    const auto& gens = g.ref.optimal_table[k].generators;
    const auto S = Subspace::span(L.dim(), gens);
    bool oracle_closed = true;
    for (const auto& a : gens) {
      for (const auto& b : gens) oracle_closed = oracle_closed && S.contains(P.bracket(a, b));
    }
    o.require(oracle_closed == report.entries[k].closed, "oracle disagrees on " + report.entries[k].label);
    if (!report.entries[k].closed) o.require(false, report.entries[k].label + " is not a subalgebra");
  }
  o.info(std::to_string(closed) + "/" + std::to_string(report.entries.size()) + " entries closed");

  // Fingerprint invariance of (a4, a5) under random adjoint steps.
  std::mt19937 rng(909);
  std::uniform_int_distribution<std::size_t> pick(0, L.dim() - 1);
  int steps = 0;
  auto a = lt::random_vector(rng, L.dim(), 4, 3);
  a[3] = 2;
  a[4] = -3;
  const auto fp = fingerprint(L, a);
  const auto components = invariant_components(L, a);
  for (; steps < 100; ++steps) {
    const auto i = pick(rng);
    // Nilpotent directions take any rational eps; diagonal ones a rational e^eps.
    const bool diagonal = i >= 3;
    const auto value = diagonal ? ParamValue::multiplicative(abs(lt::random_rational(rng, 3, 2)) + Rational(1, 2))
                                : ParamValue::additive(lt::random_rational(rng, 3, 2));
    a = adjoint_apply(L, i, value, a);
    if (fingerprint(L, a) != fp || invariant_components(L, a) != components) break;
  }
  o.require(steps == 100, "fingerprint changed after " + std::to_string(steps) + " adjoint steps");
  o.info("fingerprint stable over " + std::to_string(steps) + " adjoint steps");
  const bool flags_v4 = std::find(report.uncovered_basis_vectors.begin(), report.uncovered_basis_vectors.end(), 3) !=
                        report.uncovered_basis_vectors.end();
  o.require(flags_v4, "coverage checker does not flag v4");
  if (flags_v4) o.info("coverage flag raised for v4");
  return o;
}

Outcome criterion10() {
  Outcome o;
  constexpr int kCases = 100;
  std::mt19937 rng(1010);
  const Symbol x(Role::Independent, "x"), y(Role::Independent, "y");
  int bad = 0;
  for (int n = 0; n < kCases; ++n) {
    const auto t = lt::random_tree(rng, {x, y}, 4);
    const auto e = normalize(t);
    bad += normalize(e.tree()) != e;
  }
  o.require(bad == 0, "normalize not idempotent");
  bad = 0;
  for (int n = 0; n < kCases; ++n) {
    const auto a = lt::random_polynomial(rng, {x, y}), b = lt::random_polynomial(rng, {x, y});
    const Expression c = lt::random_rational(rng);
    bad += diff(a * b, x) != diff(a, x) * b + a * diff(b, x);
    bad += diff(a + c * b, y) != diff(a, y) + c * diff(b, y);
  }
  o.require(bad == 0, "Leibniz or linearity fails");
  bad = 0;
  const JetSpace js({"x", "y"}, {"u", "v"}, 2, 3);
  std::vector<Symbol> jets = js.base_coordinates();
  for (const auto& s : js.derivative_coordinates(2)) jets.push_back(s);
  for (int n = 0; n < kCases; ++n) {
    const auto e = lt::random_polynomial(rng, jets);
    bad += total_derivative(total_derivative(e, 0, js), 1, js) != total_derivative(total_derivative(e, 1, js), 0, js);
  }
  o.require(bad == 0, "D_x D_y != D_y D_x");
  bad = 0;
  const auto T = lt::table_algebra();
  for (int n = 0; n < kCases; ++n) {
    Matrix P(5, 5);
    do {
      for (std::size_t i = 0; i < 5; ++i) {
        for (std::size_t j = 0; j < 5; ++j) P(i, j) = lt::random_rational(rng, 2, 2);
      }
    } while (determinant(P) == 0);
    const auto Pinv = *inverse(P);
    std::vector<std::vector<Vector>> c(5, std::vector<Vector>(5));
    for (std::size_t i = 0; i < 5; ++i) {
      for (std::size_t j = 0; j < 5; ++j) c[i][j] = Pinv * T.bracket(P.column(i), P.column(j));
    }
    try {
      const LieAlgebra probe(T.labels(), c);
    } catch (const Error&) {
      ++bad;
    }
  }
  o.require(bad == 0, "valid constants rejected by the Jacobi check");
  bad = 0;
  const auto& g = golden();
  const auto gens = compute_symmetries(g.sys, 1).generators;
  for (int n = 0; n < kCases; ++n) {
    const auto a = combine(gens, lt::random_vector(rng, gens.size(), 3, 2));
    const auto b = combine(gens, lt::random_vector(rng, gens.size(), 3, 2));
    bad += !decompose(gens, oracle_bracket(a, b)).has_value();
  }
  o.require(bad == 0, "solved space not closed under brackets");
  bad = 0;
  for (int n = 0; n < kCases; ++n) {
    auto a = lt::random_vector(rng, 5, 4, 3);
    if (is_zero(a)) a[0] = 1;
    const auto nf = normal_form_1d(T, a);
    bad += replay(T, nf) != nf.output;
    bad += normal_form_1d(T, nf.output).output != nf.output;
  }
  o.require(bad == 0, "normal form replay or idempotence fails");
  if (o.pass) o.info("six suites x 100 cases, exact");
  return o;
}

const std::vector<std::pair<std::string, std::function<Outcome()>>> kCriteria{
    {"generator recovery", criterion1},
    {"commutator table", criterion2},
    {"Killing form and predicates", criterion3},
    {"derived series", criterion4},
    {"adjoint matrices", criterion5},
    {"flows and group law", criterion6},
    {"transformed solutions and composite", criterion7},
    {"differential invariants", criterion8},
    {"optimal-system verification", criterion9},
    {"property suites", criterion10},
};

}  // namespace

int main(int argc, char** argv) {
  std::size_t only = 0;
  if (argc > 1) only = static_cast<std::size_t>(std::atoi(argv[1]));
  bool all = true;
  for (std::size_t k = 0; k < kCriteria.size(); ++k) {
    if (only && only != k + 1) continue;
    Outcome o;
    try {
      o = kCriteria[k].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("error: ") + e.what();
    }
    all = all && o.pass;
    std::cout << "criterion " << k + 1 << " " << (o.pass ? "PASS" : "FAIL") << "  " << kCriteria[k].first << ": "
              << o.detail << "\n";
  }
  return all ? 0 : 1;
}
