#include "liesym/determining.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "liesym/errors.hpp"

namespace liesym {

namespace {

// Exponent vectors over n variables with total degree <= d, graded ascending.
std::vector<std::vector<int>> monomials_up_to(std::size_t n, int d) {
  std::vector<std::vector<int>> out;
  std::vector<int> current(n, 0);
  for (int k = 0; k <= d; ++k) {
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int remaining) {
      if (i + 1 == n) {
        current[i] = remaining;
        out.push_back(current);
        return;
      }
      for (int e = remaining; e >= 0; --e) {
        current[i] = e;
        rec(i + 1, remaining - e);
      }
    };
    rec(0, k);
  }
  return out;
}

std::string monomial_label(const std::vector<Symbol>& coords, const std::vector<int>& exps) {
  std::string out;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    for (int k = 0; k < exps[i]; ++k) out += coords[i].display();
  }
  return out.empty() ? "1" : out;
}

// Scales a linear form so its first coefficient is 1 when that coefficient is
// a single term, otherwise so its leading rational is 1.
Expression canonical_form(const Expression& eq, const std::vector<Symbol>& unknowns) {
  for (const auto& k : unknowns) {
    const auto c = diff(eq, k);
    if (c.is_zero()) continue;
    if (c.is_single_term()) return eq / c;
    return eq * Expression(Rational(1 / c.terms().front().coeff));
  }
  return eq;
}

// Coefficient of each unknown in a linear form; throws if the form is not linear homogeneous.
std::vector<Expression> linear_row(const Expression& eq, const std::vector<Symbol>& unknowns) {
  const auto parts = collect(eq, unknowns);
  std::vector<Expression> row(unknowns.size());
  for (const auto& [exps, coeff] : parts) {
    int degree = 0;
    std::size_t at = 0;
    for (std::size_t k = 0; k < exps.size(); ++k) {
      degree += exps[k];
      if (exps[k]) at = k;
    }
    if (degree != 1) throw Error("determining equation is not linear homogeneous in the ansatz unknowns");
    row[at] = coeff;
  }
  return row;
}

// Lower is simpler: rationals, then single terms, then by size.
std::pair<int, std::size_t> pivot_cost(const Expression& e) {
  if (e.is_rational()) return {0, 1};
  if (e.is_single_term()) return {1, 1};
  return {2, e.size()};
}

}  // namespace

DeterminingSystem build_determining(const PDESystem& sys, int degree) {
  if (degree < 0) throw Unsupported("ansatz degree must be non-negative");
  const auto& js = sys.jet_space();
  const auto coords = js.base_coordinates();
  const auto monos = monomials_up_to(coords.size(), degree);

  DeterminingSystem det{degree, {}, {}, VectorField::zero(js), {}, 0};
  std::vector<Expression> coeffs(coords.size());
  for (std::size_t c = 0; c < coords.size(); ++c) {
    const std::string prefix = (c < js.p() ? "xi_" : "phi_") + coords[c].display() + "_";
    for (const auto& m : monos) {
      Symbol k(Role::AnsatzUnknown, prefix + monomial_label(coords, m));
      Expression mono = 1;
      for (std::size_t i = 0; i < m.size(); ++i) mono *= Expression(coords[i]).pow(m[i]);
      coeffs[c] += Expression(k) * mono;
      det.unknowns.push_back(k);
      det.slots.emplace_back(c, m);
    }
  }
  det.generic = VectorField(js, coeffs);

  std::set<Expression> seen;
  for (const auto& residual : symmetry_residual(det.generic, sys)) {
    std::vector<Symbol> vars;
    for (const auto& s : residual.symbols()) {
      if (s.role() == Role::Independent || s.is_jet_like()) vars.push_back(s);
    }
    for (const auto& [exps, eq] : collect(residual, vars)) {
      ++det.raw_count;
      auto canon = canonical_form(eq, det.unknowns);
      if (seen.insert(canon).second) det.equations.push_back(canon);
    }
  }
  return det;
}

SymmetrySolution solve_determining(const DeterminingSystem& det, const PDESystem& sys) {
  const std::size_t n = det.unknowns.size();
  const std::size_t p = sys.jet_space().p();

  // Column order: dependent-variable coefficients first, higher monomials before
  // constants, so that pivots land there and the free unknowns are the
  // independent-variable coefficients.
  std::vector<std::size_t> order(n);
  for (std::size_t k = 0; k < n; ++k) order[k] = k;
  auto total = [](const std::vector<int>& m) {
    int d = 0;
    for (int e : m) d += e;
    return d;
  };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const bool da = det.slots[a].first >= p;
    const bool db = det.slots[b].first >= p;
    if (da != db) return da;
    if (det.slots[a].first != det.slots[b].first) return det.slots[a].first < det.slots[b].first;
    return total(det.slots[a].second) > total(det.slots[b].second);
  });

  std::vector<std::vector<Expression>> rows;
  for (const auto& eq : det.equations) {
    auto natural = linear_row(eq, det.unknowns);
    std::vector<Expression> row(n);
    for (std::size_t k = 0; k < n; ++k) row[k] = natural[order[k]];
    rows.push_back(std::move(row));
  }

  SymmetrySolution out;
  std::vector<std::size_t> pivot_cols;
  std::vector<Expression> pivot_vals;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < n && rank < rows.size(); ++c) {
    std::size_t best = rows.size();
    for (std::size_t r = rank; r < rows.size(); ++r) {
      if (rows[r][c].is_zero()) continue;
      if (best == rows.size() || pivot_cost(rows[r][c]) < pivot_cost(rows[best][c])) best = r;
    }
    if (best == rows.size()) continue;
    std::swap(rows[rank], rows[best]);
    auto& prow = rows[rank];
    Expression pv = prow[c];
    if (pv.is_single_term()) {
      for (auto& e : prow) e = e / pv;
      pv = 1;
    } else {
      out.assumptions.push_back(pv);
    }
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c].is_zero()) continue;
      const Expression a = rows[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        if (pv == Expression(1)) {
          rows[r][j] -= a * prow[j];
        } else {
          rows[r][j] = pv * rows[r][j] - a * prow[j];
        }
      }
    }
    pivot_cols.push_back(c);
    pivot_vals.push_back(pv);
    ++rank;
  }

  std::vector<bool> is_pivot(n, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < n; ++c) {
    if (!is_pivot[c]) free_cols.push_back(c);
  }
  std::sort(free_cols.begin(), free_cols.end(), [&](std::size_t a, std::size_t b) { return order[a] < order[b]; });

  const auto& js = sys.jet_space();
  const auto coords = js.base_coordinates();
  for (auto f : free_cols) {
    Expression scale = 1;
    for (const auto& pv : pivot_vals) scale *= pv;
    std::vector<Expression> natural(n);
    natural[order[f]] = scale;
    for (std::size_t k = 0; k < rank; ++k) {
      Expression others = 1;
      for (std::size_t j = 0; j < rank; ++j) {
        if (j != k) others *= pivot_vals[j];
      }
      natural[order[pivot_cols[k]]] = -rows[k][f] * others;
    }
    std::vector<Expression> coeffs(coords.size());
    for (std::size_t k = 0; k < n; ++k) {
      if (natural[k].is_zero()) continue;
      Expression mono = 1;
      for (std::size_t i = 0; i < coords.size(); ++i) mono *= Expression(coords[i]).pow(det.slots[k].second[i]);
      coeffs[det.slots[k].first] += natural[k] * mono;
    }
    VectorField g(js, coeffs);
    if (!is_symmetry(g, sys)) {
      throw Error("solved generator " + g.to_string() + " fails the symmetry condition");
    }
    out.generators.push_back(std::move(g));
  }
  return out;
}

}  // namespace liesym
