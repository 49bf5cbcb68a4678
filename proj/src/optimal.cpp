#include "liesym/optimal.hpp"

#include <set>

#include "liesym/errors.hpp"

namespace liesym {

namespace {

bool is_nilpotent_action(const ExpMatrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      for (const auto& [key, coeff] : m(r, c).terms()) {
        if (key.second != 0) return false;
      }
    }
  }
  return true;
}

// Exponent of e^{k eps} on each diagonal entry, when the action is diagonal.
std::optional<std::vector<Rational>> diagonal_rates(const ExpMatrix& m) {
  std::vector<Rational> rates;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (r != c && !m(r, c).is_zero()) return std::nullopt;
    }
    const auto& terms = m(r, r).terms();
    if (terms.size() != 1) return std::nullopt;
    const auto& [key, coeff] = *terms.begin();
    if (key.first != 0 || coeff != 1) return std::nullopt;
    rates.push_back(key.second);
  }
  return rates;
}

// t > 0 with t^rate * |value| = 1, when rational.
std::optional<Rational> unit_scale(const Rational& value, const Rational& rate) {
  const Rational target = 1 / abs(value);  // t^rate = target
  const Integer p = rate.get_num();
  const Integer q = rate.get_den();
  const Rational base = p > 0 ? target : Rational(1 / target);
  auto root = exact_root(base, Integer(abs(p)).get_ui());
  if (!root) return std::nullopt;
  Rational t = 1;
  for (unsigned long j = 0; j < q.get_ui(); ++j) t *= *root;
  return t;
}

}  // namespace

Vector adjoint_apply(const LieAlgebra& L, std::size_t i, const ParamValue& value, const Vector& a) {
  auto m = ad_exp(L, i).evaluate(value);
  if (!m) throw Unsupported("adjoint action of " + L.labels().at(i) + " is not rational at this parameter value");
  return *m * a;
}

ExpVector adjoint_apply(const LieAlgebra& L, std::size_t i, const Vector& a) {
  ExpVector v;
  for (const auto& x : a) v.emplace_back(x);
  return ad_exp(L, i).apply(v);
}

Vector invariant_components(const LieAlgebra& L, const Vector& a) {
  const auto whole = Subspace::whole(L.dim());
  const auto ann = bracket_space(L, whole, whole).annihilator();
  Vector out;
  for (const auto& w : ann.basis()) out.push_back(dot(w, a));
  return out;
}

Vector fingerprint(const LieAlgebra& L, const Vector& a) {
  auto v = invariant_components(L, a);
  for (const auto& x : v) {
    if (x != 0) return scale(1 / x, v);
  }
  return v;
}

NormalFormReport normal_form_1d(const LieAlgebra& L, const Vector& a) {
  if (is_zero(a)) throw DegenerateInput("normal form of the zero vector");
  const std::size_t n = L.dim();
  NormalFormReport report{a, a, {}, false, fingerprint(L, a)};
  Vector cur = a;
  std::vector<ExpMatrix> actions;
  for (std::size_t i = 0; i < n; ++i) actions.push_back(ad_exp(L, i));

  auto record = [&](std::size_t i, const ParamValue& value, const Vector& after) {
    report.steps.push_back(OrbitStep{i, value, cur, after});
    cur = after;
  };

  // 1. Nilpotent directions.
  std::set<std::size_t> zeros;
  for (std::size_t k = 0; k < n; ++k) {
    if (cur[k] == 0) {
      zeros.insert(k);
      continue;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!is_nilpotent_action(actions[i])) continue;
      ExpVector v;
      for (const auto& x : cur) v.emplace_back(x);
      const auto image = actions[i].apply(v);
      Rational slope = 0;
      bool affine = true;
      for (const auto& [key, coeff] : image[k].terms()) {
        if (key.first > 1) affine = false;
        if (key.first == 1) slope = coeff;
      }
      if (!affine || slope == 0) continue;
      const Rational eps = -image[k].value_at_zero() / slope;
      const auto after = adjoint_apply(L, i, ParamValue::additive(eps), cur);
      bool keeps = after[k] == 0;
      for (auto z : zeros) keeps = keeps && after[z] == 0;
      if (!keeps) continue;
      record(i, ParamValue::additive(eps), after);
      zeros.insert(k);
      break;
    }
  }

  // 2. Diagonal directions; a direction may not move an earlier nonzero component.
  std::vector<std::optional<std::vector<Rational>>> rates;
  for (const auto& m : actions) rates.push_back(diagonal_rates(m));
  for (std::size_t k = 0; k < n; ++k) {
    if (cur[k] == 0 || abs(cur[k]) == 1) continue;
    for (std::size_t i = 0; i < n; ++i) {
      if (!rates[i] || (*rates[i])[k] == 0) continue;
      bool disturbs = false;
      for (std::size_t j = 0; j < k; ++j) disturbs = disturbs || (cur[j] != 0 && (*rates[i])[j] != 0);
      if (disturbs) continue;
      auto t = unit_scale(cur[k], (*rates[i])[k]);
      if (!t) continue;
      record(i, ParamValue::multiplicative(*t), adjoint_apply(L, i, ParamValue::multiplicative(*t), cur));
      break;
    }
  }

  // 3. Sign.
  for (const auto& x : cur) {
    if (x == 0) continue;
    if (x < 0) {
      cur = scale(-1, cur);
      report.sign_flipped = true;
    }
    break;
  }
  report.output = cur;
  return report;
}

Vector replay(const LieAlgebra& L, const NormalFormReport& report) {
  Vector cur = report.input;
  for (const auto& step : report.steps) cur = adjoint_apply(L, step.generator, step.value, cur);
  if (report.sign_flipped) cur = scale(-1, cur);
  return cur;
}

bool OptimalTableReport::all_closed() const {
  for (const auto& e : entries) {
    if (!e.closed) return false;
  }
  return true;
}

OptimalTableReport verify_optimal_table(const LieAlgebra& L, const std::vector<TableEntry>& entries) {
  const std::size_t n = L.dim();
  const auto whole = Subspace::whole(n);
  const auto derived = bracket_space(L, whole, whole);
  const std::size_t quotient_dim = n - derived.dim();

  OptimalTableReport report;
  for (const auto& entry : entries) {
    const auto S = Subspace::span(n, entry.generators);
    EntryCheck check;
    check.label = entry.label;
    check.dim = S.dim();
    check.failing_pair = closure_failure(L, entry.generators);
    check.closed = !check.failing_pair;
    if (check.failing_pair) {
      check.failing_bracket =
          L.bracket(entry.generators[check.failing_pair->first], entry.generators[check.failing_pair->second]);
    }
    check.abelian = is_abelian(L, S);
    check.ideal = is_ideal(L, S);
    check.derived_intersection = S.intersect(derived).dim();
    std::vector<Vector> images;
    for (const auto& b : S.basis()) images.push_back(invariant_components(L, b));
    check.quotient_image = Subspace::span(quotient_dim, images);
    report.entries.push_back(std::move(check));
  }

  for (std::size_t i = 0; i < report.entries.size(); ++i) {
    for (std::size_t j = i + 1; j < report.entries.size(); ++j) {
      const auto& a = report.entries[i];
      const auto& b = report.entries[j];
      if (a.dim == b.dim && a.abelian == b.abelian && a.ideal == b.ideal &&
          a.derived_intersection == b.derived_intersection && a.quotient_image == b.quotient_image) {
        report.not_separated.emplace_back(i, j);
      }
    }
  }

  for (std::size_t b = 0; b < n; ++b) {
    const auto image = Subspace::span(quotient_dim, {invariant_components(L, unit_vector(n, b))});
    const bool in_derived = derived.contains(unit_vector(n, b));
    bool covered = false;
    for (const auto& e : report.entries) {
      if (e.dim != 1) continue;
      covered = covered || (e.quotient_image == image && (e.derived_intersection == 1) == in_derived);
    }
    if (!covered) report.uncovered_basis_vectors.push_back(b);
  }
  return report;
}

}  // namespace liesym
