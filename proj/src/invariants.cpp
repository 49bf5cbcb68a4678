#include "liesym/invariants.hpp"

#include <algorithm>

#include "liesym/errors.hpp"

namespace liesym {

namespace {

// Coefficient c equals w * z for rational w (w = 0 when c = 0).
std::optional<Rational> scaling_weight(const Expression& c, const Symbol& z) {
  if (c.is_zero()) return Rational(0);
  const auto ratio = c / Expression(z);
  if (ratio.is_rational()) return ratio.rational();
  return std::nullopt;
}

void axpy(std::vector<Integer>& y, const Integer& a, const std::vector<Integer>& x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

// Floor division for arbitrary signs.
Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

std::vector<std::vector<Integer>> hermite_rows(std::vector<std::vector<Integer>> b, std::size_t cols) {
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < b.size(); ++col) {
    while (true) {
      std::size_t best = b.size();
      for (std::size_t i = row; i < b.size(); ++i) {
        if (b[i][col] != 0 && (best == b.size() || abs(b[i][col]) < abs(b[best][col]))) best = i;
      }
      if (best == b.size()) break;
      std::swap(b[row], b[best]);
      bool done = true;
      for (std::size_t i = row + 1; i < b.size(); ++i) {
        if (b[i][col] == 0) continue;
        axpy(b[i], -floor_div(b[i][col], b[row][col]), b[row]);
        if (b[i][col] != 0) done = false;
      }
      if (done) break;
    }
    if (row == b.size() || b[row][col] == 0) continue;
    if (b[row][col] < 0) {
      for (auto& e : b[row]) e = -e;
    }
    for (std::size_t i = 0; i < row; ++i) axpy(b[i], -floor_div(b[i][col], b[row][col]), b[row]);
    ++row;
  }
  b.resize(row);
  return b;
}

}  // namespace

std::vector<Symbol> WeightSystem::free_coordinates() const {
  std::vector<Symbol> out;
  for (std::size_t i = 0; i < coordinates.size(); ++i) {
    if (!translated[i]) out.push_back(coordinates[i]);
  }
  return out;
}

std::vector<std::vector<Rational>> WeightSystem::free_weights() const {
  std::vector<std::vector<Rational>> out;
  for (const auto& row : weights) {
    std::vector<Rational> r;
    for (std::size_t i = 0; i < coordinates.size(); ++i) {
      if (!translated[i]) r.push_back(row[i]);
    }
    out.push_back(std::move(r));
  }
  return out;
}

GeneratorShape classify_generator(const VectorField& g) {
  if (g.is_zero()) throw UnsupportedGeneratorShape("zero generator has no invariants to reduce by");
  bool translation = true;
  bool scaling = true;
  for (std::size_t i = 0; i < g.coordinates().size(); ++i) {
    const auto& c = g.coefficient(i);
    if (!c.is_rational()) translation = false;
    if (!scaling_weight(c, g.coordinates()[i])) scaling = false;
  }
  if (translation) return GeneratorShape::Translation;
  if (scaling) return GeneratorShape::Scaling;
  for (std::size_t i = 0; i < g.coordinates().size(); ++i) {
    const auto& c = g.coefficient(i);
    if (!c.is_rational() && !scaling_weight(c, g.coordinates()[i])) {
      throw UnsupportedGeneratorShape("coefficient " + to_string(c) + " of D(" + g.coordinates()[i].display() +
                                      ") is neither constant nor a multiple of its coordinate");
    }
  }
  throw UnsupportedGeneratorShape("generator " + g.to_string() + " mixes translations and scalings");
}

WeightSystem weight_system(const std::vector<VectorField>& gens, const JetSpace& js, int order) {
  if (order < 0) throw Unsupported("invariant order must be non-negative");
  if (order + 1 > js.order_limit()) throw OrderLimit("invariant order " + std::to_string(order) + " is too high");
  WeightSystem ws;
  ws.order = order;
  ws.coordinates = js.base_coordinates();
  for (const auto& s : js.derivative_coordinates(order)) ws.coordinates.push_back(s);
  ws.translated.assign(ws.coordinates.size(), false);
  const std::size_t p = js.p();

  for (std::size_t gi = 0; gi < gens.size(); ++gi) {
    const auto& g = gens[gi];
    if (classify_generator(g) == GeneratorShape::Translation) {
      for (std::size_t i = 0; i < g.coordinates().size(); ++i) {
        if (!g.coefficient(i).is_zero()) ws.translated[i] = true;
      }
      continue;
    }
    std::vector<Rational> w(ws.coordinates.size());
    for (std::size_t i = 0; i < g.coordinates().size(); ++i) w[i] = *scaling_weight(g.coefficient(i), g.coordinates()[i]);
    const auto pr = order > 0 ? std::optional<ProlongedField>(prolong(g, order, js)) : std::nullopt;
    for (std::size_t c = g.coordinates().size(); c < ws.coordinates.size(); ++c) {
      const auto ref = *js.locate(ws.coordinates[c]);
      Rational weight = w[p + ref.dependent];
      for (std::size_t i = 0; i < p; ++i) weight -= ref.index[i] * w[i];
      w[c] = weight;
      if (pr->coefficient(ws.coordinates[c]) != Expression(weight) * Expression(ws.coordinates[c])) {
        throw Error("prolonged coefficient of " + ws.coordinates[c].display() + " disagrees with weight additivity");
      }
    }
    ws.weights.push_back(std::move(w));
    ws.scaling_generators.push_back(gi);
  }
  return ws;
}

std::vector<std::vector<Integer>> integer_kernel(const std::vector<std::vector<Integer>>& input, std::size_t cols) {
  auto m = input;
  std::vector<std::vector<Integer>> u(cols, std::vector<Integer>(cols));
  for (std::size_t i = 0; i < cols; ++i) u[i][i] = 1;
  // Unimodular column operations; column c of m and u is m[.][c] and u[c].
  auto column_axpy = [&](std::size_t dst, const Integer& a, std::size_t src) {
    for (auto& row : m) row[dst] += a * row[src];
    axpy(u[dst], a, u[src]);
  };
  auto column_swap = [&](std::size_t a, std::size_t b) {
    for (auto& row : m) std::swap(row[a], row[b]);
    std::swap(u[a], u[b]);
  };
  std::size_t k = 0;
  for (std::size_t r = 0; r < m.size() && k < cols; ++r) {
    while (true) {
      std::size_t best = cols;
      for (std::size_t c = k; c < cols; ++c) {
        if (m[r][c] != 0 && (best == cols || abs(m[r][c]) < abs(m[r][best]))) best = c;
      }
      if (best == cols) break;
      column_swap(k, best);
      bool done = true;
      for (std::size_t c = k + 1; c < cols; ++c) {
        if (m[r][c] == 0) continue;
        column_axpy(c, -floor_div(m[r][c], m[r][k]), k);
        if (m[r][c] != 0) done = false;
      }
      if (done) {
        ++k;
        break;
      }
    }
  }
  std::vector<std::vector<Integer>> kernel(u.begin() + static_cast<std::ptrdiff_t>(k), u.end());
  return hermite_rows(std::move(kernel), cols);
}

bool in_lattice(const std::vector<std::vector<Integer>>& basis, const std::vector<Integer>& v) {
  auto r = v;
  for (const auto& b : basis) {
    std::size_t pc = 0;
    while (pc < b.size() && b[pc] == 0) ++pc;
    if (pc == b.size()) continue;
    if (r[pc] % b[pc] != 0) return false;
    const Integer c = r[pc] / b[pc];
    axpy(r, -c, b);
  }
  return std::all_of(r.begin(), r.end(), [](const Integer& x) { return x == 0; });
}

std::vector<MonomialInvariant> monomial_invariants(const WeightSystem& ws) {
  const auto weights = ws.free_weights();
  const std::size_t cols = ws.free_coordinates().size();
  std::vector<std::vector<Integer>> m;
  for (const auto& row : weights) {
    const Integer scale = lcm_of_denominators(row);
    std::vector<Integer> r;
    for (const auto& w : row) r.emplace_back(w * scale);
    m.push_back(std::move(r));
  }
  return integer_kernel(m, cols);
}

Expression monomial_expression(const std::vector<Symbol>& coords, const MonomialInvariant& exps) {
  Expression out = 1;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (exps.at(i) != 0) out *= Expression(coords[i]).pow(static_cast<int>(exps[i].get_si()));
  }
  return out;
}

std::optional<MonomialInvariant> exponent_vector(const Expression& e, const std::vector<Symbol>& coords) {
  if (!e.is_single_term()) return std::nullopt;
  const auto& mono = e.terms().front().mono;
  if (!mono.rates.empty()) return std::nullopt;
  MonomialInvariant out(coords.size());
  for (const auto& [atom, power] : mono.powers) {
    if (!atom.is_symbol()) return std::nullopt;
    auto it = std::find(coords.begin(), coords.end(), atom.symbol());
    if (it == coords.end()) return std::nullopt;
    out[static_cast<std::size_t>(it - coords.begin())] = power;
  }
  return out;
}

bool verify_invariant(const Expression& e, const std::vector<VectorField>& gens, const JetSpace& js) {
  const int order = std::max(1, jet_order(e));
  for (const auto& g : gens) {
    if (!prolong(g, order, js).apply(e).is_zero()) return false;
  }
  return true;
}

SimilarityForm similarity_form(const VectorField& g, const JetSpace& js, const std::vector<std::string>& names) {
  const std::size_t p = js.p();
  const std::size_t q = js.q();
  if (names.size() != q) throw Unsupported("need one function name per dependent variable");
  const auto& coords = g.coordinates();
  const Symbol s(Role::GroupParameter, "s");
  std::vector<Symbol> r_symbols;
  auto r_name = [&](std::size_t idx) { return p == 2 ? std::string("r") : "r" + std::to_string(idx + 1); };

  SimilarityForm out{SimilarityForm::Kind::Translation, {}, s, {}, {}};
  const auto shape = classify_generator(g);

  // Pick the first independent variable the generator moves.
  std::optional<std::size_t> k;
  std::vector<Rational> c(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) {
    c[i] = shape == GeneratorShape::Translation ? g.coefficient(i).rational() : *scaling_weight(g.coefficient(i), coords[i]);
    if (i < p && c[i] != 0 && !k) k = i;
  }
  if (!k) {
    out.kind = SimilarityForm::Kind::DependentOnly;
    out.note = "acts on dependent variables only; no independent variable is reduced";
    for (std::size_t a = 0; a < q; ++a) {
      if (c[p + a] == 0) continue;
      out.note += "; " + coords[p + a].display() + (shape == GeneratorShape::Translation ? " is translated" : " is scaled");
    }
    return out;
  }

  std::vector<Expression> args;
  for (std::size_t i = 0, idx = 0; i < p; ++i) {
    if (i == *k) continue;
    r_symbols.emplace_back(Role::Independent, r_name(idx++));
    args.emplace_back(r_symbols.back());
  }
  if (shape == GeneratorShape::Translation) {
    out.kind = SimilarityForm::Kind::Translation;
    const Expression sv = Expression(c[*k]) * Expression(s);
    for (std::size_t i = 0, idx = 0; i < p; ++i) {
      if (i == *k) {
        out.substitution.emplace_back(coords[i], sv);
      } else {
        out.substitution.emplace_back(coords[i], Expression(r_symbols[idx++]) + Expression(c[i]) * Expression(s));
      }
    }
    for (std::size_t a = 0; a < q; ++a) {
      out.substitution.emplace_back(coords[p + a],
                                    Expression::function(names[a], args) + Expression(c[p + a]) * Expression(s));
    }
  } else {
    out.kind = SimilarityForm::Kind::Scaling;
    for (std::size_t i = 0, idx = 0; i < p; ++i) {
      if (i == *k) {
        out.substitution.emplace_back(coords[i], Expression::param_exp(s, c[i]));
      } else {
        out.substitution.emplace_back(coords[i], Expression(r_symbols[idx++]) * Expression::param_exp(s, c[i]));
      }
    }
    for (std::size_t a = 0; a < q; ++a) {
      out.substitution.emplace_back(coords[p + a], Expression::function(names[a], args) * Expression::param_exp(s, c[p + a]));
    }
  }
  out.invariants = r_symbols;
  return out;
}

}  // namespace liesym
