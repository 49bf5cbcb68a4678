#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "liesym/pipeline.hpp"

namespace liesym::testing {

inline std::string read_data(const std::string& name) {
  std::ifstream in(std::string(LIESYM_DATA_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string data_dir() { return LIESYM_DATA_DIR; }

inline SystemDocument golden_document() { return parse_system(read_data("boundary_layer.sys")); }

inline PDESystem golden_system() { return to_system(golden_document()); }

inline Reference golden_reference(const SystemDocument& doc) {
  return load_reference(read_data("boundary_layer.ref.json"), doc, data_dir());
}

/// The five printed generators, built directly from coefficients so the
/// reference parser is not involved.
inline std::vector<VectorField> golden_generators(const JetSpace& js) {
  const auto z = js.base_coordinates();  // x, y, u, v, p
  const Expression x = z[0], y = z[1], u = z[2], v = z[3], p = z[4];
  return {
      VectorField(js, {1, 0, 0, 0, 0}),
      VectorField(js, {0, 1, 0, 0, 0}),
      VectorField(js, {0, 0, 0, 0, 1}),
      VectorField(js, {x, 0, u, 0, 2 * p}),
      VectorField(js, {0, y, -2 * u, -v, -4 * p}),
  };
}

/// The reference commutator table transcribed as integer structure constants, indices from 0.
inline LieAlgebra table_algebra() {
  const std::size_t n = 5;
  std::vector<std::vector<Vector>> c(n, std::vector<Vector>(n, Vector(n)));
  auto set = [&](std::size_t i, std::size_t j, std::size_t k, int value) {
    c[i][j][k] = value;
    c[j][i][k] = -value;
  };
  set(0, 3, 0, 1);
  set(1, 4, 1, 1);
  set(2, 3, 2, 2);
  set(2, 4, 2, -4);
  return LieAlgebra({"v1", "v2", "v3", "v4", "v5"}, c);
}

inline Rational random_rational(std::mt19937& rng, int range = 5, int max_den = 3) {
  std::uniform_int_distribution<int> num(-range, range);
  std::uniform_int_distribution<int> den(1, max_den);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

inline Vector random_vector(std::mt19937& rng, std::size_t n, int range = 5, int max_den = 3) {
  Vector v(n);
  for (auto& x : v) x = random_rational(rng, range, max_den);
  return v;
}

/// Random unnormalized tree over the given symbols: nested sums and
/// products of constants, symbols and small powers. Inner nodes dominate
/// above depth 0 so most cases are non-trivial.
inline Tree random_tree(std::mt19937& rng, const std::vector<Symbol>& symbols, int depth) {
  std::uniform_int_distribution<std::size_t> sym(0, symbols.size() - 1);
  std::discrete_distribution<int> shape = depth <= 0 ? std::discrete_distribution<int>{1, 3, 0, 0, 0}
                                                     : std::discrete_distribution<int>{1, 1, 3, 3, 1};
  switch (shape(rng)) {
    case 0:
      return Tree::constant(random_rational(rng, 4, 3));
    case 1:
      return Tree::symbol(symbols[sym(rng)]);
    case 2:
    case 3: {
      const bool is_sum = std::bernoulli_distribution(0.5)(rng);
      std::uniform_int_distribution<int> count(2, 3);
      std::vector<Tree> ops;
      for (int k = count(rng); k > 0; --k) ops.push_back(random_tree(rng, symbols, depth - 1));
      return is_sum ? Tree::sum(std::move(ops)) : Tree::product(std::move(ops));
    }
    default: {
      std::uniform_int_distribution<int> e(1, 3);
      return Tree::power(random_tree(rng, symbols, depth - 1), e(rng));
    }
  }
}

inline Expression random_polynomial(std::mt19937& rng, const std::vector<Symbol>& symbols, int depth = 3) {
  return normalize(random_tree(rng, symbols, depth));
}

/// Recursive prolongation, phi^{J,i} = D_i phi^J - sum_k u_{J,k} D_i xi^k,
/// computed independently of the characteristic form used by the engine.
inline std::map<Symbol, Expression> recursive_prolongation(const VectorField& v, int order, const JetSpace& js) {
  std::map<Symbol, Expression> out;
  for (std::size_t a = 0; a < js.q(); ++a) {
    std::map<MultiIndex, Expression> level{{MultiIndex(js.p(), 0), v.phi(a)}};
    out.emplace(js.dependents()[a], v.phi(a));
    for (int k = 1; k <= order; ++k) {
      std::map<MultiIndex, Expression> next;
      for (const auto& [J, phiJ] : level) {
        for (std::size_t i = 0; i < js.p(); ++i) {
          MultiIndex Ji = J;
          ++Ji[i];
          if (next.count(Ji)) continue;
          Expression e = total_derivative(phiJ, i, js);
          for (std::size_t m = 0; m < js.p(); ++m) {
            MultiIndex Jm = J;
            ++Jm[m];
            e -= Expression(js.jet(a, Jm)) * total_derivative(v.xi(m), i, js);
          }
          next.emplace(Ji, e);
          out.emplace(js.jet(a, Ji), e);
        }
      }
      level = std::move(next);
    }
  }
  return out;
}

}  // namespace liesym::testing
