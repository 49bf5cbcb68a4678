#pragma once

#include <vector>

#include "liesym/vector_field.hpp"

namespace liesym {

/// Linearized symmetry condition for a polynomial ansatz: every coefficient
/// of the infinitesimal generator is a polynomial of bounded degree in the
/// base coordinates with unknown constant coefficients.
struct DeterminingSystem {
  int degree = 1;
  /// One AnsatzUnknown symbol per (coordinate, monomial) pair.
  std::vector<Symbol> unknowns;
  /// Base coordinate index and monomial exponents for each unknown.
  std::vector<std::pair<std::size_t, std::vector<int>>> slots;
  /// Field whose coefficients are linear in the unknowns.
  VectorField generic;
  /// Coefficient equations as linear forms over the unknowns, deduplicated.
  std::vector<Expression> equations;
  /// Count before deduplication.
  std::size_t raw_count = 0;
};

DeterminingSystem build_determining(const PDESystem& sys, int degree = 1);

struct SymmetrySolution {
  /// Basis of the solution space, each verified to satisfy the symmetry condition.
  std::vector<VectorField> generators;
  /// Non-monomial pivots that were assumed nonzero during elimination.
  std::vector<Expression> assumptions;
};

/// Exact elimination over Laurent polynomials in the system parameters. Every
/// returned generator is re-checked against the original system; a nonzero
/// residual throws Error.
SymmetrySolution solve_determining(const DeterminingSystem& det, const PDESystem& sys);

inline SymmetrySolution compute_symmetries(const PDESystem& sys, int degree = 1) {
  return solve_determining(build_determining(sys, degree), sys);
}

}  // namespace liesym
