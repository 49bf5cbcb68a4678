#pragma once

#include <optional>
#include <string>
#include <vector>

#include "liesym/flows.hpp"

namespace liesym {

/// Image of a under Ad(exp(eps e_i)) at a concrete parameter value. Throws
/// Unsupported when the value makes some matrix entry irrational.
Vector adjoint_apply(const LieAlgebra& L, std::size_t i, const ParamValue& value, const Vector& a);
/// Symbolic image with exponential-polynomial components.
ExpVector adjoint_apply(const LieAlgebra& L, std::size_t i, const Vector& a);

struct OrbitStep {
  std::size_t generator;
  ParamValue value;
  Vector before;
  Vector after;
};

/// Components of a modulo [g,g], in the coordinates of the annihilator of
/// [g,g]. Adjoint actions preserve them exactly.
Vector invariant_components(const LieAlgebra& L, const Vector& a);

/// invariant_components scaled so the first nonzero entry is 1: invariant
/// under adjoint actions and under rescaling of a.
Vector fingerprint(const LieAlgebra& L, const Vector& a);

struct NormalFormReport {
  Vector input;
  Vector output;
  std::vector<OrbitStep> steps;
  /// Output was multiplied by -1 after the adjoint steps.
  bool sign_flipped = false;
  Vector fingerprint;
};

/// Greedy orbit simplification of a nonzero vector:
///  1. nilpotent directions zero each component with an affine, nonzero slope;
///  2. diagonal directions rescale remaining components to +-1 when the
///     required group element is rational and earlier +-1 entries stay fixed;
///  3. the first nonzero component is made positive.
NormalFormReport normal_form_1d(const LieAlgebra& L, const Vector& a);

/// Re-applies the recorded steps (and sign flip) to the input.
Vector replay(const LieAlgebra& L, const NormalFormReport& report);

struct TableEntry {
  std::string label;
  std::vector<Vector> generators;
};

struct EntryCheck {
  std::string label;
  std::size_t dim = 0;
  bool closed = false;
  /// First non-closing pair of generators and their bracket, when not closed.
  std::optional<std::pair<std::size_t, std::size_t>> failing_pair;
  Vector failing_bracket;
  bool abelian = false;
  bool ideal = false;
  std::size_t derived_intersection = 0;
  /// Image in g/[g,g], as a subspace of the invariant-component coordinates.
  Subspace quotient_image;
};

struct OptimalTableReport {
  std::vector<EntryCheck> entries;
  /// Pairs of entries (indices) with identical invariants, so they are not
  /// shown to be non-conjugate.
  std::vector<std::pair<std::size_t, std::size_t>> not_separated;
  /// Basis vectors whose 1-dimensional span matches no 1-dimensional entry.
  std::vector<std::size_t> uncovered_basis_vectors;
  bool all_closed() const;
};

OptimalTableReport verify_optimal_table(const LieAlgebra& L, const std::vector<TableEntry>& entries);

}  // namespace liesym
