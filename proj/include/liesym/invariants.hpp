#pragma once

#include <string>
#include <vector>

#include "liesym/vector_field.hpp"

namespace liesym {

/// Weights of translation/scaling generators on base and jet coordinates.
struct WeightSystem {
  /// Base coordinates followed by jet coordinates of order 1..order.
  std::vector<Symbol> coordinates;
  /// True where some translation generator moves the coordinate.
  std::vector<bool> translated;
  /// One row per scaling generator: weight of each coordinate.
  std::vector<std::vector<Rational>> weights;
  /// Index into the generator list of each weight row.
  std::vector<std::size_t> scaling_generators;
  int order = 0;

  /// Coordinates not masked by a translation.
  std::vector<Symbol> free_coordinates() const;
  /// Weight rows restricted to free_coordinates().
  std::vector<std::vector<Rational>> free_weights() const;
};

enum class GeneratorShape { Translation, Scaling };

/// Throws UnsupportedGeneratorShape naming the offending coefficient.
GeneratorShape classify_generator(const VectorField& g);

/// Jet weights follow w(u_J) = w(u) - sum_i J_i w(x_i); each is cross-checked
/// against the prolonged generator.
WeightSystem weight_system(const std::vector<VectorField>& gens, const JetSpace& js, int order);

/// Integer exponent vector over WeightSystem::free_coordinates().
using MonomialInvariant = std::vector<Integer>;

/// Basis (Hermite normal form, rows) of the lattice of integer exponent
/// vectors with zero weight under every scaling generator.
std::vector<MonomialInvariant> monomial_invariants(const WeightSystem& ws);

/// Integer kernel basis of an integer matrix, in Hermite normal form.
std::vector<std::vector<Integer>> integer_kernel(const std::vector<std::vector<Integer>>& m, std::size_t cols);

/// True if v is an integer combination of the rows of an HNF basis.
bool in_lattice(const std::vector<std::vector<Integer>>& hnf_basis, const std::vector<Integer>& v);

Expression monomial_expression(const std::vector<Symbol>& coords, const MonomialInvariant& exps);

/// Exponent vector of a single-term expression over `coords`, if it is a
/// monomial in those coordinates only (constant factor ignored).
std::optional<MonomialInvariant> exponent_vector(const Expression& e, const std::vector<Symbol>& coords);

/// True iff the prolongation of every generator annihilates e.
bool verify_invariant(const Expression& e, const std::vector<VectorField>& gens, const JetSpace& js);

/// Change of variables reducing by one generator.
struct SimilarityForm {
  enum class Kind { Translation, Scaling, DependentOnly };
  Kind kind;
  /// Invariant independent coordinates of the reduced problem.
  std::vector<Symbol> invariants;
  /// The coordinate moved by the group.
  Symbol moving;
  /// Old base coordinate -> expression in the new variables.
  std::vector<std::pair<Symbol, Expression>> substitution;
  std::string note;
};

/// For a translation or scaling generator. `names` gives one function name per dependent variable.
SimilarityForm similarity_form(const VectorField& g, const JetSpace& js, const std::vector<std::string>& names);

}  // namespace liesym
