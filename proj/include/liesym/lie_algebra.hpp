#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "liesym/linalg.hpp"
#include "liesym/vector_field.hpp"

namespace liesym {

/// Coordinates of w in the span of `basis` over the rationals, if it lies there.
/// Coefficient expressions are compared monomial by monomial.
std::optional<Vector> decompose(const std::vector<VectorField>& basis, const VectorField& w);

/// Rank over Q of a list of fields.
std::size_t field_rank(const std::vector<VectorField>& fields);

/// Combination sum a_i v_i.
VectorField combine(const std::vector<VectorField>& basis, const Vector& a);

/// Finite-dimensional Lie algebra over Q given by structure constants.
class LieAlgebra {
 public:
  /// constants[i][j] holds the coordinates of [e_i, e_j]. Throws Error when
  /// antisymmetry or the Jacobi identity fails, or when a realization does not
  /// reproduce the constants.
  LieAlgebra(std::vector<std::string> labels, std::vector<std::vector<Vector>> constants,
             std::vector<VectorField> realization = {});

  std::size_t dim() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const Vector& constant(std::size_t i, std::size_t j) const { return c_.at(i).at(j); }
  /// C^k_ij.
  const Rational& constant(std::size_t i, std::size_t j, std::size_t k) const { return c_.at(i).at(j).at(k); }
  const std::vector<VectorField>& realization() const { return realization_; }

  Vector bracket(const Vector& a, const Vector& b) const;
  /// Matrix of ad(a): column j holds the coordinates of [a, e_j].
  Matrix ad(const Vector& a) const;
  Matrix ad(std::size_t i) const { return ad(unit_vector(dim(), i)); }

  /// Display of a coordinate vector, e.g. "v1 + 5/2*v4".
  std::string format(const Vector& a) const;

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<Vector>> c_;
  std::vector<VectorField> realization_;
};

/// Structure constants of the span of `basis`. Throws NotSubalgebra naming the
/// first pair whose bracket leaves the span.
LieAlgebra structure_constants(const std::vector<VectorField>& basis, std::vector<std::string> labels = {});

Matrix killing_form(const LieAlgebra& L);

/// Span of all [a, b] with a in S and b in T.
Subspace bracket_space(const LieAlgebra& L, const Subspace& S, const Subspace& T);

/// g, [g,g], ... until the chain stabilizes (the stable term is included once).
std::vector<Subspace> derived_series(const LieAlgebra& L);
/// g, [g,g], [g,[g,g]], ... until the chain stabilizes.
std::vector<Subspace> lower_central_series(const LieAlgebra& L);
bool is_solvable(const LieAlgebra& L);
bool is_nilpotent(const LieAlgebra& L);
/// Nondegenerate Killing form.
bool is_semisimple(const LieAlgebra& L);
Subspace center(const LieAlgebra& L);
/// Killing-orthogonal complement of [g,g].
Subspace radical(const LieAlgebra& L);

bool is_ideal(const LieAlgebra& L, const Subspace& S);
bool is_abelian(const LieAlgebra& L, const Subspace& S);
/// {y : [y, S] in S}.
Subspace normalizer(const LieAlgebra& L, const Subspace& S);
/// Indices into `generators` of the first pair whose bracket leaves their span.
std::optional<std::pair<std::size_t, std::size_t>> closure_failure(const LieAlgebra& L,
                                                                   const std::vector<Vector>& generators);
inline bool subalgebra_check(const LieAlgebra& L, const Subspace& S) { return !closure_failure(L, S.basis()); }

}  // namespace liesym
