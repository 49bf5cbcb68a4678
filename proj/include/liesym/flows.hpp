#pragma once

#include <string>
#include <vector>

#include "liesym/exp_polynomial.hpp"
#include "liesym/lie_algebra.hpp"

namespace liesym {

/// Ad(exp(eps a)) = exp(-eps ad a); column j holds the image of e_j, so
/// Ad(exp(eps e_i)) e_j = e_j - eps [e_i, e_j] + eps^2/2 [e_i, [e_i, e_j]] - ...
ExpMatrix ad_exp(const LieAlgebra& L, const Vector& a);
inline ExpMatrix ad_exp(const LieAlgebra& L, std::size_t i) { return ad_exp(L, unit_vector(L.dim(), i)); }

using ExpVector = std::vector<ExpPolynomial>;

/// Bracket of coordinate vectors with exponential-polynomial entries.
ExpVector bracket(const LieAlgebra& L, const ExpVector& a, const ExpVector& b);

/// Point transformation z -> F(z) of the base coordinates, with its inverse.
/// Images are expressions in the base coordinates and group parameters.
struct FlowMap {
  std::vector<Symbol> coords;
  std::size_t p = 0;  // leading coordinates that are independent variables
  std::vector<Expression> images;
  std::vector<Expression> inverse_images;

  std::vector<Symbol> parameters() const;
  /// Image of a coordinate vector given as expressions.
  std::vector<Expression> apply(const std::vector<Expression>& point) const;
  friend bool operator==(const FlowMap& a, const FlowMap& b) = default;
};

FlowMap identity_flow(const std::vector<Symbol>& coords, std::size_t p);

/// Solves dz/deps = A z + b for an affine field as exp(eps A) z + (int_0^eps exp(s A) ds) b.
/// Throws Unsupported for non-affine or non-rational coefficients.
FlowMap flow(const VectorField& vf, const Symbol& eps);

/// Affine part of a field: coefficient i = sum_j A(i, j) z_j + b(i).
std::pair<Matrix, Vector> affine_parts(const VectorField& vf);

/// f after g: z -> f(g(z)).
FlowMap compose(const FlowMap& f, const FlowMap& g);
FlowMap inverse(const FlowMap& f);

/// Replaces one group parameter by an expression in group parameters.
FlowMap reparametrize(const FlowMap& f, const Symbol& eps, const Expression& value);

/// How a point transformation acts on the graph of a solution u = f(x).
///  Pushforward: the graph is moved by F, new u at F(x, f(x)).
///  Pullback: new u(x) = F^{-1}_u(F_x(x), f(F_x(x))), the inverse image.
enum class SolutionOrientation { Pullback, Pushforward };

/// New solution expressions, one per dependent variable, in terms of formal
/// functions `names` of the old solution. Requires the independent-variable
/// images to be free of dependent variables.
std::vector<Expression> transform_solution(const FlowMap& f, const std::vector<std::string>& names,
                                           SolutionOrientation orientation = SolutionOrientation::Pullback);

}  // namespace liesym
