#pragma once

#include <map>
#include <string>
#include <vector>

#include "liesym/jet.hpp"

namespace liesym {

/// Point vector field sum xi_i d/dx_i + sum phi_a d/du^a on the base space.
class VectorField {
 public:
  /// Coefficients ordered as JetSpace::base_coordinates(). They may depend on
  /// base coordinates, parameters and group parameters, never on derivatives.
  VectorField(const JetSpace& js, std::vector<Expression> coefficients);
  static VectorField zero(const JetSpace& js);
  /// Unit field d/dz for one base coordinate.
  static VectorField coordinate(const JetSpace& js, std::size_t index);

  const std::vector<Symbol>& coordinates() const { return coords_; }
  const std::vector<Expression>& coefficients() const { return coeffs_; }
  const Expression& coefficient(std::size_t i) const { return coeffs_.at(i); }
  /// Coefficient of d/dz, or zero when z is not a base coordinate.
  Expression coefficient_of(const Symbol& z) const;
  std::size_t p() const { return p_; }
  const Expression& xi(std::size_t i) const { return coeffs_.at(i); }
  const Expression& phi(std::size_t a) const { return coeffs_.at(p_ + a); }

  bool is_zero() const;
  /// Same coordinates, new coefficients.
  VectorField with_coefficients(std::vector<Expression> coefficients) const;
  /// Derivation action on a function of the base coordinates.
  Expression apply(const Expression& f) const;

  VectorField operator+(const VectorField& other) const;
  VectorField operator-(const VectorField& other) const;
  friend VectorField operator*(const Expression& s, const VectorField& v);
  friend bool operator==(const VectorField& a, const VectorField& b) { return a.coeffs_ == b.coeffs_ && a.coords_ == b.coords_; }

  /// `x*D(x) + u*D(u)` style.
  std::string to_string(PrintStyle style = PrintStyle::Display) const;

 private:
  VectorField(std::vector<Symbol> coords, std::vector<Expression> coeffs, std::size_t p)
      : coords_(std::move(coords)), coeffs_(std::move(coeffs)), p_(p) {}

  std::vector<Symbol> coords_;
  std::vector<Expression> coeffs_;
  std::size_t p_;
};

/// Lie bracket [v, w] acting as derivations: coefficient-wise v(w_z) - w(v_z).
VectorField bracket(const VectorField& v, const VectorField& w);

/// Characteristic Q^a = phi_a - sum_i xi_i u^a_{x_i}, one per dependent variable.
std::vector<Expression> characteristic(const VectorField& vf, const JetSpace& js);

/// Prolongation of a vector field to the jet space.
class ProlongedField {
 public:
  ProlongedField(VectorField base, int order, std::map<Symbol, Expression> jet_coefficients)
      : base_(std::move(base)), order_(order), jets_(std::move(jet_coefficients)) {}

  const VectorField& base() const { return base_; }
  int order() const { return order_; }
  /// phi^J_a for every jet coordinate with 0 <= |J| <= order.
  const std::map<Symbol, Expression>& jet_coefficients() const { return jets_; }
  const Expression& coefficient(const Symbol& jet) const;

  /// pr v applied to an expression on the jet space. Throws OrderLimit when e
  /// holds a derivative beyond order().
  Expression apply(const Expression& e) const;

 private:
  VectorField base_;
  int order_;
  std::map<Symbol, Expression> jets_;
};

/// phi^J_a = D_J Q^a + sum_i xi_i u^a_{J,i}.
ProlongedField prolong(const VectorField& vf, int order, const JetSpace& js);

/// pr v (equation) reduced modulo the system, one entry per equation.
std::vector<Expression> symmetry_residual(const VectorField& vf, const PDESystem& sys);
bool is_symmetry(const VectorField& vf, const PDESystem& sys);

}  // namespace liesym
