#pragma once

#include <optional>
#include <string>
#include <vector>

#include "liesym/expression.hpp"

namespace liesym {

using MultiIndex = std::vector<int>;

/// (dependent index, multi-index) locating a jet coordinate.
struct JetRef {
  std::size_t dependent;
  MultiIndex index;
};

/// Independent variables x_1..x_p, dependent variables u^1..u^q and jet
/// coordinates up to `max_order`; coordinates up to `order_limit` may be
/// generated on demand (prolongation needs a few orders beyond the system).
class JetSpace {
 public:
  JetSpace(std::vector<std::string> independents, std::vector<std::string> dependents, int max_order,
           int extra_orders = 2);

  std::size_t p() const { return independents_.size(); }
  std::size_t q() const { return dependents_.size(); }
  int max_order() const { return max_order_; }
  int order_limit() const { return order_limit_; }

  const std::vector<Symbol>& independents() const { return independents_; }
  const std::vector<Symbol>& dependents() const { return dependents_; }
  const std::vector<std::string>& independent_names() const { return axis_names_; }
  /// Independents followed by dependents.
  std::vector<Symbol> base_coordinates() const;

  /// Throws OrderLimit beyond order_limit().
  Symbol jet(std::size_t dependent, const MultiIndex& index) const;
  std::optional<JetRef> locate(const Symbol& s) const;
  std::optional<std::size_t> independent_index(const Symbol& s) const;

  /// Multi-indices of exact order k in graded order (u_xx, u_xy, u_yy, ...).
  std::vector<MultiIndex> multi_indices(int order) const;
  /// Jet coordinates with 1 <= |J| <= order, grouped by order then dependent.
  std::vector<Symbol> derivative_coordinates(int order) const;

  bool operator==(const JetSpace& other) const;

 private:
  std::vector<std::string> axis_names_;
  std::vector<Symbol> independents_;
  std::vector<Symbol> dependents_;
  int max_order_;
  int order_limit_;
};

/// Total derivative D_i: the partial derivative in x_i plus the chain terms
/// u^a_{J,i} * d/du^a_J over every jet coordinate present.
Expression total_derivative(const Expression& e, std::size_t axis, const JetSpace& js);

/// Applies D_J (one total derivative per count in the multi-index).
Expression total_derivative(const Expression& e, const MultiIndex& index, const JetSpace& js);

struct SolvedRule {
  Symbol lead;
  Expression rhs;
};

/// A PDE system with a solved form used for reduction on solutions.
class PDESystem {
 public:
  /// Validates that every rule's right side reduces free of principal coordinates
  /// and that every equation reduces to zero.
  PDESystem(JetSpace js, std::vector<Expression> equations, std::vector<SolvedRule> rules,
            std::vector<Symbol> parameters = {});

  const JetSpace& jet_space() const { return js_; }
  const std::vector<Expression>& equations() const { return equations_; }
  const std::vector<SolvedRule>& rules() const { return rules_; }
  const std::vector<Symbol>& parameters() const { return parameters_; }
  /// Highest jet order occurring in the equations.
  int equation_order() const;

  /// True if s is a leading coordinate or a derivative of one.
  bool is_principal(const Symbol& s) const;

 private:
  JetSpace js_;
  std::vector<Expression> equations_;
  std::vector<SolvedRule> rules_;
  std::vector<Symbol> parameters_;
};

/// Replaces leading coordinates and their total-derivative consequences until
/// none remain. Throws IllPosedSolvedForm when no fixpoint is reached.
Expression reduce_mod(const PDESystem& sys, const Expression& e);

/// Highest jet order of any coordinate in e (0 if none).
int jet_order(const Expression& e);

}  // namespace liesym
