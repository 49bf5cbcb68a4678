#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "liesym/jet.hpp"
#include "liesym/linalg.hpp"
#include "liesym/vector_field.hpp"

namespace liesym {

struct ParameterDecl {
  std::string name;
  bool positive = false;
  friend bool operator==(const ParameterDecl&, const ParameterDecl&) = default;
};

struct DependentDecl {
  std::string name;
  std::vector<std::string> args;
  friend bool operator==(const DependentDecl&, const DependentDecl&) = default;
};

struct Equation {
  Expression lhs;
  Expression rhs;
  friend bool operator==(const Equation&, const Equation&) = default;
};

/// Parsed system-definition file.
struct SystemDocument {
  std::vector<ParameterDecl> parameters;
  std::vector<std::string> independents;
  std::vector<DependentDecl> dependents;
  std::vector<Equation> equations;
  /// Leading jet coordinates, in declaration order.
  std::vector<Symbol> leads;
  std::optional<int> ansatz_degree;
  std::optional<int> invariant_order;

  friend bool operator==(const SystemDocument&, const SystemDocument&) = default;
};

/// Names visible to the expression parser.
struct Scope {
  std::map<std::string, Symbol> names;
  /// Independent variable names in axis order.
  std::vector<std::string> axes;
  std::set<std::string> dependents;
  /// An undeclared name followed by '(' is a formal function.
  bool allow_functions = false;
  /// Division only by products of parameters and constants.
  bool polynomial_only = true;

  /// Adds a group parameter usable inside exp(...).
  void add_group_parameter(const std::string& name);
};

/// Grammar, one statement per line, '#' starts a comment:
///   param <name> [> 0]
///   independent <name>, ...
///   dependent <name>(<independents>)
///   eq <expr> = <expr>
///   lead <jet-coordinate>
///   option ansatz_degree <int> | option invariant_order <int>
/// Throws ParseError with the 1-based line and column.
SystemDocument parse_system(std::string_view text);

/// Canonical text form; parse_system(print_system(d)) == d.
std::string print_system(const SystemDocument& doc);

Scope make_scope(const SystemDocument& doc);

/// Expressions use + - * / ^ with integer exponents, rational and decimal
/// literals, jets as u_xy or d(u, x, y), and exp(<rational linear form in
/// group parameters>).
Expression parse_expression(std::string_view text, const Scope& scope);

/// Either a sum of coefficient*D(z) terms or a comma list with one
/// coefficient per base coordinate.
VectorField parse_field(std::string_view text, const Scope& scope, const JetSpace& js);

/// Comma separated rationals such as "1, -2, 5/2, 0.5".
Vector parse_vector(std::string_view text);

/// Jet space over the declared variables, sized to the highest order present.
JetSpace jet_space(const SystemDocument& doc);

/// Solved form: each lead is paired with the first unpaired equation that
/// contains it and solved for it. Without leads, the highest-order jet that
/// occurs linearly is chosen for each equation.
PDESystem to_system(const SystemDocument& doc);

}  // namespace liesym
