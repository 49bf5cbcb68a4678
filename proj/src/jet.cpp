#include "liesym/jet.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "liesym/errors.hpp"

namespace liesym {

JetSpace::JetSpace(std::vector<std::string> independents, std::vector<std::string> dependents, int max_order,
                   int extra_orders)
    : axis_names_(std::move(independents)), max_order_(max_order), order_limit_(max_order + extra_orders) {
  if (axis_names_.empty() || dependents.empty() || max_order < 1) {
    throw Unsupported("jet space needs p >= 1, q >= 1 and order >= 1");
  }
  for (const auto& name : axis_names_) independents_.emplace_back(Role::Independent, name);
  const MultiIndex zero(axis_names_.size(), 0);
  for (const auto& name : dependents) dependents_.push_back(Symbol::jet(name, zero, axis_names_));
}

std::vector<Symbol> JetSpace::base_coordinates() const {
  auto out = independents_;
  out.insert(out.end(), dependents_.begin(), dependents_.end());
  return out;
}

Symbol JetSpace::jet(std::size_t dependent, const MultiIndex& index) const {
  const int order = std::accumulate(index.begin(), index.end(), 0);
  if (order > order_limit_) {
    throw OrderLimit("jet order " + std::to_string(order) + " exceeds limit " + std::to_string(order_limit_));
  }
  return Symbol::jet(dependents_.at(dependent).name(), index, axis_names_);
}

std::optional<JetRef> JetSpace::locate(const Symbol& s) const {
  if (!s.is_jet_like() || s.axes() != axis_names_) return std::nullopt;
  for (std::size_t a = 0; a < dependents_.size(); ++a) {
    if (dependents_[a].name() == s.name()) return JetRef{a, s.orders()};
  }
  return std::nullopt;
}

std::optional<std::size_t> JetSpace::independent_index(const Symbol& s) const {
  for (std::size_t i = 0; i < independents_.size(); ++i) {
    if (independents_[i] == s) return i;
  }
  return std::nullopt;
}

std::vector<MultiIndex> JetSpace::multi_indices(int order) const {
  std::vector<MultiIndex> out;
  MultiIndex current(p(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t axis, int remaining) {
    if (axis + 1 == p()) {
      current[axis] = remaining;
      out.push_back(current);
      return;
    }
    for (int k = remaining; k >= 0; --k) {
      current[axis] = k;
      rec(axis + 1, remaining - k);
    }
  };
  rec(0, order);
  return out;
}

std::vector<Symbol> JetSpace::derivative_coordinates(int order) const {
  std::vector<Symbol> out;
  for (int k = 1; k <= order; ++k) {
    for (std::size_t a = 0; a < q(); ++a) {
      for (const auto& idx : multi_indices(k)) out.push_back(jet(a, idx));
    }
  }
  return out;
}

bool JetSpace::operator==(const JetSpace& other) const {
  return axis_names_ == other.axis_names_ && dependents_ == other.dependents_ && max_order_ == other.max_order_;
}

Expression total_derivative(const Expression& e, std::size_t axis, const JetSpace& js) {
  Expression result = diff(e, js.independents().at(axis));
  for (const auto& s : e.symbols()) {
    auto ref = js.locate(s);
    if (!ref) continue;
    auto index = ref->index;
    index[axis] += 1;
    const Symbol next = js.jet(ref->dependent, index);
    result += Expression(next) * diff(e, s);
  }
  return result;
}

Expression total_derivative(const Expression& e, const MultiIndex& index, const JetSpace& js) {
  Expression result = e;
  for (std::size_t axis = 0; axis < index.size(); ++axis) {
    for (int k = 0; k < index[axis]; ++k) result = total_derivative(result, axis, js);
  }
  return result;
}

int jet_order(const Expression& e) {
  int order = 0;
  for (const auto& s : e.symbols()) {
    if (s.is_jet_like()) order = std::max(order, s.order());
  }
  return order;
}

namespace {

bool divides(const MultiIndex& lead, const MultiIndex& index) {
  for (std::size_t i = 0; i < lead.size(); ++i) {
    if (lead[i] > index[i]) return false;
  }
  return true;
}

// Index of the first rule whose lead divides s, if any.
std::optional<std::size_t> matching_rule(const std::vector<SolvedRule>& rules, const Symbol& s) {
  if (!s.is_jet_like()) return std::nullopt;
  for (std::size_t r = 0; r < rules.size(); ++r) {
    const auto& lead = rules[r].lead;
    if (lead.name() == s.name() && lead.axes() == s.axes() && divides(lead.orders(), s.orders())) return r;
  }
  return std::nullopt;
}

Expression reduce_with(const JetSpace& js, const std::vector<SolvedRule>& rules, const Expression& e) {
  constexpr int kMaxPasses = 64;
  std::map<Symbol, Expression> cache;
  Expression current = e;
  for (int pass = 0; pass < kMaxPasses; ++pass) {
    Substitution subs;
    for (const auto& s : current.symbols()) {
      auto r = matching_rule(rules, s);
      if (!r) continue;
      auto it = cache.find(s);
      if (it == cache.end()) {
        MultiIndex rest = s.orders();
        const auto& lead = rules[*r].lead.orders();
        for (std::size_t i = 0; i < rest.size(); ++i) rest[i] -= lead[i];
        it = cache.emplace(s, total_derivative(rules[*r].rhs, rest, js)).first;
      }
      subs.emplace(s, it->second);
    }
    if (subs.empty()) return current;
    current = substitute(current, subs);
  }
  throw IllPosedSolvedForm("reduction did not terminate after " + std::to_string(kMaxPasses) + " passes");
}

}  // namespace

PDESystem::PDESystem(JetSpace js, std::vector<Expression> equations, std::vector<SolvedRule> rules,
                     std::vector<Symbol> parameters)
    : js_(std::move(js)), equations_(std::move(equations)), rules_(std::move(rules)), parameters_(std::move(parameters)) {
  for (const auto& rule : rules_) {
    if (!js_.locate(rule.lead) || rule.lead.order() == 0) {
      throw IllPosedSolvedForm("leading coordinate " + rule.lead.display() + " is not a derivative in the jet space");
    }
  }
  for (const auto& rule : rules_) {
    const auto reduced = reduce_with(js_, rules_, rule.rhs);
    for (const auto& s : reduced.symbols()) {
      if (matching_rule(rules_, s)) {
        throw IllPosedSolvedForm("right side of " + rule.lead.display() + " keeps principal coordinate " + s.display());
      }
    }
  }
  for (const auto& eq : equations_) {
    if (!reduce_with(js_, rules_, eq).is_zero()) {
      throw IllPosedSolvedForm("solved form does not represent equation " + to_string(eq) + " = 0");
    }
  }
}

int PDESystem::equation_order() const {
  int order = 1;
  for (const auto& eq : equations_) order = std::max(order, jet_order(eq));
  return order;
}

bool PDESystem::is_principal(const Symbol& s) const { return matching_rule(rules_, s).has_value(); }

Expression reduce_mod(const PDESystem& sys, const Expression& e) {
  return reduce_with(sys.jet_space(), sys.rules(), e);
}

}  // namespace liesym
