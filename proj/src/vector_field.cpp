#include "liesym/vector_field.hpp"

#include "liesym/errors.hpp"

namespace liesym {

VectorField::VectorField(const JetSpace& js, std::vector<Expression> coefficients)
    : coords_(js.base_coordinates()), coeffs_(std::move(coefficients)), p_(js.p()) {
  if (coeffs_.size() != coords_.size()) {
    throw Unsupported("vector field needs " + std::to_string(coords_.size()) + " coefficients");
  }
  for (const auto& c : coeffs_) {
    for (const auto& s : c.symbols()) {
      if (s.role() == Role::Jet) throw Unsupported("vector field coefficient depends on derivative " + s.display());
    }
  }
}

VectorField VectorField::zero(const JetSpace& js) {
  return VectorField(js, std::vector<Expression>(js.p() + js.q()));
}

VectorField VectorField::coordinate(const JetSpace& js, std::size_t index) {
  std::vector<Expression> c(js.p() + js.q());
  c.at(index) = 1;
  return VectorField(js, std::move(c));
}

Expression VectorField::coefficient_of(const Symbol& z) const {
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (coords_[i] == z) return coeffs_[i];
  }
  return Expression();
}

bool VectorField::is_zero() const {
  for (const auto& c : coeffs_) {
    if (!c.is_zero()) return false;
  }
  return true;
}

Expression VectorField::apply(const Expression& f) const {
  Expression out;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (coeffs_[i].is_zero() || !f.depends_on(coords_[i])) continue;
    out += coeffs_[i] * diff(f, coords_[i]);
  }
  return out;
}

VectorField VectorField::operator+(const VectorField& other) const {
  auto c = coeffs_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += other.coeffs_.at(i);
  return VectorField(coords_, std::move(c), p_);
}

VectorField VectorField::operator-(const VectorField& other) const {
  auto c = coeffs_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= other.coeffs_.at(i);
  return VectorField(coords_, std::move(c), p_);
}

VectorField operator*(const Expression& s, const VectorField& v) {
  auto c = v.coeffs_;
  for (auto& x : c) x = s * x;
  return VectorField(v.coords_, std::move(c), v.p_);
}

std::string VectorField::to_string(PrintStyle style) const {
  std::string out;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    std::string coeff = liesym::to_string(coeffs_[i], style);
    const std::string op = "D(" + coords_[i].display() + ")";
    std::string term;
    if (coeffs_[i] == Expression(1)) {
      term = op;
    } else if (coeffs_[i] == Expression(-1)) {
      term = "-" + op;
    } else if (coeffs_[i].is_single_term()) {
      term = coeff + "*" + op;
    } else {
      term = "(" + coeff + ")*" + op;
    }
    if (out.empty()) {
      out = term;
    } else if (term.front() == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return out.empty() ? "0" : out;
}

VectorField VectorField::with_coefficients(std::vector<Expression> coefficients) const {
  if (coefficients.size() != coords_.size()) throw Unsupported("coefficient count mismatch");
  return VectorField(coords_, std::move(coefficients), p_);
}

VectorField bracket(const VectorField& v, const VectorField& w) {
  if (v.coordinates() != w.coordinates()) throw Unsupported("bracket of fields over different spaces");
  std::vector<Expression> c(v.coordinates().size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = v.apply(w.coefficient(i)) - w.apply(v.coefficient(i));
  return v.with_coefficients(std::move(c));
}

std::vector<Expression> characteristic(const VectorField& vf, const JetSpace& js) {
  std::vector<Expression> q;
  for (std::size_t a = 0; a < js.q(); ++a) {
    Expression qa = vf.phi(a);
    for (std::size_t i = 0; i < js.p(); ++i) {
      if (vf.xi(i).is_zero()) continue;
      qa -= vf.xi(i) * Expression(js.dependents()[a].derivative(i));
    }
    q.push_back(qa);
  }
  return q;
}

const Expression& ProlongedField::coefficient(const Symbol& jet) const {
  auto it = jets_.find(jet);
  if (it == jets_.end()) throw OrderLimit("no prolongation coefficient for " + jet.display());
  return it->second;
}

Expression ProlongedField::apply(const Expression& e) const {
  Expression out;
  for (const auto& s : e.symbols()) {
    if (s.role() == Role::Independent) {
      const auto& c = base_.coefficient_of(s);
      if (!c.is_zero()) out += c * diff(e, s);
    } else if (s.is_jet_like()) {
      if (s.order() > order_) {
        throw OrderLimit("prolongation of order " + std::to_string(order_) + " cannot act on " + s.display());
      }
      const auto& c = coefficient(s);
      if (!c.is_zero()) out += c * diff(e, s);
    }
  }
  return out;
}

ProlongedField prolong(const VectorField& vf, int order, const JetSpace& js) {
  if (vf.coordinates() != js.base_coordinates()) throw Unsupported("vector field does not live on this jet space");
  const auto q = characteristic(vf, js);
  std::map<Symbol, Expression> jets;
  for (std::size_t a = 0; a < js.q(); ++a) jets.emplace(js.dependents()[a], vf.phi(a));
  for (int k = 1; k <= order; ++k) {
    for (std::size_t a = 0; a < js.q(); ++a) {
      for (const auto& index : js.multi_indices(k)) {
        Expression c = total_derivative(q[a], index, js);
        for (std::size_t i = 0; i < js.p(); ++i) {
          if (vf.xi(i).is_zero()) continue;
          auto next = index;
          next[i] += 1;
          c += vf.xi(i) * Expression(js.jet(a, next));
        }
        jets.emplace(js.jet(a, index), std::move(c));
      }
    }
  }
  return ProlongedField(vf, order, std::move(jets));
}

std::vector<Expression> symmetry_residual(const VectorField& vf, const PDESystem& sys) {
  const auto pr = prolong(vf, sys.equation_order(), sys.jet_space());
  std::vector<Expression> out;
  for (const auto& eq : sys.equations()) out.push_back(reduce_mod(sys, pr.apply(eq)));
  return out;
}

bool is_symmetry(const VectorField& vf, const PDESystem& sys) {
  for (const auto& r : symmetry_residual(vf, sys)) {
    if (!r.is_zero()) return false;
  }
  return true;
}

}  // namespace liesym
