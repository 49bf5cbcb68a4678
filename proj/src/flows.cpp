#include "liesym/flows.hpp"

#include <set>

#include "liesym/errors.hpp"

namespace liesym {

ExpMatrix ad_exp(const LieAlgebra& L, const Vector& a) {
  return matrix_exp(Rational(-1) * L.ad(a));
}

ExpVector bracket(const LieAlgebra& L, const ExpVector& a, const ExpVector& b) {
  const std::size_t n = L.dim();
  ExpVector out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (a.at(i).is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (b.at(j).is_zero()) continue;
      const auto f = a[i] * b[j];
      for (std::size_t k = 0; k < n; ++k) {
        if (L.constant(i, j, k) != 0) out[k] += f * ExpPolynomial(L.constant(i, j, k));
      }
    }
  }
  return out;
}

std::vector<Symbol> FlowMap::parameters() const {
  std::set<Symbol> out;
  for (const auto& e : images) {
    for (const auto& s : e.symbols()) {
      if (s.role() == Role::GroupParameter) out.insert(s);
    }
  }
  return {out.begin(), out.end()};
}

std::vector<Expression> FlowMap::apply(const std::vector<Expression>& point) const {
  if (point.size() != coords.size()) throw Unsupported("point has the wrong number of coordinates");
  Substitution subs;
  for (std::size_t i = 0; i < coords.size(); ++i) subs.emplace(coords[i], point[i]);
  std::vector<Expression> out;
  for (const auto& e : images) out.push_back(substitute(e, subs));
  return out;
}

FlowMap identity_flow(const std::vector<Symbol>& coords, std::size_t p) {
  FlowMap f{coords, p, {}, {}};
  for (const auto& c : coords) f.images.emplace_back(c);
  f.inverse_images = f.images;
  return f;
}

std::pair<Matrix, Vector> affine_parts(const VectorField& vf) {
  const auto& coords = vf.coordinates();
  const std::size_t n = coords.size();
  Matrix a(n, n);
  Vector b(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& [exps, coeff] : collect(vf.coefficient(i), coords)) {
      if (!coeff.is_rational()) {
        throw Unsupported("flow needs rational coefficients, got " + to_string(vf.coefficient(i)));
      }
      int degree = 0;
      std::size_t at = 0;
      for (std::size_t j = 0; j < n; ++j) {
        degree += exps[j];
        if (exps[j]) at = j;
      }
      if (degree > 1) throw Unsupported("flow needs affine coefficients, got " + to_string(vf.coefficient(i)));
      if (degree == 0) {
        b[i] = coeff.rational();
      } else {
        a(i, at) = coeff.rational();
      }
    }
  }
  return {a, b};
}

FlowMap flow(const VectorField& vf, const Symbol& eps) {
  if (eps.role() != Role::GroupParameter) throw Unsupported("flow parameter must be a group parameter");
  const auto& coords = vf.coordinates();
  const std::size_t n = coords.size();
  const auto [a, b] = affine_parts(vf);
  const ExpMatrix e = matrix_exp(a);
  const ExpMatrix integral = e.integral();

  auto images_of = [&](const ExpMatrix& em, const ExpMatrix& im) {
    std::vector<Expression> out(n);
    for (std::size_t i = 0; i < n; ++i) {
      ExpPolynomial shift;
      for (std::size_t j = 0; j < n; ++j) {
        out[i] += em(i, j).to_expression(eps) * Expression(coords[j]);
        if (b[j] != 0) shift += im(i, j) * ExpPolynomial(b[j]);
      }
      out[i] += shift.to_expression(eps);
    }
    return out;
  };
  FlowMap f{coords, vf.p(), images_of(e, integral), {}};
  // The inverse is the flow at -eps.
  f.inverse_images = images_of(e.negated_parameter(), integral.negated_parameter());
  return f;
}

FlowMap compose(const FlowMap& f, const FlowMap& g) {
  if (f.coords != g.coords) throw Unsupported("composition of flows over different coordinates");
  FlowMap out{f.coords, f.p, f.apply(g.images), {}};
  FlowMap g_inv{g.coords, g.p, g.inverse_images, g.images};
  out.inverse_images = g_inv.apply(f.inverse_images);
  return out;
}

FlowMap inverse(const FlowMap& f) { return FlowMap{f.coords, f.p, f.inverse_images, f.images}; }

FlowMap reparametrize(const FlowMap& f, const Symbol& eps, const Expression& value) {
  const Substitution subs{{eps, value}};
  FlowMap out = f;
  for (auto& e : out.images) e = substitute(e, subs);
  for (auto& e : out.inverse_images) e = substitute(e, subs);
  return out;
}

std::vector<Expression> transform_solution(const FlowMap& f, const std::vector<std::string>& names,
                                           SolutionOrientation orientation) {
  const std::size_t p = f.p;
  const std::size_t q = f.coords.size() - p;
  if (names.size() != q) throw Unsupported("need one function name per dependent variable");
  // Pullback uses the inverse map on the dependent side and the forward map on
  // the independent side; pushforward the other way around.
  const auto& base = orientation == SolutionOrientation::Pullback ? f.images : f.inverse_images;
  const auto& fiber = orientation == SolutionOrientation::Pullback ? f.inverse_images : f.images;
  std::vector<Expression> args;
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t a = 0; a < q; ++a) {
      if (base[i].depends_on(f.coords[p + a])) {
        throw Unsupported("independent-variable image depends on " + f.coords[p + a].display());
      }
    }
    args.push_back(base[i]);
  }
  Substitution subs;
  for (std::size_t i = 0; i < p; ++i) subs.emplace(f.coords[i], args[i]);
  for (std::size_t a = 0; a < q; ++a) subs.emplace(f.coords[p + a], Expression::function(names[a], args));
  std::vector<Expression> out;
  for (std::size_t a = 0; a < q; ++a) out.push_back(substitute(fiber[p + a], subs));
  return out;
}

}  // namespace liesym
