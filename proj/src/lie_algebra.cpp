#include "liesym/lie_algebra.hpp"

#include <map>

#include "liesym/errors.hpp"

namespace liesym {

namespace {

// Rows of the linear system "sum c_i f_i = target", one per (coordinate, monomial).
struct FieldSystem {
  Matrix m;
  Vector rhs;
};

FieldSystem field_system(const std::vector<VectorField>& fields, const VectorField* target) {
  std::map<std::pair<std::size_t, Monomial>, std::size_t> row_of;
  auto index = [&](std::size_t coord, const Monomial& mono) {
    auto key = std::make_pair(coord, mono);
    auto it = row_of.find(key);
    if (it == row_of.end()) it = row_of.emplace(key, row_of.size()).first;
    return it->second;
  };
  std::vector<std::vector<std::pair<std::size_t, Rational>>> cols(fields.size());
  for (std::size_t f = 0; f < fields.size(); ++f) {
    for (std::size_t c = 0; c < fields[f].coefficients().size(); ++c) {
      for (const auto& t : fields[f].coefficient(c).terms()) cols[f].emplace_back(index(c, t.mono), t.coeff);
    }
  }
  std::vector<std::pair<std::size_t, Rational>> tcol;
  if (target) {
    for (std::size_t c = 0; c < target->coefficients().size(); ++c) {
      for (const auto& t : target->coefficient(c).terms()) tcol.emplace_back(index(c, t.mono), t.coeff);
    }
  }
  FieldSystem out{Matrix(row_of.size(), fields.size()), Vector(row_of.size())};
  for (std::size_t f = 0; f < fields.size(); ++f) {
    for (const auto& [r, q] : cols[f]) out.m(r, f) = q;
  }
  for (const auto& [r, q] : tcol) out.rhs[r] = q;
  return out;
}

bool jacobi_holds(const std::vector<std::vector<Vector>>& c, std::size_t n, std::size_t i, std::size_t j, std::size_t k) {
  for (std::size_t l = 0; l < n; ++l) {
    Rational s = 0;
    for (std::size_t m = 0; m < n; ++m) {
      s += c[i][j][m] * c[m][k][l] + c[j][k][m] * c[m][i][l] + c[k][i][m] * c[m][j][l];
    }
    if (s != 0) return false;
  }
  return true;
}

}  // namespace

std::optional<Vector> decompose(const std::vector<VectorField>& basis, const VectorField& w) {
  if (basis.empty()) {
    if (w.is_zero()) return Vector{};
    return std::nullopt;
  }
  const auto sys = field_system(basis, &w);
  if (sys.m.rows() == 0) return Vector(basis.size());
  auto x = solve(sys.m, sys.rhs);
  if (!x) return std::nullopt;
  // solve() picks one solution; confirm it reproduces w exactly.
  if (combine(basis, *x) != w) return std::nullopt;
  return x;
}

std::size_t field_rank(const std::vector<VectorField>& fields) {
  if (fields.empty()) return 0;
  return rank(field_system(fields, nullptr).m);
}

VectorField combine(const std::vector<VectorField>& basis, const Vector& a) {
  if (basis.empty()) throw Unsupported("combination over an empty basis");
  VectorField out = basis.front() - basis.front();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (a.at(i) != 0) out = out + Expression(a[i]) * basis[i];
  }
  return out;
}

LieAlgebra::LieAlgebra(std::vector<std::string> labels, std::vector<std::vector<Vector>> constants,
                       std::vector<VectorField> realization)
    : labels_(std::move(labels)), c_(std::move(constants)), realization_(std::move(realization)) {
  const std::size_t n = labels_.size();
  if (c_.size() != n) throw Error("structure constants do not match the dimension");
  for (const auto& row : c_) {
    if (row.size() != n) throw Error("structure constants do not match the dimension");
    for (const auto& v : row) {
      if (v.size() != n) throw Error("structure constants do not match the dimension");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (add(c_[i][j], c_[j][i]) != Vector(n)) {
        throw Error("structure constants are not antisymmetric at (" + labels_[i] + ", " + labels_[j] + ")");
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        if (!jacobi_holds(c_, n, i, j, k)) {
          throw Error("Jacobi identity fails for (" + labels_[i] + ", " + labels_[j] + ", " + labels_[k] + ")");
        }
      }
    }
  }
  if (!realization_.empty()) {
    if (realization_.size() != n) throw Error("realization does not match the dimension");
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (liesym::bracket(realization_[i], realization_[j]) != combine(realization_, c_[i][j])) {
          throw Error("realization bracket [" + labels_[i] + ", " + labels_[j] + "] disagrees with the constants");
        }
      }
    }
  }
}

Vector LieAlgebra::bracket(const Vector& a, const Vector& b) const {
  Vector out(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    if (a.at(i) == 0) continue;
    for (std::size_t j = 0; j < dim(); ++j) {
      if (b.at(j) == 0) continue;
      const Rational f = a[i] * b[j];
      for (std::size_t k = 0; k < dim(); ++k) out[k] += f * c_[i][j][k];
    }
  }
  return out;
}

Matrix LieAlgebra::ad(const Vector& a) const {
  Matrix m(dim(), dim());
  for (std::size_t j = 0; j < dim(); ++j) {
    const auto col = bracket(a, unit_vector(dim(), j));
    for (std::size_t k = 0; k < dim(); ++k) m(k, j) = col[k];
  }
  return m;
}

std::string LieAlgebra::format(const Vector& a) const {
  std::string out;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (a.at(i) == 0) continue;
    const bool negative = a[i] < 0;
    const Rational mag = abs(a[i]);
    std::string term = mag == 1 ? labels_[i] : to_string(mag) + "*" + labels_[i];
    if (out.empty()) {
      out = negative ? "-" + term : term;
    } else {
      out += negative ? " - " + term : " + " + term;
    }
  }
  return out.empty() ? "0" : out;
}

LieAlgebra structure_constants(const std::vector<VectorField>& basis, std::vector<std::string> labels) {
  const std::size_t n = basis.size();
  if (labels.empty()) {
    for (std::size_t i = 0; i < n; ++i) labels.push_back("v" + std::to_string(i + 1));
  }
  if (field_rank(basis) != n) throw DegenerateInput("basis fields are linearly dependent");
  std::vector<std::vector<Vector>> c(n, std::vector<Vector>(n, Vector(n)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      auto coords = decompose(basis, bracket(basis[i], basis[j]));
      if (!coords) {
        throw NotSubalgebra("[" + labels[i] + ", " + labels[j] + "] leaves the span of the basis", i, j);
      }
      c[i][j] = *coords;
      c[j][i] = scale(-1, *coords);
    }
  }
  return LieAlgebra(std::move(labels), std::move(c), basis);
}

Matrix killing_form(const LieAlgebra& L) {
  const std::size_t n = L.dim();
  std::vector<Matrix> ads;
  for (std::size_t i = 0; i < n; ++i) ads.push_back(L.ad(i));
  Matrix k(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      k(i, j) = (ads[i] * ads[j]).trace();
      k(j, i) = k(i, j);
    }
  }
  return k;
}

Subspace bracket_space(const LieAlgebra& L, const Subspace& S, const Subspace& T) {
  std::vector<Vector> out;
  for (const auto& a : S.basis()) {
    for (const auto& b : T.basis()) out.push_back(L.bracket(a, b));
  }
  return Subspace::span(L.dim(), out);
}

std::vector<Subspace> derived_series(const LieAlgebra& L) {
  std::vector<Subspace> chain{Subspace::whole(L.dim())};
  while (true) {
    auto next = bracket_space(L, chain.back(), chain.back());
    if (next == chain.back()) return chain;
    chain.push_back(std::move(next));
  }
}

std::vector<Subspace> lower_central_series(const LieAlgebra& L) {
  const auto whole = Subspace::whole(L.dim());
  std::vector<Subspace> chain{whole};
  while (true) {
    auto next = bracket_space(L, whole, chain.back());
    if (next == chain.back()) return chain;
    chain.push_back(std::move(next));
  }
}

bool is_solvable(const LieAlgebra& L) { return derived_series(L).back().dim() == 0; }
bool is_nilpotent(const LieAlgebra& L) { return lower_central_series(L).back().dim() == 0; }
bool is_semisimple(const LieAlgebra& L) { return L.dim() > 0 && determinant(killing_form(L)) != 0; }

Subspace center(const LieAlgebra& L) {
  const std::size_t n = L.dim();
  // x is central iff ad(x) e_j = 0 for all j, i.e. sum_i x_i C^k_ij = 0.
  Matrix m(n * n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) m(j * n + k, i) = L.constant(i, j, k);
    }
  }
  return Subspace::span(n, nullspace(m));
}

Subspace radical(const LieAlgebra& L) {
  const std::size_t n = L.dim();
  const auto derived = bracket_space(L, Subspace::whole(n), Subspace::whole(n));
  if (derived.dim() == 0) return Subspace::whole(n);
  const auto k = killing_form(L);
  std::vector<Vector> rows;
  for (const auto& d : derived.basis()) rows.push_back(k * d);
  return Subspace::span(n, nullspace(Matrix::from_rows(rows, n)));
}

bool is_ideal(const LieAlgebra& L, const Subspace& S) {
  return S.contains(bracket_space(L, Subspace::whole(L.dim()), S));
}

bool is_abelian(const LieAlgebra& L, const Subspace& S) { return bracket_space(L, S, S).dim() == 0; }

Subspace normalizer(const LieAlgebra& L, const Subspace& S) {
  const std::size_t n = L.dim();
  // y in N(S) iff the projection of [y, s] onto a complement of S vanishes,
  // i.e. every annihilator functional kills [y, s] for every basis vector s.
  const auto ann = S.annihilator();
  std::vector<Vector> rows;
  for (const auto& s : S.basis()) {
    for (const auto& w : ann.basis()) {
      Vector row(n);
      for (std::size_t i = 0; i < n; ++i) row[i] = dot(w, L.bracket(unit_vector(n, i), s));
      rows.push_back(std::move(row));
    }
  }
  if (rows.empty()) return Subspace::whole(n);
  return Subspace::span(n, nullspace(Matrix::from_rows(rows, n)));
}

std::optional<std::pair<std::size_t, std::size_t>> closure_failure(const LieAlgebra& L,
                                                                   const std::vector<Vector>& generators) {
  const auto S = Subspace::span(L.dim(), generators);
  const auto& b = generators;
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (std::size_t j = i + 1; j < b.size(); ++j) {
      if (!S.contains(L.bracket(b[i], b[j]))) return std::make_pair(i, j);
    }
  }
  return std::nullopt;
}

}  // namespace liesym
