#include "liesym/exp_polynomial.hpp"

#include "liesym/errors.hpp"

namespace liesym {

ExpPolynomial::ExpPolynomial(const Rational& c) {
  if (c != 0) terms_.emplace(std::make_pair(0, Rational(0)), c);
}

ExpPolynomial ExpPolynomial::term(const Rational& c, int m, const Rational& k) {
  if (m < 0) throw Unsupported("negative power of the group parameter");
  ExpPolynomial out;
  out.add_term(m, k, c);
  return out;
}

void ExpPolynomial::add_term(int m, const Rational& k, const Rational& c) {
  if (c == 0) return;
  auto key = std::make_pair(m, k);
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, c);
    return;
  }
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

ExpPolynomial ExpPolynomial::from_expression(const Expression& e, const Symbol& eps) {
  ExpPolynomial out;
  for (const auto& t : e.terms()) {
    int m = 0;
    for (const auto& [atom, power] : t.mono.powers) {
      if (!atom.is_symbol() || atom.symbol() != eps || power < 0) {
        throw Unsupported("not an exponential polynomial in " + eps.display() + ": " + liesym::to_string(e));
      }
      m = power;
    }
    Rational k = 0;
    for (const auto& [s, rate] : t.mono.rates) {
      if (s != eps) throw Unsupported("exponential in a second group parameter: " + liesym::to_string(e));
      k = rate;
    }
    out.add_term(m, k, t.coeff);
  }
  return out;
}

bool ExpPolynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == std::make_pair(0, Rational(0)));
}

Rational ExpPolynomial::value_at_zero() const {
  Rational v = 0;
  for (const auto& [key, c] : terms_) {
    if (key.first == 0) v += c;
  }
  return v;
}

ExpPolynomial ExpPolynomial::derivative() const {
  ExpPolynomial out;
  for (const auto& [key, c] : terms_) {
    const auto& [m, k] = key;
    if (m > 0) out.add_term(m - 1, k, c * m);
    if (k != 0) out.add_term(m, k, c * k);
  }
  return out;
}

ExpPolynomial ExpPolynomial::integral() const {
  ExpPolynomial out;
  for (const auto& [key, c] : terms_) {
    const auto& [m, k] = key;
    if (k == 0) {
      out.add_term(m + 1, 0, c / (m + 1));
      continue;
    }
    // I_m = eps^m e^{k eps}/k - (m/k) I_{m-1}, I_{-1} contributes -1/k at m = 0.
    Rational factor = c;
    for (int j = m; j >= 0; --j) {
      out.add_term(j, k, factor / k);
      if (j == 0) {
        out.add_term(0, 0, -factor / k);
      } else {
        factor = -factor * j / k;
      }
    }
  }
  return out;
}

ExpPolynomial ExpPolynomial::negated_parameter() const {
  ExpPolynomial out;
  for (const auto& [key, c] : terms_) {
    const auto& [m, k] = key;
    out.add_term(m, -k, m % 2 ? Rational(-c) : c);
  }
  return out;
}

std::optional<Rational> ExpPolynomial::evaluate(const ParamValue& value) const {
  Rational total = 0;
  for (const auto& [key, c] : terms_) {
    const auto& [m, k] = key;
    if (value.kind == ParamValue::Kind::Additive) {
      if (k != 0 && value.value != 0) return std::nullopt;
      Rational p = 1;
      for (int j = 0; j < m; ++j) p *= value.value;
      total += c * p;
    } else {
      const Rational& t = value.value;
      if (t <= 0) return std::nullopt;
      if (m > 0) {
        if (t != 1) return std::nullopt;
        continue;
      }
      auto root = exact_root(t, k.get_den().get_ui());
      if (!root) return std::nullopt;
      Rational p = 1;
      const long num = k.get_num().get_si();
      for (long j = 0; j < std::abs(num); ++j) p *= *root;
      if (num < 0) p = 1 / p;
      total += c * p;
    }
  }
  return total;
}

Expression ExpPolynomial::to_expression(const Symbol& eps) const {
  Expression out;
  for (const auto& [key, c] : terms_) {
    const auto& [m, k] = key;
    Expression t = Expression(c) * Expression(eps).pow(m);
    if (k != 0) t *= Expression::param_exp(eps, k);
    out += t;
  }
  return out;
}

std::string ExpPolynomial::to_string(const std::string& eps) const {
  return liesym::to_string(to_expression(Symbol(Role::GroupParameter, eps)));
}

ExpPolynomial operator+(const ExpPolynomial& a, const ExpPolynomial& b) {
  ExpPolynomial out = a;
  for (const auto& [key, c] : b.terms_) out.add_term(key.first, key.second, c);
  return out;
}

ExpPolynomial operator-(const ExpPolynomial& a, const ExpPolynomial& b) { return a + (-b); }

ExpPolynomial ExpPolynomial::operator-() const {
  ExpPolynomial out;
  for (const auto& [key, c] : terms_) out.terms_.emplace(key, -c);
  return out;
}

ExpPolynomial operator*(const ExpPolynomial& a, const ExpPolynomial& b) {
  ExpPolynomial out;
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) out.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
  }
  return out;
}

ExpMatrix ExpMatrix::constant(const Matrix& m) {
  ExpMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c);
  }
  return out;
}

Matrix ExpMatrix::value_at_zero() const {
  Matrix m(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) m(i / cols_, i % cols_) = data_[i].value_at_zero();
  return m;
}

ExpMatrix ExpMatrix::derivative() const {
  ExpMatrix out = *this;
  for (auto& e : out.data_) e = e.derivative();
  return out;
}

ExpMatrix ExpMatrix::integral() const {
  ExpMatrix out = *this;
  for (auto& e : out.data_) e = e.integral();
  return out;
}

ExpMatrix ExpMatrix::negated_parameter() const {
  ExpMatrix out = *this;
  for (auto& e : out.data_) e = e.negated_parameter();
  return out;
}

ExpMatrix ExpMatrix::transpose() const {
  ExpMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  }
  return out;
}

std::optional<Matrix> ExpMatrix::evaluate(const ParamValue& value) const {
  Matrix m(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) {
    auto v = data_[i].evaluate(value);
    if (!v) return std::nullopt;
    m(i / cols_, i % cols_) = *v;
  }
  return m;
}

std::vector<ExpPolynomial> ExpMatrix::apply(const std::vector<ExpPolynomial>& v) const {
  if (v.size() != cols_) throw Unsupported("matrix-vector shape mismatch");
  std::vector<ExpPolynomial> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out[r] += (*this)(r, c) * v[c];
  }
  return out;
}

ExpMatrix operator*(const ExpMatrix& a, const ExpMatrix& b) {
  if (a.cols_ != b.rows_) throw Unsupported("matrix product shape mismatch");
  ExpMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += a(i, k) * b(k, j);
    }
  }
  return out;
}

Polynomial characteristic_polynomial(const Matrix& a) {
  const std::size_t n = a.rows();
  if (n != a.cols()) throw Unsupported("characteristic polynomial of a non-square matrix");
  Polynomial c(n + 1);
  c[n] = 1;
  Matrix m(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    m = a * m + c[n - k + 1] * Matrix::identity(n);
    c[n - k] = -(a * m).trace() / Rational(static_cast<long>(k));
  }
  return c;
}

namespace {

void trim(Polynomial& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
}

// Divides p by (t - r), assuming r is a root.
Polynomial deflate(const Polynomial& p, const Rational& r) {
  const std::size_t d = p.size() - 1;
  Polynomial q(d);
  Rational carry = 0;
  for (std::size_t i = d; i >= 1; --i) {
    carry = p[i] + carry * r;
    q[i - 1] = carry;
  }
  return q;
}

Rational eval(const Polynomial& p, const Rational& t) {
  Rational v = 0;
  for (std::size_t i = p.size(); i-- > 0;) v = v * t + p[i];
  return v;
}

std::vector<Integer> divisors(Integer n) {
  n = abs(n);
  std::vector<Integer> small;
  std::vector<Integer> large;
  for (Integer d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

}  // namespace

RationalSpectrum rational_roots(const Polynomial& input) {
  Polynomial p = input;
  trim(p);
  RationalSpectrum out;
  // Zero roots first.
  int zeros = 0;
  while (p.size() > 1 && p[0] == 0) {
    p.erase(p.begin());
    ++zeros;
  }
  if (zeros) out.roots.emplace_back(0, zeros);
  while (p.size() > 1) {
    const Integer scale = lcm_of_denominators(p);
    std::vector<Integer> ints;
    for (const auto& c : p) ints.push_back(Integer(c * scale));
    bool found = false;
    for (const auto& num : divisors(ints.front())) {
      for (const auto& den : divisors(ints.back())) {
        for (int sign : {1, -1}) {
          Rational r(Integer(sign * num), den);
          r.canonicalize();
          if (eval(p, r) != 0) continue;
          int mult = 0;
          while (p.size() > 1 && eval(p, r) == 0) {
            p = deflate(p, r);
            ++mult;
          }
          out.roots.emplace_back(r, mult);
          found = true;
          break;
        }
        if (found) break;
      }
      if (found) break;
    }
    if (!found) break;
  }
  out.leftover = p;
  return out;
}

std::string polynomial_to_string(const Polynomial& p, const std::string& var) {
  std::string out;
  for (std::size_t i = p.size(); i-- > 0;) {
    if (p[i] == 0) continue;
    const bool negative = p[i] < 0;
    const Rational mag = abs(p[i]);
    std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
    std::string term = mono.empty() ? to_string(mag) : (mag == 1 ? mono : to_string(mag) + "*" + mono);
    if (out.empty()) {
      out = negative ? "-" + term : term;
    } else {
      out += negative ? " - " + term : " + " + term;
    }
  }
  return out.empty() ? "0" : out;
}

ExpMatrix matrix_exp(const Matrix& a) {
  const std::size_t n = a.rows();
  if (n != a.cols()) throw Unsupported("exponential of a non-square matrix");
  if (n == 0) return ExpMatrix();
  const auto spectrum = rational_roots(characteristic_polynomial(a));
  if (spectrum.leftover.size() > 1) {
    throw UnsupportedSpectrum("characteristic polynomial factor " + polynomial_to_string(spectrum.leftover) +
                              " has no rational roots");
  }

  // Generalized eigenspaces give a basis B; the projector onto the lambda block is B E B^{-1}.
  std::vector<Vector> columns;
  std::vector<std::size_t> block_start;
  for (const auto& [lambda, mult] : spectrum.roots) {
    const Matrix shifted = a - lambda * Matrix::identity(n);
    Matrix power = Matrix::identity(n);
    for (int j = 0; j < mult; ++j) power = power * shifted;
    block_start.push_back(columns.size());
    for (auto& v : nullspace(power)) columns.push_back(std::move(v));
  }
  block_start.push_back(columns.size());
  if (columns.size() != n) throw UnsupportedSpectrum("generalized eigenspaces do not span the space");
  const Matrix b = Matrix::from_columns(columns, n);
  const Matrix b_inv = *inverse(b);

  std::vector<Matrix> projectors;
  Matrix s(n, n);
  for (std::size_t r = 0; r < spectrum.roots.size(); ++r) {
    Matrix e(n, n);
    for (std::size_t i = block_start[r]; i < block_start[r + 1]; ++i) e(i, i) = 1;
    projectors.push_back(b * e * b_inv);
    s = s + spectrum.roots[r].first * projectors.back();
  }
  const Matrix nil = a - s;

  ExpMatrix out(n, n);
  for (std::size_t r = 0; r < spectrum.roots.size(); ++r) {
    const auto& [lambda, mult] = spectrum.roots[r];
    Matrix term = projectors[r];
    Rational factorial = 1;
    for (int j = 0; j < mult; ++j) {
      if (j > 0) {
        term = term * nil;
        factorial *= j;
      }
      if (term.is_zero()) break;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
          if (term(i, k) != 0) out(i, k) += ExpPolynomial::term(term(i, k) / factorial, j, lambda);
        }
      }
    }
  }
  return out;
}

}  // namespace liesym
