#include "liesym/expression.hpp"

#include <algorithm>
#include <ostream>
#include <set>
#include <sstream>

#include "liesym/errors.hpp"

namespace liesym {

namespace {

std::strong_ordering compare_rational(const Rational& a, const Rational& b) {
  const int c = cmp(a, b);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

const std::vector<Term>& empty_terms() {
  static const std::vector<Term> empty;
  return empty;
}

}  // namespace

// ---------------------------------------------------------------------------
// Atom

bool operator==(const Atom& a, const Atom& b) { return (a <=> b) == 0; }

std::strong_ordering operator<=>(const Atom& a, const Atom& b) {
  if (a.is_symbol() != b.is_symbol()) return a.is_symbol() ? std::strong_ordering::less : std::strong_ordering::greater;
  if (a.is_symbol()) return a.symbol() <=> b.symbol();
  const auto& fa = a.function();
  const auto& fb = b.function();
  if (&fa == &fb) return std::strong_ordering::equal;
  if (auto c = fa.name <=> fb.name; c != 0) return c;
  if (auto c = fa.orders <=> fb.orders; c != 0) return c;
  if (fa.args.size() != fb.args.size()) return fa.args.size() <=> fb.args.size();
  for (std::size_t i = 0; i < fa.args.size(); ++i) {
    if (auto c = fa.args[i] <=> fb.args[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------
// Monomial

int Monomial::degree() const {
  int d = 0;
  for (const auto& [atom, e] : powers) d += e;
  return d;
}

int Monomial::exponent_of(const Atom& a) const {
  for (const auto& [atom, e] : powers) {
    if (atom == a) return e;
  }
  return 0;
}

bool operator==(const Monomial& a, const Monomial& b) { return (a <=> b) == 0; }

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  const std::size_t n = std::min(a.powers.size(), b.powers.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = a.powers[i].first <=> b.powers[i].first; c != 0) return c;
    if (auto c = a.powers[i].second <=> b.powers[i].second; c != 0) return c;
  }
  if (auto c = a.powers.size() <=> b.powers.size(); c != 0) return c;
  const std::size_t m = std::min(a.rates.size(), b.rates.size());
  for (std::size_t i = 0; i < m; ++i) {
    if (auto c = a.rates[i].first <=> b.rates[i].first; c != 0) return c;
    if (auto c = compare_rational(a.rates[i].second, b.rates[i].second); c != 0) return c;
  }
  return a.rates.size() <=> b.rates.size();
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.powers.reserve(a.powers.size() + b.powers.size());
  auto i = a.powers.begin();
  auto j = b.powers.begin();
  while (i != a.powers.end() || j != b.powers.end()) {
    if (j == b.powers.end() || (i != a.powers.end() && i->first < j->first)) {
      out.powers.push_back(*i++);
    } else if (i == a.powers.end() || j->first < i->first) {
      out.powers.push_back(*j++);
    } else {
      const int e = i->second + j->second;
      if (e != 0) out.powers.emplace_back(i->first, e);
      ++i;
      ++j;
    }
  }
  auto r = a.rates.begin();
  auto s = b.rates.begin();
  while (r != a.rates.end() || s != b.rates.end()) {
    if (s == b.rates.end() || (r != a.rates.end() && r->first < s->first)) {
      out.rates.push_back(*r++);
    } else if (r == a.rates.end() || s->first < r->first) {
      out.rates.push_back(*s++);
    } else {
      Rational k = r->second + s->second;
      if (k != 0) out.rates.emplace_back(r->first, k);
      ++r;
      ++s;
    }
  }
  return out;
}

Monomial inverse(const Monomial& m) {
  Monomial out = m;
  for (auto& [atom, e] : out.powers) e = -e;
  for (auto& [s, k] : out.rates) k = -k;
  return out;
}

// ---------------------------------------------------------------------------
// Expression

Expression::Expression() = default;

Expression::Expression(int value) : Expression(Rational(value)) {}

Expression::Expression(const Rational& value) {
  if (value != 0) {
    terms_ = std::make_shared<const std::vector<Term>>(std::vector<Term>{Term{value, Monomial{}}});
  }
}

Expression::Expression(const Symbol& symbol) {
  Monomial m;
  m.powers.emplace_back(Atom(symbol), 1);
  terms_ = std::make_shared<const std::vector<Term>>(std::vector<Term>{Term{Rational(1), std::move(m)}});
}

Expression Expression::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.mono < b.mono; });
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().mono == t.mono) {
      out.back().coeff += t.coeff;
    } else {
      if (!out.empty() && out.back().coeff == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coeff == 0) out.pop_back();
  if (out.empty()) return Expression();
  return Expression(std::make_shared<const std::vector<Term>>(std::move(out)));
}

Expression Expression::monomial(const Rational& coeff, Monomial mono) {
  if (coeff == 0) return Expression();
  return Expression(std::make_shared<const std::vector<Term>>(std::vector<Term>{Term{coeff, std::move(mono)}}));
}

Expression Expression::atom(const Atom& a, int exponent) {
  if (exponent == 0) return Expression(1);
  Monomial m;
  m.powers.emplace_back(a, exponent);
  return monomial(Rational(1), std::move(m));
}

Expression Expression::param_exp(const Symbol& s, const Rational& k) {
  if (s.role() != Role::GroupParameter) {
    throw Unsupported("exponential of non group-parameter symbol " + s.display());
  }
  if (k == 0) return Expression(1);
  Monomial m;
  m.rates.emplace_back(s, k);
  return monomial(Rational(1), std::move(m));
}

Expression Expression::function(const std::string& name, std::vector<Expression> args,
                                std::vector<int> orders) {
  if (orders.empty()) orders.assign(args.size(), 0);
  if (orders.size() != args.size()) throw Unsupported("function derivative orders do not match arity");
  auto call = std::make_shared<const FunctionCall>(FunctionCall{name, std::move(orders), std::move(args)});
  return atom(Atom(std::move(call)));
}

const std::vector<Term>& Expression::terms() const { return terms_ ? *terms_ : empty_terms(); }

bool Expression::is_zero() const { return !terms_; }

bool Expression::is_rational() const {
  return is_zero() || (size() == 1 && terms().front().mono.is_one());
}

Rational Expression::rational() const {
  if (!is_rational()) throw Unsupported("expression is not a rational constant: " + to_string(*this));
  return is_zero() ? Rational(0) : terms().front().coeff;
}

bool Expression::is_symbol() const {
  if (size() != 1) return false;
  const auto& t = terms().front();
  return t.coeff == 1 && t.mono.rates.empty() && t.mono.powers.size() == 1 &&
         t.mono.powers.front().second == 1 && t.mono.powers.front().first.is_symbol();
}

Symbol Expression::as_symbol() const {
  if (!is_symbol()) throw Unsupported("expression is not a symbol: " + to_string(*this));
  return terms().front().mono.powers.front().first.symbol();
}

bool Expression::depends_on(const Symbol& s) const {
  for (const auto& t : terms()) {
    for (const auto& [atom, e] : t.mono.powers) {
      if (atom.is_symbol()) {
        if (atom.symbol() == s) return true;
      } else {
        for (const auto& arg : atom.function().args) {
          if (arg.depends_on(s)) return true;
        }
      }
    }
    for (const auto& [p, k] : t.mono.rates) {
      if (p == s) return true;
    }
  }
  return false;
}

namespace {

void gather_symbols(const Expression& e, std::set<Symbol>& out) {
  for (const auto& t : e.terms()) {
    for (const auto& [atom, pw] : t.mono.powers) {
      if (atom.is_symbol()) {
        out.insert(atom.symbol());
      } else {
        for (const auto& arg : atom.function().args) gather_symbols(arg, out);
      }
    }
    for (const auto& [p, k] : t.mono.rates) out.insert(p);
  }
}

}  // namespace

std::vector<Symbol> Expression::symbols() const {
  std::set<Symbol> s;
  gather_symbols(*this, s);
  return {s.begin(), s.end()};
}

Expression Expression::operator-() const {
  if (is_zero()) return *this;
  std::vector<Term> out = terms();
  for (auto& t : out) t.coeff = -t.coeff;
  return Expression(std::make_shared<const std::vector<Term>>(std::move(out)));
}

Expression operator+(const Expression& a, const Expression& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const auto& x = a.terms();
  const auto& y = b.terms();
  std::vector<Term> out;
  out.reserve(x.size() + y.size());
  auto i = x.begin();
  auto j = y.begin();
  while (i != x.end() || j != y.end()) {
    if (j == y.end() || (i != x.end() && i->mono < j->mono)) {
      out.push_back(*i++);
    } else if (i == x.end() || j->mono < i->mono) {
      out.push_back(*j++);
    } else {
      Rational c = i->coeff + j->coeff;
      if (c != 0) out.push_back(Term{c, i->mono});
      ++i;
      ++j;
    }
  }
  if (out.empty()) return Expression();
  return Expression(std::make_shared<const std::vector<Term>>(std::move(out)));
}

Expression operator-(const Expression& a, const Expression& b) { return a + (-b); }

Expression operator*(const Expression& a, const Expression& b) {
  if (a.is_zero() || b.is_zero()) return Expression();
  std::vector<Term> out;
  out.reserve(a.size() * b.size());
  for (const auto& s : a.terms()) {
    for (const auto& t : b.terms()) {
      out.push_back(Term{s.coeff * t.coeff, s.mono * t.mono});
    }
  }
  return Expression::from_terms(std::move(out));
}

Expression operator/(const Expression& a, const Expression& b) {
  if (b.is_zero()) throw DegenerateInput("division by zero");
  if (!b.is_single_term()) {
    throw Unsupported("division by a multi-term expression: " + to_string(b));
  }
  const auto& t = b.terms().front();
  Rational inv = 1 / t.coeff;
  return a * Expression::monomial(inv, inverse(t.mono));
}

Expression Expression::pow(int exponent) const {
  if (exponent == 0) return Expression(1);
  if (exponent < 0) {
    if (is_zero()) throw DegenerateInput("negative power of zero");
    return Expression(1) / pow(-exponent);
  }
  Expression result(1);
  Expression base = *this;
  unsigned e = static_cast<unsigned>(exponent);
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

bool operator==(const Expression& a, const Expression& b) {
  if (a.terms_ == b.terms_) return true;
  const auto& x = a.terms();
  const auto& y = b.terms();
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].coeff != y[i].coeff || !(x[i].mono == y[i].mono)) return false;
  }
  return true;
}

std::strong_ordering operator<=>(const Expression& a, const Expression& b) {
  if (a.terms_ == b.terms_) return std::strong_ordering::equal;
  const auto& x = a.terms();
  const auto& y = b.terms();
  const std::size_t n = std::min(x.size(), y.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = x[i].mono <=> y[i].mono; c != 0) return c;
    if (auto c = compare_rational(x[i].coeff, y[i].coeff); c != 0) return c;
  }
  return x.size() <=> y.size();
}

// ---------------------------------------------------------------------------
// Tree

struct Tree::Node {
  Kind kind;
  Rational value;
  std::optional<liesym::Symbol> symbol;
  std::vector<Tree> operands;
  int exponent = 0;
  std::string name;
  std::vector<int> orders;
};

Tree Tree::constant(const Rational& value) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Constant;
  n->value = value;
  return Tree(std::move(n));
}

Tree Tree::symbol(const liesym::Symbol& s) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Symbol;
  n->symbol = s;
  return Tree(std::move(n));
}

Tree Tree::sum(std::vector<Tree> operands) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Sum;
  n->operands = std::move(operands);
  return Tree(std::move(n));
}

Tree Tree::product(std::vector<Tree> operands) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Product;
  n->operands = std::move(operands);
  return Tree(std::move(n));
}

Tree Tree::power(Tree base, int exponent) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Power;
  n->operands.push_back(std::move(base));
  n->exponent = exponent;
  return Tree(std::move(n));
}

Tree Tree::param_exp(const liesym::Symbol& s, const Rational& rate) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::ParamExp;
  n->symbol = s;
  n->value = rate;
  return Tree(std::move(n));
}

Tree Tree::function(const std::string& name, std::vector<int> orders, std::vector<Tree> args) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Function;
  n->name = name;
  n->orders = std::move(orders);
  n->operands = std::move(args);
  return Tree(std::move(n));
}

Tree::Kind Tree::kind() const { return node_->kind; }
const Rational& Tree::value() const { return node_->value; }
const Symbol& Tree::symbol() const { return *node_->symbol; }
const std::vector<Tree>& Tree::operands() const { return node_->operands; }
int Tree::exponent() const { return node_->exponent; }
const std::string& Tree::name() const { return node_->name; }
const std::vector<int>& Tree::orders() const { return node_->orders; }

bool operator==(const Tree& a, const Tree& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  return x.kind == y.kind && x.value == y.value && x.symbol == y.symbol && x.operands == y.operands &&
         x.exponent == y.exponent && x.name == y.name && x.orders == y.orders;
}

namespace {

Tree atom_tree(const Atom& atom) {
  if (atom.is_symbol()) return Tree::symbol(atom.symbol());
  const auto& f = atom.function();
  std::vector<Tree> args;
  args.reserve(f.args.size());
  for (const auto& a : f.args) args.push_back(a.tree());
  return Tree::function(f.name, f.orders, std::move(args));
}

}  // namespace

Tree Expression::tree() const {
  if (is_zero()) return Tree::constant(Rational(0));
  std::vector<Tree> summands;
  for (const auto& t : terms()) {
    std::vector<Tree> factors;
    if (t.coeff != 1 || t.mono.is_one()) factors.push_back(Tree::constant(t.coeff));
    for (const auto& [atom, e] : t.mono.powers) {
      factors.push_back(e == 1 ? atom_tree(atom) : Tree::power(atom_tree(atom), e));
    }
    for (const auto& [s, k] : t.mono.rates) factors.push_back(Tree::param_exp(s, k));
    summands.push_back(factors.size() == 1 ? factors.front() : Tree::product(std::move(factors)));
  }
  return summands.size() == 1 ? summands.front() : Tree::sum(std::move(summands));
}

Expression normalize(const Tree& tree) {
  switch (tree.kind()) {
    case Tree::Kind::Constant: return Expression(tree.value());
    case Tree::Kind::Symbol: return Expression(tree.symbol());
    case Tree::Kind::Sum: {
      std::vector<Term> all;
      for (const auto& op : tree.operands()) {
        const auto n = normalize(op);
        all.insert(all.end(), n.terms().begin(), n.terms().end());
      }
      return Expression::from_terms(std::move(all));
    }
    case Tree::Kind::Product: {
      Expression acc(1);
      for (const auto& op : tree.operands()) acc = acc * normalize(op);
      return acc;
    }
    case Tree::Kind::Power: return normalize(tree.operands().front()).pow(tree.exponent());
    case Tree::Kind::ParamExp: return Expression::param_exp(tree.symbol(), tree.value());
    case Tree::Kind::Function: {
      std::vector<Expression> args;
      for (const auto& op : tree.operands()) args.push_back(normalize(op));
      return Expression::function(tree.name(), std::move(args), tree.orders());
    }
  }
  return Expression();
}

// ---------------------------------------------------------------------------
// Calculus

namespace {

Expression diff_function(const FunctionCall& f, const Symbol& s) {
  Expression result;
  for (std::size_t p = 0; p < f.args.size(); ++p) {
    const auto& arg = f.args[p];
    if (!arg.depends_on(s)) continue;
    if (!arg.is_symbol()) {
      throw UnsupportedComposition("derivative of " + f.name + " through composite argument " + to_string(arg));
    }
    auto orders = f.orders;
    orders[p] += 1;
    result += Expression::function(f.name, f.args, std::move(orders));
  }
  return result;
}

Monomial without_index(const Monomial& m, std::size_t skip) {
  Monomial out;
  out.rates = m.rates;
  for (std::size_t i = 0; i < m.powers.size(); ++i) {
    if (i != skip) out.powers.push_back(m.powers[i]);
  }
  return out;
}

}  // namespace

Expression diff(const Expression& e, const Symbol& s) {
  std::vector<Term> out;
  Expression chain;
  for (const auto& t : e.terms()) {
    for (std::size_t i = 0; i < t.mono.powers.size(); ++i) {
      const auto& [atom, pw] = t.mono.powers[i];
      if (atom.is_symbol()) {
        if (atom.symbol() != s) continue;
        Monomial m = t.mono;
        if (pw == 1) {
          m.powers.erase(m.powers.begin() + static_cast<std::ptrdiff_t>(i));
        } else {
          m.powers[i].second = pw - 1;
        }
        out.push_back(Term{t.coeff * pw, std::move(m)});
      } else {
        const auto inner = diff_function(atom.function(), s);
        if (inner.is_zero()) continue;
        chain += Expression::monomial(t.coeff * pw, without_index(t.mono, i)) * Expression::atom(atom, pw - 1) * inner;
      }
    }
    for (const auto& [p, k] : t.mono.rates) {
      if (p == s) out.push_back(Term{t.coeff * k, t.mono});
    }
  }
  return Expression::from_terms(std::move(out)) + chain;
}

namespace {

Expression substitute_exponential(const Symbol& s, const Rational& k, const Expression& replacement) {
  Expression result(1);
  for (const auto& t : replacement.terms()) {
    const bool linear_param = t.mono.rates.empty() && t.mono.powers.size() == 1 && t.mono.powers[0].second == 1 &&
                              t.mono.powers[0].first.is_symbol() &&
                              t.mono.powers[0].first.symbol().role() == Role::GroupParameter;
    if (!linear_param) {
      throw Unsupported("exponential in " + s.display() + " cannot absorb replacement " + to_string(replacement));
    }
    result *= Expression::param_exp(t.mono.powers[0].first.symbol(), k * t.coeff);
  }
  return result;
}

}  // namespace

Expression substitute(const Expression& e, const Substitution& rules) {
  if (rules.empty() || e.is_zero()) return e;
  Expression result;
  for (const auto& t : e.terms()) {
    Expression value(t.coeff);
    Monomial kept;
    for (const auto& [atom, pw] : t.mono.powers) {
      if (atom.is_symbol()) {
        auto it = rules.find(atom.symbol());
        if (it != rules.end()) {
          value *= it->second.pow(pw);
        } else {
          kept.powers.emplace_back(atom, pw);
        }
      } else {
        const auto& f = atom.function();
        std::vector<Expression> args;
        args.reserve(f.args.size());
        bool changed = false;
        for (const auto& a : f.args) {
          args.push_back(substitute(a, rules));
          changed = changed || !(args.back() == a);
        }
        if (changed) {
          value *= Expression::function(f.name, std::move(args), f.orders).pow(pw);
        } else {
          kept.powers.emplace_back(atom, pw);
        }
      }
    }
    for (const auto& [p, k] : t.mono.rates) {
      auto it = rules.find(p);
      if (it != rules.end()) {
        value *= substitute_exponential(p, k, it->second);
      } else {
        kept.rates.emplace_back(p, k);
      }
    }
    result += value * Expression::monomial(Rational(1), std::move(kept));
  }
  return result;
}

MonomialMap collect(const Expression& e, const std::vector<Symbol>& vars) {
  std::map<Symbol, std::size_t> index;
  for (std::size_t i = 0; i < vars.size(); ++i) index.emplace(vars[i], i);
  std::map<std::vector<int>, std::vector<Term>> buckets;
  for (const auto& t : e.terms()) {
    std::vector<int> exps(vars.size(), 0);
    Monomial rest;
    rest.rates = t.mono.rates;
    for (const auto& [p, k] : t.mono.rates) {
      if (index.count(p)) throw NonPolynomial("exponential in collected variable " + p.display());
    }
    for (const auto& [atom, pw] : t.mono.powers) {
      if (atom.is_symbol()) {
        auto it = index.find(atom.symbol());
        if (it != index.end()) {
          if (pw < 0) throw NonPolynomial("negative power of " + atom.symbol().display());
          exps[it->second] = pw;
          continue;
        }
      } else {
        for (const auto& arg : atom.function().args) {
          for (const auto& v : vars) {
            if (arg.depends_on(v)) {
              throw NonPolynomial("collected variable " + v.display() + " inside " + atom.function().name);
            }
          }
        }
      }
      rest.powers.emplace_back(atom, pw);
    }
    buckets[exps].push_back(Term{t.coeff, std::move(rest)});
  }
  MonomialMap out;
  for (auto& [exps, terms] : buckets) {
    auto coeff = Expression::from_terms(std::move(terms));
    if (!coeff.is_zero()) out.emplace(exps, std::move(coeff));
  }
  return out;
}

Expression reassemble(const MonomialMap& map, const std::vector<Symbol>& vars) {
  Expression result;
  for (const auto& [exps, coeff] : map) {
    Expression m(1);
    for (std::size_t i = 0; i < vars.size(); ++i) m *= Expression(vars[i]).pow(exps[i]);
    result += coeff * m;
  }
  return result;
}

namespace {

bool is_polynomial(const Expression& e) {
  for (const auto& t : e.terms()) {
    if (!t.mono.rates.empty()) return false;
    for (const auto& [atom, pw] : t.mono.powers) {
      if (pw < 0) return false;
    }
  }
  return true;
}

// Graded lex with smaller atoms as more significant variables.
bool graded_lex_less(const Monomial& a, const Monomial& b) {
  const int da = a.degree();
  const int db = b.degree();
  if (da != db) return da < db;
  auto i = a.powers.begin();
  auto j = b.powers.begin();
  while (i != a.powers.end() || j != b.powers.end()) {
    if (j == b.powers.end() || (i != a.powers.end() && i->first < j->first)) return false;
    if (i == a.powers.end() || j->first < i->first) return true;
    if (i->second != j->second) return i->second < j->second;
    ++i;
    ++j;
  }
  return false;
}

const Term& leading_term(const Expression& e) {
  const Term* best = &e.terms().front();
  for (const auto& t : e.terms()) {
    if (graded_lex_less(best->mono, t.mono)) best = &t;
  }
  return *best;
}

}  // namespace

std::optional<Expression> exact_divide(const Expression& a, const Expression& b) {
  if (b.is_zero()) throw DegenerateInput("exact division by zero");
  if (!is_polynomial(a) || !is_polynomial(b)) throw Unsupported("exact division requires polynomial operands");
  if (a.is_zero()) return Expression();
  const Term lead_b = leading_term(b);
  const Monomial lead_inv = inverse(lead_b.mono);
  Expression remainder = a;
  Expression quotient;
  while (!remainder.is_zero()) {
    const Term& lead_r = leading_term(remainder);
    Monomial q = lead_r.mono * lead_inv;
    for (const auto& [atom, pw] : q.powers) {
      if (pw < 0) return std::nullopt;
    }
    auto step = Expression::monomial(lead_r.coeff / lead_b.coeff, std::move(q));
    quotient += step;
    remainder -= step * b;
  }
  return quotient;
}

Expression evaluate_parameter(const Expression& e, const Symbol& s, const ParamValue& value) {
  if (value.kind == ParamValue::Kind::Multiplicative && value.value <= 0) {
    throw Unsupported("multiplicative parameter value must be positive");
  }
  Expression result;
  for (const auto& t : e.terms()) {
    Expression acc(t.coeff);
    Monomial kept;
    for (const auto& [atom, pw] : t.mono.powers) {
      if (atom.is_symbol()) {
        if (atom.symbol() == s) {
          if (value.kind == ParamValue::Kind::Multiplicative) {
            throw Unsupported("polynomial occurrence of " + s.display() + " under multiplicative evaluation");
          }
          acc *= Expression(value.value).pow(pw);
        } else {
          kept.powers.emplace_back(atom, pw);
        }
      } else {
        const auto& f = atom.function();
        std::vector<Expression> args;
        for (const auto& a : f.args) args.push_back(evaluate_parameter(a, s, value));
        acc *= Expression::function(f.name, std::move(args), f.orders).pow(pw);
      }
    }
    for (const auto& [p, k] : t.mono.rates) {
      if (p != s) {
        kept.rates.emplace_back(p, k);
        continue;
      }
      if (value.kind == ParamValue::Kind::Additive) {
        throw Unsupported("exponential in " + s.display() + " under additive evaluation");
      }
      if (!is_integer(k)) throw Unsupported("non-integer rate under multiplicative evaluation");
      acc *= Expression(value.value).pow(static_cast<int>(k.get_num().get_si()));
    }
    result += acc * Expression::monomial(Rational(1), std::move(kept));
  }
  return result;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

std::string atom_string(const Atom& atom, PrintStyle style);

std::string function_string(const FunctionCall& f, PrintStyle style) {
  std::string head = f.name;
  const bool derived = std::any_of(f.orders.begin(), f.orders.end(), [](int o) { return o != 0; });
  if (derived) {
    bool plain = std::all_of(f.args.begin(), f.args.end(), [](const Expression& a) { return a.is_symbol(); });
    std::string suffix;
    for (std::size_t i = 0; i < f.orders.size(); ++i) {
      for (int k = 0; k < f.orders[i]; ++k) {
        suffix += plain ? f.args[i].as_symbol().display() : std::to_string(i + 1);
      }
    }
    head += "_" + suffix;
  }
  std::string out = head + "(";
  for (std::size_t i = 0; i < f.args.size(); ++i) {
    if (i) out += ", ";
    out += to_string(f.args[i], style);
  }
  return out + ")";
}

std::string atom_string(const Atom& atom, PrintStyle style) {
  if (!atom.is_symbol()) return function_string(atom.function(), style);
  return style == PrintStyle::Source ? atom.symbol().source() : atom.symbol().display();
}

std::string monomial_string(const Monomial& m, PrintStyle style) {
  std::string out;
  for (const auto& [atom, pw] : m.powers) {
    if (!out.empty()) out += "*";
    out += atom_string(atom, style);
    if (pw < 0) {
      out += "^(" + std::to_string(pw) + ")";
    } else if (pw != 1) {
      out += "^" + std::to_string(pw);
    }
  }
  for (const auto& [s, k] : m.rates) {
    if (!out.empty()) out += "*";
    const std::string& name = s.display();
    if (k == 1) {
      out += "exp(" + name + ")";
    } else if (k == -1) {
      out += "exp(-" + name + ")";
    } else {
      out += "exp(" + to_string(k) + "*" + name + ")";
    }
  }
  return out;
}

}  // namespace

std::string to_string(const Expression& e, PrintStyle style) {
  if (e.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : e.terms()) {
    const bool negative = t.coeff < 0;
    Rational mag = negative ? Rational(-t.coeff) : t.coeff;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    if (t.mono.is_one()) {
      os << to_string(mag);
      continue;
    }
    if (mag != 1) os << to_string(mag) << "*";
    os << monomial_string(t.mono, style);
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Expression& e) { return os << to_string(e); }

}  // namespace liesym
