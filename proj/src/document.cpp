#include "liesym/document.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "liesym/errors.hpp"

namespace liesym {

namespace {

struct Token {
  enum class Kind { Ident, Number, Op, End };
  Kind kind = Kind::End;
  std::string text;
  int line = 1;
  int column = 1;
};

std::vector<Token> tokenize(std::string_view text, int line, int column0) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto col = [&](std::size_t at) { return column0 + static_cast<int>(at); };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) ++i;
      out.push_back({Token::Kind::Ident, std::string(text.substr(start, i - start)), line, col(start)});
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (i < text.size() && text[i] == '.') {
        ++i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      }
      const std::string lit(text.substr(start, i - start));
      if (lit == ".") throw ParseError("unexpected '.'", line, col(start));
      out.push_back({Token::Kind::Number, lit, line, col(start)});
    } else if (std::string_view("+-*/^(),=>").find(c) != std::string_view::npos) {
      ++i;
      out.push_back({Token::Kind::Op, std::string(1, c), line, col(start)});
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line, col(start));
    }
  }
  out.push_back({Token::Kind::End, "", line, col(text.size())});
  return out;
}

Rational number_value(const std::string& lit) {
  const auto dot = lit.find('.');
  if (dot == std::string::npos) return Rational(Integer(lit, 10));
  const std::string whole = lit.substr(0, dot);
  const std::string frac = lit.substr(dot + 1);
  Integer den = 1;
  for (std::size_t k = 0; k < frac.size(); ++k) den *= 10;
  const Integer num((whole.empty() ? "0" : whole) + frac, 10);
  Rational q(num, den);
  q.canonicalize();
  return q;
}

bool only_parameters(const Expression& e) {
  if (!e.is_single_term()) return e.is_rational();
  const auto& mono = e.terms().front().mono;
  if (!mono.rates.empty()) return false;
  for (const auto& [atom, pw] : mono.powers) {
    if (!atom.is_symbol() || atom.symbol().role() != Role::Parameter) return false;
  }
  return true;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, const Scope& scope) : toks_(std::move(tokens)), scope_(scope) {}

  const Token& peek() const { return toks_[pos_]; }
  bool at_op(const char* op) const { return peek().kind == Token::Kind::Op && peek().text == op; }
  bool at_end() const { return peek().kind == Token::Kind::End; }
  Token next() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::string& message, const Token& at) const {
    throw ParseError(message, at.line, at.column);
  }

  void expect(const char* op) {
    if (!at_op(op)) fail(std::string("expected '") + op + "'" + found(), peek());
    ++pos_;
  }

  std::string found() const {
    if (at_end()) return ", found end of line";
    return ", found '" + peek().text + "'";
  }

  void expect_end() {
    if (!at_end()) fail("unexpected '" + peek().text + "'", peek());
  }

  Token ident() {
    if (peek().kind != Token::Kind::Ident) fail("expected a name" + found(), peek());
    return next();
  }

  Expression expression() {
    Expression acc = term();
    while (at_op("+") || at_op("-")) {
      const bool minus = next().text == "-";
      Expression rhs = term();
      acc = minus ? acc - rhs : acc + rhs;
    }
    return acc;
  }

  Expression term() {
    Expression acc = unary();
    while (at_op("*") || at_op("/")) {
      const Token op = next();
      Expression rhs = unary();
      if (op.text == "*") {
        acc = acc * rhs;
        continue;
      }
      if (rhs.is_zero()) fail("division by zero", op);
      if (scope_.polynomial_only && !only_parameters(rhs)) {
        fail("non-polynomial: division by '" + to_string(rhs) + "'", op);
      }
      if (!rhs.is_single_term()) fail("division by the multi-term expression '" + to_string(rhs) + "'", op);
      acc = acc / rhs;
    }
    return acc;
  }

  Expression unary() {
    if (at_op("-")) {
      next();
      return -unary();
    }
    if (at_op("+")) {
      next();
      return unary();
    }
    return power();
  }

  Expression power() {
    Expression base = primary();
    if (!at_op("^")) return base;
    const Token op = next();
    const Token at = peek();
    Expression exponent = unary();
    if (!exponent.is_rational() || !is_integer(exponent.rational())) fail("exponent must be an integer", at);
    const Integer k = exponent.rational().get_num();
    if (!k.fits_sint_p()) fail("exponent out of range", at);
    const int n = static_cast<int>(k.get_si());
    if (n < 0 && base.is_zero()) fail("zero to a negative power", op);
    if (n < 0 && !base.is_single_term()) fail("negative power of a multi-term expression", op);
    if (n < 0 && scope_.polynomial_only && !only_parameters(base)) {
      fail("non-polynomial: negative power of '" + to_string(base) + "'", op);
    }
    return base.pow(n);
  }

  Expression primary() {
    const Token t = peek();
    if (t.kind == Token::Kind::Number) {
      next();
      return Expression(number_value(t.text));
    }
    if (at_op("(")) {
      next();
      Expression e = expression();
      expect(")");
      return e;
    }
    if (t.kind != Token::Kind::Ident) fail("expected an expression" + found(), t);
    next();
    if (at_op("(")) {
      if (t.text == "d") return derivative(t);
      if (t.text == "exp") return exponential(t);
      if (scope_.allow_functions && !scope_.names.count(t.text)) return function(t);
      if (!scope_.dependents.count(t.text)) fail("'" + t.text + "' is not a function", t);
      // u(x, y) names the dependent variable itself.
      next();
      for (std::size_t k = 0; k < scope_.axes.size(); ++k) {
        if (k) expect(",");
        const Token a = ident();
        if (a.text != scope_.axes[k]) fail("expected '" + scope_.axes[k] + "'", a);
      }
      expect(")");
    }
    return Expression(resolve(t));
  }

  Symbol resolve(const Token& t) const {
    if (auto it = scope_.names.find(t.text); it != scope_.names.end()) return it->second;
    if (auto jet = display_jet(t.text)) return *jet;
    fail("undeclared symbol '" + t.text + "'", t);
  }

  // u_xy -> d(u, x, y); the suffix is split greedily into axis names.
  std::optional<Symbol> display_jet(const std::string& name) const {
    const auto underscore = name.find('_');
    if (underscore == std::string::npos) return std::nullopt;
    const std::string base = name.substr(0, underscore);
    if (!scope_.dependents.count(base)) return std::nullopt;
    std::string_view rest(name);
    rest.remove_prefix(underscore + 1);
    if (rest.empty()) return std::nullopt;
    std::vector<int> orders(scope_.axes.size(), 0);
    while (!rest.empty()) {
      std::size_t best = scope_.axes.size();
      for (std::size_t k = 0; k < scope_.axes.size(); ++k) {
        const auto& a = scope_.axes[k];
        if (rest.substr(0, a.size()) == a && (best == scope_.axes.size() || a.size() > scope_.axes[best].size())) {
          best = k;
        }
      }
      if (best == scope_.axes.size()) return std::nullopt;
      orders[best] += 1;
      rest.remove_prefix(scope_.axes[best].size());
    }
    return Symbol::jet(base, orders, scope_.axes);
  }

  Expression derivative(const Token& head) {
    expect("(");
    Expression target = expression();
    std::vector<Token> vars;
    while (at_op(",")) {
      next();
      vars.push_back(ident());
    }
    expect(")");
    if (vars.empty()) fail("d(...) needs at least one variable", head);
    for (const auto& v : vars) {
      const Symbol s = resolve(v);
      if (target.is_symbol() && target.as_symbol().is_jet_like()) {
        const auto& axes = scope_.axes;
        const auto k = std::find(axes.begin(), axes.end(), s.name()) - axes.begin();
        if (s.role() != Role::Independent || k == static_cast<long>(axes.size())) {
          fail("'" + v.text + "' is not an independent variable", v);
        }
        target = Expression(target.as_symbol().derivative(static_cast<std::size_t>(k)));
      } else {
        target = diff(target, s);
      }
    }
    return target;
  }

  Expression exponential(const Token& head) {
    expect("(");
    const Expression arg = expression();
    expect(")");
    Expression out(1);
    for (const auto& t : arg.terms()) {
      if (t.mono.is_one()) {
        if (t.coeff != 0) fail("exp of a nonzero constant is not rational", head);
        continue;
      }
      const auto& powers = t.mono.powers;
      if (!t.mono.rates.empty() || powers.size() != 1 || powers.front().second != 1 ||
          !powers.front().first.is_symbol() || powers.front().first.symbol().role() != Role::GroupParameter) {
        fail("exp(...) takes a rational linear form in group parameters", head);
      }
      out *= Expression::param_exp(powers.front().first.symbol(), t.coeff);
    }
    return out;
  }

  Expression function(const Token& head) {
    expect("(");
    std::vector<Expression> args;
    if (!at_op(")")) {
      args.push_back(expression());
      while (at_op(",")) {
        next();
        args.push_back(expression());
      }
    }
    expect(")");
    if (args.empty()) fail("function '" + head.text + "' needs arguments", head);
    return Expression::function(head.text, std::move(args));
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const Scope& scope_;
};

bool is_polynomial(const Expression& e) {
  for (const auto& t : e.terms()) {
    if (!t.mono.rates.empty()) return false;
    for (const auto& [atom, pw] : t.mono.powers) {
      if (!atom.is_symbol()) return false;
      if (pw < 0 && atom.symbol().role() != Role::Parameter) return false;
    }
  }
  return true;
}

void add_name(Scope& scope, const Token& t, const Symbol& s) {
  if (t.text == "d" || t.text == "exp" || t.text == "D") {
    throw ParseError("'" + t.text + "' is reserved", t.line, t.column);
  }
  if (!scope.names.emplace(t.text, s).second) throw ParseError("'" + t.text + "' is already declared", t.line, t.column);
}

}  // namespace

void Scope::add_group_parameter(const std::string& name) { names.insert_or_assign(name, Symbol(Role::GroupParameter, name)); }

SystemDocument parse_system(std::string_view text) {
  SystemDocument doc;
  Scope scope;
  std::vector<std::pair<Symbol, Token>> leads;
  int line = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    ++line;
    const auto end = std::min(text.find('\n', start), text.size());
    std::string_view raw = text.substr(start, end - start);
    start = end + 1;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    Parser p(tokenize(raw, line, 1), scope);
    if (p.at_end()) continue;
    const Token kw = p.ident();
    if (kw.text == "param") {
      const Token name = p.ident();
      bool positive = false;
      if (p.at_op(">")) {
        p.next();
        const Token zero = p.next();
        if (zero.kind != Token::Kind::Number || number_value(zero.text) != 0) p.fail("expected '0'", zero);
        positive = true;
      }
      p.expect_end();
      add_name(scope, name, Symbol(Role::Parameter, name.text));
      doc.parameters.push_back({name.text, positive});
    } else if (kw.text == "independent") {
      if (!doc.independents.empty()) p.fail("independent variables are already declared", kw);
      if (!doc.dependents.empty()) p.fail("declare independent variables before dependent ones", kw);
      while (!p.at_end()) {
        const Token name = p.ident();
        add_name(scope, name, Symbol(Role::Independent, name.text));
        doc.independents.push_back(name.text);
        if (p.at_op(",")) p.next();
      }
      scope.axes = doc.independents;
    } else if (kw.text == "dependent") {
      if (doc.independents.empty()) p.fail("declare independent variables first", kw);
      const Token name = p.ident();
      p.expect("(");
      std::vector<std::string> args;
      for (std::size_t k = 0; k < doc.independents.size(); ++k) {
        if (k) p.expect(",");
        const Token a = p.ident();
        if (a.text != doc.independents[k]) p.fail("dependent variables take (" + [&] {
          std::string s;
          for (std::size_t j = 0; j < doc.independents.size(); ++j) s += (j ? ", " : "") + doc.independents[j];
          return s;
        }() + ")", a);
        args.push_back(a.text);
      }
      p.expect(")");
      p.expect_end();
      if (name.text.find('_') != std::string::npos) p.fail("dependent names may not contain '_'", name);
      add_name(scope, name, Symbol::jet(name.text, std::vector<int>(doc.independents.size(), 0), doc.independents));
      scope.dependents.insert(name.text);
      doc.dependents.push_back({name.text, args});
    } else if (kw.text == "eq") {
      if (doc.dependents.empty()) p.fail("declare dependent variables first", kw);
      const Token at = p.peek();
      Expression lhs = p.expression();
      p.expect("=");
      Expression rhs = p.expression();
      p.expect_end();
      if (!is_polynomial(lhs - rhs)) p.fail("non-polynomial equation", at);
      if ((lhs - rhs).is_zero()) p.fail("equation is identically zero", at);
      doc.equations.push_back({lhs, rhs});
    } else if (kw.text == "lead") {
      const Token at = p.peek();
      Expression e = p.expression();
      p.expect_end();
      if (!e.is_symbol() || e.as_symbol().role() != Role::Jet) p.fail("lead must be a jet coordinate", at);
      leads.emplace_back(e.as_symbol(), at);
      doc.leads.push_back(e.as_symbol());
    } else if (kw.text == "option") {
      const Token name = p.ident();
      if (p.at_op("=")) p.next();
      const Token value = p.next();
      if (value.kind != Token::Kind::Number || value.text.find('.') != std::string::npos) {
        p.fail("option value must be a non-negative integer", value);
      }
      p.expect_end();
      const int v = std::stoi(value.text);
      if (name.text == "ansatz_degree") {
        doc.ansatz_degree = v;
      } else if (name.text == "invariant_order") {
        doc.invariant_order = v;
      } else {
        p.fail("unknown option '" + name.text + "'", name);
      }
    } else {
      p.fail("unknown statement '" + kw.text + "'", kw);
    }
  }
  if (doc.equations.empty()) throw ParseError("no equations", line, 1);
  for (const auto& [lead, at] : leads) {
    const bool used = std::any_of(doc.equations.begin(), doc.equations.end(),
                                  [&](const Equation& e) { return (e.lhs - e.rhs).depends_on(lead); });
    if (!used) throw ParseError("lead '" + lead.display() + "' does not occur in any equation", at.line, at.column);
  }
  return doc;
}

std::string print_system(const SystemDocument& doc) {
  std::ostringstream os;
  for (const auto& p : doc.parameters) os << "param " << p.name << (p.positive ? " > 0" : "") << "\n";
  os << "independent ";
  for (std::size_t i = 0; i < doc.independents.size(); ++i) os << (i ? ", " : "") << doc.independents[i];
  os << "\n";
  for (const auto& d : doc.dependents) {
    os << "dependent " << d.name << "(";
    for (std::size_t i = 0; i < d.args.size(); ++i) os << (i ? ", " : "") << d.args[i];
    os << ")\n";
  }
  for (const auto& e : doc.equations) {
    os << "eq " << to_string(e.lhs, PrintStyle::Source) << " = " << to_string(e.rhs, PrintStyle::Source) << "\n";
  }
  for (const auto& l : doc.leads) os << "lead " << l.source() << "\n";
  if (doc.ansatz_degree) os << "option ansatz_degree " << *doc.ansatz_degree << "\n";
  if (doc.invariant_order) os << "option invariant_order " << *doc.invariant_order << "\n";
  return os.str();
}

Scope make_scope(const SystemDocument& doc) {
  Scope scope;
  for (const auto& p : doc.parameters) scope.names.emplace(p.name, Symbol(Role::Parameter, p.name));
  for (const auto& x : doc.independents) scope.names.emplace(x, Symbol(Role::Independent, x));
  for (const auto& d : doc.dependents) {
    scope.names.emplace(d.name, Symbol::jet(d.name, std::vector<int>(doc.independents.size(), 0), doc.independents));
    scope.dependents.insert(d.name);
  }
  scope.axes = doc.independents;
  return scope;
}

Expression parse_expression(std::string_view text, const Scope& scope) {
  Parser p(tokenize(text, 1, 1), scope);
  Expression e = p.expression();
  p.expect_end();
  return e;
}

VectorField parse_field(std::string_view text, const Scope& scope, const JetSpace& js) {
  const auto coords = js.base_coordinates();
  // Comma list form: split at top-level commas.
  std::vector<std::string_view> parts;
  int depth = 0;
  std::size_t from = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(') ++depth;
    if (text[i] == ')') --depth;
    if (text[i] == ',' && depth == 0) {
      parts.push_back(text.substr(from, i - from));
      from = i + 1;
    }
  }
  parts.push_back(text.substr(from));
  if (parts.size() > 1) {
    if (parts.size() != coords.size()) {
      throw ParseError("expected " + std::to_string(coords.size()) + " coefficients, got " +
                           std::to_string(parts.size()),
                       1, 1);
    }
    std::vector<Expression> coeffs;
    int column = 1;
    for (const auto& part : parts) {
      Parser p(tokenize(part, 1, column), scope);
      coeffs.push_back(p.expression());
      p.expect_end();
      column += static_cast<int>(part.size()) + 1;
    }
    return VectorField(js, coeffs);
  }
  // Operator form: D(z) markers are replaced by fresh symbols and collected.
  Scope marked = scope;
  std::vector<Symbol> markers;
  for (const auto& z : coords) {
    markers.emplace_back(Role::AnsatzUnknown, "D[" + z.display() + "]");
  }
  std::string rewritten;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == 'D' && (i == 0 || !(std::isalnum(static_cast<unsigned char>(text[i - 1])) || text[i - 1] == '_'))) {
      std::size_t j = i + 1;
      while (j < text.size() && text[j] == ' ') ++j;
      if (j < text.size() && text[j] == '(') {
        const auto close = text.find(')', j);
        if (close == std::string_view::npos) throw ParseError("unterminated D(", 1, static_cast<int>(i) + 1);
        std::string inner(text.substr(j + 1, close - j - 1));
        inner.erase(std::remove(inner.begin(), inner.end(), ' '), inner.end());
        std::size_t k = 0;
        while (k < coords.size() && coords[k].display() != inner) ++k;
        if (k == coords.size()) throw ParseError("D(" + inner + ") is not a base coordinate", 1, static_cast<int>(i) + 1);
        const std::string name = "_D" + std::to_string(k);
        marked.names.insert_or_assign(name, markers[k]);
        rewritten += name;
        // Padding keeps error columns aligned with the input.
        if (close + 1 - i > name.size()) rewritten += std::string(close + 1 - i - name.size(), ' ');
        i = close + 1;
        continue;
      }
    }
    rewritten += text[i++];
  }
  const Expression e = parse_expression(rewritten, marked);
  const auto split = collect(e, markers);
  std::vector<Expression> coeffs(coords.size());
  for (const auto& [exps, coeff] : split) {
    int total = 0;
    std::size_t at = 0;
    for (std::size_t k = 0; k < exps.size(); ++k) {
      total += exps[k];
      if (exps[k]) at = k;
    }
    if (total != 1) throw ParseError("each term needs exactly one D(...) factor", 1, 1);
    coeffs[at] = coeff;
  }
  return VectorField(js, coeffs);
}

Vector parse_vector(std::string_view text) {
  Vector out;
  Scope empty;
  std::size_t from = 0;
  int column = 1;
  while (true) {
    const auto comma = text.find(',', from);
    const auto part = text.substr(from, comma == std::string_view::npos ? std::string_view::npos : comma - from);
    Parser p(tokenize(part, 1, column), empty);
    const Token at = p.peek();
    const Expression e = p.expression();
    p.expect_end();
    if (!e.is_rational()) p.fail("expected a rational number", at);
    out.push_back(e.rational());
    if (comma == std::string_view::npos) break;
    column += static_cast<int>(comma - from) + 1;
    from = comma + 1;
  }
  return out;
}

JetSpace jet_space(const SystemDocument& doc) {
  int order = 1;
  for (const auto& e : doc.equations) order = std::max(order, jet_order(e.lhs - e.rhs));
  for (const auto& l : doc.leads) order = std::max(order, l.order());
  std::vector<std::string> deps;
  for (const auto& d : doc.dependents) deps.push_back(d.name);
  return JetSpace(doc.independents, deps, order);
}

PDESystem to_system(const SystemDocument& doc) {
  const JetSpace js = jet_space(doc);
  std::vector<Expression> eqs;
  for (const auto& e : doc.equations) eqs.push_back(e.lhs - e.rhs);

  auto solve_for = [](const Expression& e, const Symbol& lead) -> std::optional<Expression> {
    const auto split = collect(e, {lead});
    Expression coeff;
    Expression rest;
    for (const auto& [exps, c] : split) {
      if (exps[0] > 1) return std::nullopt;
      (exps[0] == 1 ? coeff : rest) = c;
    }
    if (coeff.is_zero() || !coeff.is_single_term()) return std::nullopt;
    return -rest / coeff;
  };

  std::vector<SolvedRule> rules;
  std::vector<bool> taken(eqs.size(), false);
  if (!doc.leads.empty()) {
    for (const auto& lead : doc.leads) {
      bool placed = false;
      for (std::size_t i = 0; i < eqs.size() && !placed; ++i) {
        if (taken[i] || !eqs[i].depends_on(lead)) continue;
        auto rhs = solve_for(eqs[i], lead);
        if (!rhs) throw Unsupported("equation " + std::to_string(i + 1) + " cannot be solved for " + lead.display());
        rules.push_back({lead, *rhs});
        taken[i] = true;
        placed = true;
      }
      if (!placed) throw Unsupported("no free equation contains lead " + lead.display());
    }
  } else {
    for (std::size_t i = 0; i < eqs.size(); ++i) {
      std::vector<Symbol> jets;
      for (const auto& s : eqs[i].symbols()) {
        if (s.role() == Role::Jet) jets.push_back(s);
      }
      std::sort(jets.begin(), jets.end(), [](const Symbol& a, const Symbol& b) {
        if (a.order() != b.order()) return a.order() > b.order();
        return a > b;
      });
      bool placed = false;
      for (const auto& j : jets) {
        const bool used = std::any_of(rules.begin(), rules.end(), [&](const SolvedRule& r) { return r.lead == j; });
        if (used) continue;
        if (auto rhs = solve_for(eqs[i], j)) {
          rules.push_back({j, *rhs});
          placed = true;
          break;
        }
      }
      if (!placed) throw Unsupported("equation " + std::to_string(i + 1) + " has no jet coordinate to solve for");
    }
  }
  std::vector<Symbol> params;
  for (const auto& p : doc.parameters) params.emplace_back(Role::Parameter, p.name);
  return PDESystem(js, eqs, rules, params);
}

}  // namespace liesym
