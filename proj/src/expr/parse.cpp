#include "curvkit/expr/parse.hpp"

#include <cctype>
#include <set>

namespace curvkit {

Var ParseContext::add_coordinate(const std::string& name) {
  Var v = coordinate_symbol(name);
  coordinates.push_back(v);
  return v;
}

Var ParseContext::add_parameter(const std::string& name) {
  Var v = parameter_symbol(name);
  parameters.push_back(v);
  return v;
}

void ParseContext::add_opaque(const std::string& name, Var argument) { opaque[name] = argument; }

Var ParseContext::find(std::string_view name) const {
  for (Var v : coordinates)
    if (v->name == name) return v;
  for (Var v : parameters)
    if (v->name == name) return v;
  return nullptr;
}

namespace {

const std::set<std::string, std::less<>> kReserved = {"sin", "cos", "tan", "log", "ln", "sqrt",
                                                      "sinh", "cosh", "tanh", "abs"};
constexpr long kMaxExponent = 1000;

class Parser {
 public:
  Parser(std::string_view text, const ParseContext& ctx) : s_(text), ctx_(ctx) {}

  Expr parse() {
    skip();
    if (at_end()) throw ParseError("empty expression", pos_);
    Expr e = expr();
    if (!at_end()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
    return e;
  }

 private:
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[pos_]; }
  void skip() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    skip();
    return true;
  }
  void expect(char c) {
    if (!accept(c)) {
      if (at_end()) throw ParseError(std::string("expected '") + c + "' but input ended", pos_);
      throw ParseError(std::string("expected '") + c + "'", pos_);
    }
  }

  Expr expr() {
    Expr e = term();
    for (;;) {
      if (accept('+')) e = e + term();
      else if (accept('-')) e = e - term();
      else return e;
    }
  }

  Expr term() {
    Expr e = factor();
    for (;;) {
      if (accept('*')) {
        e = e * factor();
      } else if (peek() == '/') {
        ++pos_;
        skip();
        std::size_t at = pos_;
        Expr d = factor();
        if (d.is_zero()) throw ParseError("division by zero", at);
        e = e / d;
      } else {
        return e;
      }
    }
  }

  Expr factor() {
    if (accept('-')) return -factor();
    Expr b = base();
    if (accept('^')) {
      bool negative = accept('-');
      std::size_t at = pos_;
      if (!std::isdigit(static_cast<unsigned char>(peek()))) throw ParseError("exponent must be an integer", at);
      mpz_class n = integer();
      if (n > kMaxExponent) throw ParseError("exponent too large", at);
      long k = n.get_si();
      if (negative) {
        if (b.is_zero()) throw ParseError("division by zero", at);
        k = -k;
      }
      b = b.pow(static_cast<int>(k));
    }
    return b;
  }

  mpz_class integer() {
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    mpz_class n(std::string(s_.substr(start, pos_ - start)));
    skip();
    return n;
  }

  Expr base() {
    std::size_t start = pos_;
    char c = peek();
    if (at_end()) throw ParseError("unexpected end of input", pos_);
    if (std::isdigit(static_cast<unsigned char>(c))) return Expr(mpq_class(integer()));
    if (accept('(')) {
      Expr e = expr();
      expect(')');
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return named(start);
    throw ParseError(std::string("unexpected '") + c + "'", start);
  }

  Expr named(std::size_t start) {
    while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') ++pos_;
    std::string name(s_.substr(start, pos_ - start));
    int primes = 0;
    while (peek() == '\'') {
      ++primes;
      ++pos_;
    }
    skip();
    if (kReserved.count(name)) throw ParseError("unsupported function '" + name + "'", start);
    if (name == "exp") {
      if (primes) throw ParseError("unexpected prime after 'exp'", start);
      if (peek() != '(') throw ParseError("'exp' requires an argument", start);
      expect('(');
      std::size_t arg_at = pos_;
      Expr arg = expr();
      expect(')');
      return Expr::exponential(linear_form(arg, arg_at));
    }
    auto op = ctx_.opaque.find(name);
    if (op != ctx_.opaque.end()) {
      if (peek() != '(') throw ParseError("function '" + name + "' requires an argument", start);
      expect('(');
      std::size_t arg_at = pos_;
      Expr arg = expr();
      expect(')');
      if (arg != Expr::variable(op->second))
        throw ParseError("function '" + name + "' must be applied to " + op->second->name, arg_at);
      return Expr::variable(opaque_symbol(name, primes, op->second));
    }
    if (primes) throw ParseError("prime on non-function '" + name + "'", start);
    if (Var v = ctx_.find(name)) {
      if (peek() == '(') throw ParseError("'" + name + "' is not a function", pos_);
      return Expr::variable(v);
    }
    if (peek() == '(') throw ParseError("undeclared function '" + name + "'", start);
    throw ParseError("undeclared identifier '" + name + "'", start);
  }

  LinearForm linear_form(const Expr& arg, std::size_t at) {
    LinearForm form;
    if (arg.is_zero()) return form;
    if (!arg.is_polynomial()) throw ParseError("exp argument must be linear in coordinates", at);
    for (const auto& t : arg.num().terms()) {
      const auto& p = t.mono.powers();
      if (!t.mono.exps().empty() || p.size() != 1 || p[0].exp != 1 || p[0].var->kind != VarKind::Coordinate) {
        if (p.empty() && t.mono.exps().empty())
          throw ParseError("exp argument must not have a constant term", at);
        throw ParseError("exp argument must be linear in coordinates", at);
      }
      if (!t.coeff.get_num().fits_slong_p() || !t.coeff.get_den().fits_slong_p())
        throw ParseError("exp coefficient out of range", at);
      form.push_back({p[0].var, Fraction(t.coeff.get_num().get_si(), t.coeff.get_den().get_si())});
    }
    return make_linear_form(std::move(form));
  }

  std::string_view s_;
  const ParseContext& ctx_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expr(std::string_view text, const ParseContext& ctx) { return Parser(text, ctx).parse(); }

}  // namespace curvkit
