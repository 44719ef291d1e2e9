#include "curvkit/expr/expr.hpp"

#include <stdexcept>

namespace curvkit {

namespace {

const Poly& poly_one() {
  static const Poly one(mpq_class(1));
  return one;
}

const Poly& poly_zero() {
  static const Poly zero;
  return zero;
}

// Nonzero constant times exp(linear form): invertible in the Laurent ring.
bool is_unit(const Poly& p) { return p.size() == 1 && p.terms()[0].mono.powers().empty(); }

Poly exact(const Poly& a, const Poly& b) {
  auto q = a.divide_exact(b);
  if (!q) throw std::logic_error("expression reduction: inexact division by gcd");
  return std::move(*q);
}

}  // namespace

Expr::Expr(long value) : Expr(mpq_class(value)) {}

Expr::Expr(const mpq_class& value) {
  if (sgn(value) != 0) rep_ = std::make_shared<const Rep>(Rep{Poly(value), poly_one()});
}

Expr::Expr(const Poly& p) {
  if (!p.is_zero()) rep_ = std::make_shared<const Rep>(Rep{p, poly_one()});
}

Expr Expr::rational(long num, long den) {
  mpq_class q(num, den);
  q.canonicalize();
  return Expr(q);
}

Expr Expr::variable(Var v) { return Expr(Poly(Monomial::variable(v), 1)); }

Expr Expr::exponential(const LinearForm& form) { return Expr(Poly(Monomial::exponential(form), 1)); }

const Poly& Expr::num() const { return rep_ ? rep_->num : poly_zero(); }

const Poly& Expr::den() const { return rep_ ? rep_->den : poly_one(); }

mpq_class Expr::constant_value() const {
  if (!is_constant()) throw std::logic_error("constant_value on non-constant expression");
  return num().constant_value();
}

std::size_t Expr::structural_size() const { return rep_ ? rep_->num.size() + rep_->den.size() : 0; }

Expr Expr::normalized(Poly num, Poly den) {
  if (num.is_zero()) return Expr();
  if (den.is_zero()) throw std::domain_error("division by zero");
  if (den.is_one()) return Expr(std::make_shared<const Rep>(Rep{std::move(num), poly_one()}));
  if (den.is_constant()) {
    mpq_class c = den.constant_value();
    return Expr(std::make_shared<const Rep>(Rep{num * (1 / c), poly_one()}));
  }
  // Shift by a unit so every exponential coordinate has minimum 0 in den.
  LinearForm shift;
  for (Var c : den.exp_coordinates()) {
    Fraction low = den.terms()[0].mono.exp_coeff(c);
    for (const auto& t : den.terms()) {
      Fraction v = t.mono.exp_coeff(c);
      if (v < low) low = v;
    }
    if (!low.is_zero()) shift.push_back({c, -low});
  }
  if (!shift.empty()) {
    Monomial m = Monomial::exponential(shift);
    num = num * m;
    den = den * m;
  }
  if (is_unit(den)) {
    const Term& t = den.terms()[0];
    Monomial inv = *Monomial().divide(t.mono);
    return Expr(std::make_shared<const Rep>(Rep{(num * inv) * (1 / t.coeff), poly_one()}));
  }
  mpz_class l = den.coefficient_lcm_den(), g = 0;
  for (const auto& t : den.terms()) {
    mpz_class v = t.coeff.get_num() * (l / t.coeff.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  }
  mpq_class scale(l, g);
  scale.canonicalize();
  if (sgn(den.canonical_leading().coeff) < 0) scale = -scale;
  if (scale != 1) {
    num = num * scale;
    den = den * scale;
  }
  return Expr(std::make_shared<const Rep>(Rep{std::move(num), std::move(den)}));
}

Expr Expr::fraction(const Poly& num, const Poly& den) {
  if (den.is_zero()) throw std::domain_error("division by zero");
  if (num.is_zero()) return Expr();
  if (den.is_constant()) return normalized(num, den);
  Poly g = gcd(num, den);
  if (g.is_constant() || is_unit(g)) return normalized(num, den);
  return normalized(exact(num, g), exact(den, g));
}

Expr Expr::operator-() const {
  if (!rep_) return *this;
  return Expr(std::make_shared<const Rep>(Rep{-rep_->num, rep_->den}));
}

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const Poly& ad = a.den();
  const Poly& bd = b.den();
  if (ad == bd) {
    Poly n = a.num() + b.num();
    if (ad.is_one()) return Expr(n);
    return Expr::fraction(n, ad);
  }
  if (ad.is_one()) return Expr::normalized(a.num() * bd + b.num(), bd);
  if (bd.is_one()) return Expr::normalized(a.num() + b.num() * ad, ad);
  Poly g = gcd(ad, bd);
  if (g.is_constant() || is_unit(g)) {
    return Expr::normalized(a.num() * bd + b.num() * ad, ad * bd);
  }
  Poly ar = exact(ad, g), br = exact(bd, g);
  Poly n = a.num() * br + b.num() * ar;
  Poly d = ad * br;
  if (n.is_zero()) return Expr();
  Poly g2 = gcd(n, g);
  if (g2.is_constant() || is_unit(g2)) return Expr::normalized(std::move(n), std::move(d));
  return Expr::normalized(exact(n, g2), exact(d, g2));
}

Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_zero() || b.is_zero()) return Expr();
  const Poly& ad = a.den();
  const Poly& bd = b.den();
  if (ad.is_one() && bd.is_one()) return Expr(a.num() * b.num());
  Poly an = a.num(), bn = b.num(), adr = ad, bdr = bd;
  if (!bd.is_one()) {
    Poly g = gcd(an, bd);
    if (!g.is_constant() && !is_unit(g)) {
      an = exact(an, g);
      bdr = exact(bd, g);
    }
  }
  if (!ad.is_one()) {
    Poly g = gcd(bn, ad);
    if (!g.is_constant() && !is_unit(g)) {
      bn = exact(bn, g);
      adr = exact(ad, g);
    }
  }
  return Expr::normalized(an * bn, adr * bdr);
}

Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  Expr inv = Expr::normalized(b.den(), b.num());
  return a * inv;
}

Expr Expr::pow(int exponent) const {
  if (exponent < 0) return Expr(1) / pow(-exponent);
  Expr result(1), base = *this;
  while (exponent > 0) {
    if (exponent & 1) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.rep_ == b.rep_) return true;
  if (!a.rep_ || !b.rep_) return false;
  return a.rep_->den == b.rep_->den && a.rep_->num == b.rep_->num;
}

std::size_t Expr::hash() const {
  if (!rep_) return 0;
  return rep_->num.hash() * 31 + rep_->den.hash();
}

std::string Expr::to_string() const {
  if (!rep_) return "0";
  const Poly& n = rep_->num;
  const Poly& d = rep_->den;
  mpz_class l = n.coefficient_lcm_den();
  if (d.is_one()) {
    if (n.size() == 1 || l == 1) return n.to_string();
    return "(" + (n * mpq_class(l)).to_string() + ")/" + l.get_str();
  }
  Poly ns = n * mpq_class(l), ds = d * mpq_class(l);
  std::string num_s = ns.to_string();
  if (ns.size() > 1) num_s = "(" + num_s + ")";
  std::string den_s = ds.to_string();
  bool simple = ds.size() == 1 && ds.terms()[0].coeff == 1 &&
                (ds.terms()[0].mono.powers().size() + (ds.terms()[0].mono.exps().empty() ? 0 : 1)) == 1 &&
                (ds.terms()[0].mono.powers().empty() || ds.terms()[0].mono.powers()[0].exp == 1);
  if (!simple) den_s = "(" + den_s + ")";
  return num_s + "/" + den_s;
}

Expr differentiate(const Expr& e, Var coord) {
  if (e.is_zero()) return e;
  const Poly& p = e.num();
  const Poly& q = e.den();
  if (q.is_one()) return Expr(p.derivative(coord));
  Poly dq = q.derivative(coord);
  if (dq.is_zero()) return Expr::fraction(p.derivative(coord), q);
  Poly n = p.derivative(coord) * q - p * dq;
  return Expr::fraction(n, q * q);
}

}  // namespace curvkit
