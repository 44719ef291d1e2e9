#include "curvkit/expr/monomial.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace curvkit {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("exponent coefficient overflow");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("exponent coefficient overflow");
  return r;
}

template <class List, class Key, class Combine, class IsZero>
List merge_sorted(const List& a, const List& b, Key key, Combine combine, IsZero is_zero) {
  List out;
  out.reserve(a.size() + b.size());
  auto i = a.begin(), j = b.begin();
  while (i != a.end() && j != b.end()) {
    auto ki = key(*i), kj = key(*j);
    if (ki < kj) {
      out.push_back(*i++);
    } else if (kj < ki) {
      out.push_back(combine(std::nullopt, *j++));
    } else {
      auto merged = combine(*i, *j);
      if (!is_zero(merged)) out.push_back(merged);
      ++i;
      ++j;
    }
  }
  for (; i != a.end(); ++i) out.push_back(*i);
  for (; j != b.end(); ++j) out.push_back(combine(std::nullopt, *j));
  return out;
}

}  // namespace

Fraction::Fraction(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("zero denominator in fraction");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  num_ = num;
  den_ = den;
}

Fraction Fraction::operator+(const Fraction& o) const {
  if (den_ == o.den_) return Fraction(checked_add(num_, o.num_), den_);
  return Fraction(checked_add(checked_mul(num_, o.den_), checked_mul(o.num_, den_)),
                  checked_mul(den_, o.den_));
}

Fraction Fraction::operator-(const Fraction& o) const { return *this + (-o); }

Fraction Fraction::operator*(const Fraction& o) const {
  return Fraction(checked_mul(num_, o.num_), checked_mul(den_, o.den_));
}

int compare(const Fraction& a, const Fraction& b) {
  __int128 l = static_cast<__int128>(a.num_) * b.den_;
  __int128 r = static_cast<__int128>(b.num_) * a.den_;
  return l < r ? -1 : (l > r ? 1 : 0);
}

std::string Fraction::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

LinearForm make_linear_form(LinearForm raw) {
  std::sort(raw.begin(), raw.end(),
            [](const ExpCoeff& a, const ExpCoeff& b) { return a.coord->id < b.coord->id; });
  LinearForm out;
  for (const auto& c : raw) {
    if (!out.empty() && out.back().coord == c.coord) {
      out.back().coeff = out.back().coeff + c.coeff;
    } else {
      out.push_back(c);
    }
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const ExpCoeff& c) { return c.coeff.is_zero(); }),
            out.end());
  return out;
}

Monomial Monomial::variable(Var v, int exp) {
  Monomial m;
  if (exp != 0) m.powers_.push_back({v, exp});
  return m;
}

Monomial Monomial::exponential(const LinearForm& form) {
  Monomial m;
  m.exps_ = make_linear_form(form);
  return m;
}

int Monomial::degree_in(Var v) const {
  for (const auto& p : powers_)
    if (p.var == v) return p.exp;
  return 0;
}

Fraction Monomial::exp_coeff(Var coord) const {
  for (const auto& e : exps_)
    if (e.coord == coord) return e.coeff;
  return Fraction(0);
}

Fraction Monomial::total_degree() const {
  std::int64_t d = 0;
  for (const auto& p : powers_) d += p.exp;
  Fraction f(d);
  for (const auto& e : exps_) f = f + e.coeff;
  return f;
}

Monomial Monomial::operator*(const Monomial& o) const {
  if (o.is_one()) return *this;
  if (is_one()) return o;
  Monomial r;
  r.powers_ = merge_sorted(
      powers_, o.powers_, [](const VarPower& p) { return p.var->id; },
      [](std::optional<VarPower> a, const VarPower& b) {
        return a ? VarPower{b.var, a->exp + b.exp} : b;
      },
      [](const VarPower& p) { return p.exp == 0; });
  r.exps_ = merge_sorted(
      exps_, o.exps_, [](const ExpCoeff& e) { return e.coord->id; },
      [](std::optional<ExpCoeff> a, const ExpCoeff& b) {
        return a ? ExpCoeff{b.coord, a->coeff + b.coeff} : b;
      },
      [](const ExpCoeff& e) { return e.coeff.is_zero(); });
  return r;
}

std::optional<Monomial> Monomial::divide(const Monomial& o) const {
  Monomial r;
  bool ok = true;
  r.powers_ = merge_sorted(
      powers_, o.powers_, [](const VarPower& p) { return p.var->id; },
      [&ok](std::optional<VarPower> a, const VarPower& b) {
        if (!a) {
          ok = false;
          return VarPower{b.var, -b.exp};
        }
        if (a->exp < b.exp) ok = false;
        return VarPower{b.var, a->exp - b.exp};
      },
      [](const VarPower& p) { return p.exp == 0; });
  if (!ok) return std::nullopt;
  r.exps_ = merge_sorted(
      exps_, o.exps_, [](const ExpCoeff& e) { return e.coord->id; },
      [](std::optional<ExpCoeff> a, const ExpCoeff& b) {
        return a ? ExpCoeff{b.coord, a->coeff - b.coeff} : ExpCoeff{b.coord, -b.coeff};
      },
      [](const ExpCoeff& e) { return e.coeff.is_zero(); });
  return r;
}

Monomial Monomial::without_power(Var v, int remove) const {
  Monomial r = *this;
  for (auto it = r.powers_.begin(); it != r.powers_.end(); ++it) {
    if (it->var == v) {
      it->exp -= remove;
      if (it->exp == 0) r.powers_.erase(it);
      return r;
    }
  }
  throw std::logic_error("without_power: variable absent");
}

Monomial Monomial::with_power(Var v, int add) const { return *this * Monomial::variable(v, add); }

std::size_t Monomial::hash() const {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  for (const auto& p : powers_) {
    mix(p.var->id);
    mix(static_cast<std::size_t>(p.exp));
  }
  mix(0xabcdefULL);
  for (const auto& e : exps_) {
    mix(e.coord->id);
    mix(static_cast<std::size_t>(e.coeff.num()));
    mix(static_cast<std::size_t>(e.coeff.den()));
  }
  return h;
}

int storage_compare(const Monomial& a, const Monomial& b) {
  {
    auto i = a.powers_.begin(), j = b.powers_.begin();
    while (i != a.powers_.end() || j != b.powers_.end()) {
      if (j == b.powers_.end() || (i != a.powers_.end() && i->var->id < j->var->id)) return 1;
      if (i == a.powers_.end() || j->var->id < i->var->id) return -1;
      if (i->exp != j->exp) return i->exp > j->exp ? 1 : -1;
      ++i;
      ++j;
    }
  }
  auto i = a.exps_.begin(), j = b.exps_.begin();
  while (i != a.exps_.end() || j != b.exps_.end()) {
    if (j == b.exps_.end() || (i != a.exps_.end() && i->coord->id < j->coord->id))
      return i->coeff.num() > 0 ? 1 : -1;
    if (i == a.exps_.end() || j->coord->id < i->coord->id) return j->coeff.num() > 0 ? -1 : 1;
    if (int c = compare(i->coeff, j->coeff); c != 0) return c;
    ++i;
    ++j;
  }
  return 0;
}

namespace {

template <class Entry, class KeyOf, class ValueCompare>
int canonical_lex(std::vector<Entry> a, std::vector<Entry> b, KeyOf key, ValueCompare value_cmp) {
  // Entries with absent keys count as zero; sign of the value decides.
  auto by_key = [&](const Entry& x, const Entry& y) { return canonical_compare(key(x), key(y)) < 0; };
  std::sort(a.begin(), a.end(), by_key);
  std::sort(b.begin(), b.end(), by_key);
  auto i = a.begin(), j = b.begin();
  while (i != a.end() || j != b.end()) {
    int kc = (i == a.end()) ? 1 : (j == b.end()) ? -1 : canonical_compare(key(*i), key(*j));
    if (kc < 0) {
      int s = value_cmp(&*i, nullptr);
      if (s != 0) return s;
      ++i;
    } else if (kc > 0) {
      int s = value_cmp(nullptr, &*j);
      if (s != 0) return s;
      ++j;
    } else {
      int s = value_cmp(&*i, &*j);
      if (s != 0) return s;
      ++i;
      ++j;
    }
  }
  return 0;
}

}  // namespace

int canonical_compare(const Monomial& a, const Monomial& b) {
  if (int c = compare(a.total_degree(), b.total_degree()); c != 0) return c;
  auto split = [](const Monomial& m, bool opaque) {
    std::vector<VarPower> out;
    for (const auto& p : m.powers_)
      if ((p.var->kind == VarKind::Opaque) == opaque) out.push_back(p);
    return out;
  };
  auto pow_cmp = [](const VarPower* x, const VarPower* y) {
    int ex = x ? x->exp : 0, ey = y ? y->exp : 0;
    return ex == ey ? 0 : (ex > ey ? 1 : -1);
  };
  auto pow_key = [](const VarPower& p) { return p.var; };
  if (int c = canonical_lex(split(a, false), split(b, false), pow_key, pow_cmp); c != 0) return c;
  std::vector<ExpCoeff> ea(a.exps_.begin(), a.exps_.end()), eb(b.exps_.begin(), b.exps_.end());
  auto exp_cmp = [](const ExpCoeff* x, const ExpCoeff* y) {
    return compare(x ? x->coeff : Fraction(0), y ? y->coeff : Fraction(0));
  };
  if (int c = canonical_lex(ea, eb, [](const ExpCoeff& e) { return e.coord; }, exp_cmp); c != 0)
    return c;
  return canonical_lex(split(a, true), split(b, true), pow_key, pow_cmp);
}

std::string linear_form_to_string(const LinearForm& form) {
  std::vector<ExpCoeff> sorted(form.begin(), form.end());
  std::sort(sorted.begin(), sorted.end(), [](const ExpCoeff& x, const ExpCoeff& y) {
    return canonical_compare(x.coord, y.coord) < 0;
  });
  std::string s;
  for (const auto& e : sorted) {
    std::string term;
    const Fraction& c = e.coeff;
    if (c == Fraction(1)) {
      term = e.coord->name;
    } else if (c == Fraction(-1)) {
      term = "-" + e.coord->name;
    } else {
      term = c.to_string() + "*" + e.coord->name;
    }
    if (!s.empty() && term.front() != '-') s += '+';
    s += term;
  }
  return s.empty() ? "0" : s;
}

std::string Monomial::to_string() const {
  std::vector<VarPower> ps(powers_.begin(), powers_.end());
  std::sort(ps.begin(), ps.end(), [](const VarPower& x, const VarPower& y) {
    return canonical_compare(x.var, y.var) < 0;
  });
  std::string s;
  auto append = [&s](const std::string& f) {
    if (!s.empty()) s += '*';
    s += f;
  };
  for (const auto& p : ps) {
    if (p.var->kind == VarKind::Opaque) continue;
    append(p.exp == 1 ? p.var->to_string() : p.var->to_string() + "^" + std::to_string(p.exp));
  }
  for (const auto& p : ps) {
    if (p.var->kind != VarKind::Opaque) continue;
    append(p.exp == 1 ? p.var->to_string() : p.var->to_string() + "^" + std::to_string(p.exp));
  }
  if (!exps_.empty()) append("exp(" + linear_form_to_string(exps_) + ")");
  return s;
}

}  // namespace curvkit
