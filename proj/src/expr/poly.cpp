#include "curvkit/expr/poly.hpp"

#include <map>

#include <algorithm>
#include <set>
#include <stdexcept>

namespace curvkit {

namespace {

bool term_desc(const Term& a, const Term& b) { return storage_compare(a.mono, b.mono) > 0; }

void sort_and_combine(std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(), term_desc);
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms.size();) {
    std::size_t j = i + 1;
    mpq_class c = terms[i].coeff;
    while (j < terms.size() && terms[j].mono == terms[i].mono) c += terms[j++].coeff;
    if (sgn(c) != 0) {
      if (out != i) terms[out].mono = std::move(terms[i].mono);
      terms[out].coeff = std::move(c);
      ++out;
    }
    i = j;
  }
  terms.resize(out);
}

}  // namespace

Poly::Poly(const mpq_class& c) {
  if (sgn(c) != 0) terms_.push_back({Monomial(), c});
}

Poly::Poly(Monomial m, const mpq_class& c) {
  if (sgn(c) != 0) terms_.push_back({std::move(m), c});
}

Poly Poly::from_terms(std::vector<Term> terms) {
  Poly p;
  sort_and_combine(terms);
  p.terms_ = std::move(terms);
  return p;
}

bool Poly::is_one() const { return terms_.size() == 1 && terms_[0].mono.is_one() && terms_[0].coeff == 1; }

mpq_class Poly::constant_value() const {
  if (terms_.empty()) return 0;
  if (!is_constant()) throw std::logic_error("constant_value on non-constant polynomial");
  return terms_[0].coeff;
}

const Term& Poly::canonical_leading() const {
  const Term* best = &terms_.front();
  for (const auto& t : terms_)
    if (canonical_compare(t.mono, best->mono) > 0) best = &t;
  return *best;
}

Poly Poly::operator+(const Poly& o) const {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) return o;
  Poly r;
  r.terms_.reserve(terms_.size() + o.terms_.size());
  auto i = terms_.begin(), j = o.terms_.begin();
  while (i != terms_.end() && j != o.terms_.end()) {
    int c = storage_compare(i->mono, j->mono);
    if (c > 0) {
      r.terms_.push_back(*i++);
    } else if (c < 0) {
      r.terms_.push_back(*j++);
    } else {
      mpq_class s = i->coeff + j->coeff;
      if (sgn(s) != 0) r.terms_.push_back({i->mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  r.terms_.insert(r.terms_.end(), i, terms_.end());
  r.terms_.insert(r.terms_.end(), j, o.terms_.end());
  return r;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  if (terms_.empty() || o.terms_.empty()) return Poly();
  if (o.is_one()) return *this;
  if (is_one()) return o;
  if (o.terms_.size() == 1) return (*this * o.terms_[0].mono) * o.terms_[0].coeff;
  if (terms_.size() == 1) return (o * terms_[0].mono) * terms_[0].coeff;
  std::vector<Term> prod;
  prod.reserve(terms_.size() * o.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) prod.push_back({a.mono * b.mono, a.coeff * b.coeff});
  return from_terms(std::move(prod));
}

Poly Poly::operator*(const mpq_class& c) const {
  if (sgn(c) == 0) return Poly();
  if (c == 1) return *this;
  Poly r = *this;
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

Poly Poly::operator*(const Monomial& m) const {
  if (m.is_one()) return *this;
  Poly r = *this;
  for (auto& t : r.terms_) t.mono = t.mono * m;
  // Multiplication by a monomial preserves a group order.
  return r;
}

namespace {

struct Range {
  Fraction lo, hi;
};

// Key (symbol, is_exponential): powers and exponential coefficients are
// independent gradings.
using Grading = std::pair<Var, bool>;

Fraction degree(const Monomial& m, const Grading& g) {
  return g.second ? m.exp_coeff(g.first) : Fraction(m.degree_in(g.first));
}

// Degree range over all terms per grading, absent symbols counting as 0.
std::map<Grading, Range> degree_ranges(const Poly& p) {
  std::map<Grading, Range> r;
  for (Var v : p.variables()) r[{v, false}] = {};
  for (Var v : p.exp_coordinates()) r[{v, true}] = {};
  bool first = true;
  for (const auto& t : p.terms()) {
    for (auto& [g, range] : r) {
      Fraction d = degree(t.mono, g);
      if (first || d < range.lo) range.lo = d;
      if (first || range.hi < d) range.hi = d;
    }
    first = false;
  }
  return r;
}

struct QuotientBox {
  std::map<Grading, Range> ranges;
  bool contains(const Monomial& m) const {
    for (const auto& p : m.powers())
      if (!ranges.count({p.var, false})) return false;
    for (const auto& e : m.exps())
      if (!ranges.count({e.coord, true})) return false;
    for (const auto& [g, range] : ranges) {
      Fraction d = degree(m, g);
      if (d < range.lo || range.hi < d) return false;
    }
    return true;
  }
};

std::optional<QuotientBox> quotient_box(const Poly& a, const Poly& b) {
  auto ra = degree_ranges(a), rb = degree_ranges(b);
  QuotientBox box;
  for (const auto& [g, r] : ra) {
    Range d = r;
    auto it = rb.find(g);
    if (it != rb.end()) d = {r.lo - it->second.lo, r.hi - it->second.hi};
    if (d.hi < d.lo) return std::nullopt;
    box.ranges[g] = d;
  }
  for (const auto& [g, r] : rb)
    if (!ra.count(g) && (!r.lo.is_zero() || !r.hi.is_zero())) return std::nullopt;
  return box;
}

}  // namespace

std::optional<Poly> Poly::divide_exact(const Poly& o) const {
  if (o.is_zero()) throw std::domain_error("polynomial division by zero");
  if (is_zero()) return Poly();
  if (o.terms_.size() == 1) {
    Poly r;
    r.terms_.reserve(terms_.size());
    mpq_class inv = 1 / o.terms_[0].coeff;
    for (const auto& t : terms_) {
      auto q = t.mono.divide(o.terms_[0].mono);
      if (!q) return std::nullopt;
      r.terms_.push_back({std::move(*q), t.coeff * inv});
    }
    return r;
  }
  std::vector<Term> quotient;
  Poly rem = *this;
  const Term& lead = o.terms_.front();
  mpq_class inv = 1 / lead.coeff;
  // Degree ranges of an exact quotient in each variable are the differences
  // of the ranges of dividend and divisor. They box the search, which
  // guarantees termination even though the order has infinite descents.
  auto box = quotient_box(*this, o);
  if (!box) return std::nullopt;
  while (!rem.is_zero()) {
    const Term& rt = rem.terms_.front();
    auto q = rt.mono.divide(lead.mono);
    if (!q || !box->contains(*q)) return std::nullopt;
    Term qt{std::move(*q), rt.coeff * inv};
    rem = rem - (o * qt.mono) * qt.coeff;
    quotient.push_back(std::move(qt));
  }
  return from_terms(std::move(quotient));
}

Poly Poly::derivative(Var coord) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    for (const auto& p : t.mono.powers()) {
      if (p.var == coord) {
        out.push_back({t.mono.without_power(p.var, 1), t.coeff * p.exp});
      } else if (p.var->kind == VarKind::Opaque && p.var->arg == coord) {
        Var next = opaque_symbol(p.var->name, p.var->order + 1, p.var->arg);
        out.push_back({t.mono.without_power(p.var, 1).with_power(next, 1), t.coeff * p.exp});
      }
    }
    Fraction c = t.mono.exp_coeff(coord);
    if (!c.is_zero()) out.push_back({t.mono, t.coeff * mpq_class(c.num(), c.den())});
  }
  return from_terms(std::move(out));
}

std::vector<Var> Poly::variables() const {
  std::set<Var> vs;
  for (const auto& t : terms_)
    for (const auto& p : t.mono.powers()) vs.insert(p.var);
  std::vector<Var> out(vs.begin(), vs.end());
  std::sort(out.begin(), out.end(), [](Var a, Var b) { return a->id < b->id; });
  return out;
}

std::vector<Var> Poly::exp_coordinates() const {
  std::set<Var> vs;
  for (const auto& t : terms_)
    for (const auto& e : t.mono.exps()) vs.insert(e.coord);
  std::vector<Var> out(vs.begin(), vs.end());
  std::sort(out.begin(), out.end(), [](Var a, Var b) { return a->id < b->id; });
  return out;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (!(a.terms_[i].mono == b.terms_[i].mono)) return false;
    if (a.terms_[i].coeff != b.terms_[i].coeff) return false;
  }
  return true;
}

std::size_t Poly::hash() const {
  std::size_t h = terms_.size();
  for (const auto& t : terms_) {
    std::size_t v = t.mono.hash();
    v ^= mpz_get_ui(t.coeff.get_num_mpz_t()) * 0x100000001b3ULL;
    v ^= mpz_get_ui(t.coeff.get_den_mpz_t()) + (static_cast<std::size_t>(sgn(t.coeff)) << 7);
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

mpz_class Poly::coefficient_lcm_den() const {
  mpz_class l = 1;
  for (const auto& t : terms_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den_mpz_t());
  return l;
}

std::string coefficient_to_string(const mpq_class& q) { return q.get_str(); }

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<const Term*> order;
  for (const auto& t : terms_) order.push_back(&t);
  std::sort(order.begin(), order.end(),
            [](const Term* a, const Term* b) {
              // Ascending degree; within a degree the larger monomial first.
              if (int c = compare(a->mono.total_degree(), b->mono.total_degree()); c != 0) return c < 0;
              return canonical_compare(a->mono, b->mono) > 0;
            });
  std::string s;
  for (const Term* t : order) {
    std::string term;
    if (t->mono.is_one()) {
      term = coefficient_to_string(t->coeff);
    } else if (t->coeff == 1) {
      term = t->mono.to_string();
    } else if (t->coeff == -1) {
      term = "-" + t->mono.to_string();
    } else {
      term = coefficient_to_string(t->coeff) + "*" + t->mono.to_string();
    }
    if (!s.empty() && term.front() != '-') s += '+';
    s += term;
  }
  return s;
}

}  // namespace curvkit
