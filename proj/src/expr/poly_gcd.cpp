// Multivariate gcd for the Laurent-exponential polynomials in poly.hpp.
//
// Exponentials are mapped onto fresh indeterminates E_i = exp(x_i / L_i),
// where L_i clears the denominators of every x_i coefficient in either
// operand, and each operand is shifted by a unit so its exponents are
// non-negative. The gcd is then computed in Q[v_1..v_k] with a recursive
// primitive pseudo-remainder sequence and mapped back.

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "curvkit/expr/poly.hpp"

namespace curvkit {

namespace {

struct DTerm {
  std::vector<int> e;
  mpq_class c;
};

using DPoly = std::vector<DTerm>;  // lex-descending exponents, nonzero coeffs

bool lex_greater(const std::vector<int>& a, const std::vector<int>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] > b[i];
  return false;
}

void normalize_order(DPoly& p) {
  std::sort(p.begin(), p.end(), [](const DTerm& a, const DTerm& b) { return lex_greater(a.e, b.e); });
  DPoly out;
  out.reserve(p.size());
  for (auto& t : p) {
    if (!out.empty() && out.back().e == t.e) {
      out.back().c += t.c;
    } else {
      out.push_back(std::move(t));
    }
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const DTerm& t) { return sgn(t.c) == 0; }),
            out.end());
  p = std::move(out);
}

DPoly dconst(std::size_t k, const mpq_class& c) {
  DPoly p;
  if (sgn(c) != 0) p.push_back({std::vector<int>(k, 0), c});
  return p;
}

bool is_const(const DPoly& p) {
  if (p.empty()) return true;
  if (p.size() != 1) return false;
  return std::all_of(p[0].e.begin(), p[0].e.end(), [](int x) { return x == 0; });
}

DPoly dsub(const DPoly& a, const DPoly& b) {
  DPoly r = a;
  for (const auto& t : b) r.push_back({t.e, -t.c});
  normalize_order(r);
  return r;
}

DPoly dmul(const DPoly& a, const DPoly& b) {
  DPoly r;
  r.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) {
      DTerm t{x.e, x.c * y.c};
      for (std::size_t i = 0; i < t.e.size(); ++i) t.e[i] += y.e[i];
      r.push_back(std::move(t));
    }
  normalize_order(r);
  return r;
}

DPoly dmul_term(const DPoly& a, const std::vector<int>& e, const mpq_class& c) {
  DPoly r = a;
  for (auto& t : r) {
    for (std::size_t i = 0; i < e.size(); ++i) t.e[i] += e[i];
    t.c *= c;
  }
  return r;  // order preserved
}

int degree(const DPoly& p, std::size_t v) {
  int d = -1;
  for (const auto& t : p) d = std::max(d, t.e[v]);
  return d;
}

// Exact division in Q[v]; throws if the divisor does not divide.
DPoly ddiv(const DPoly& a, const DPoly& b) {
  if (b.empty()) throw std::domain_error("gcd: division by zero");
  DPoly q, r = a;
  const DTerm& lb = b.front();
  while (!r.empty()) {
    const DTerm& lr = r.front();
    std::vector<int> e(lr.e.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      e[i] = lr.e[i] - lb.e[i];
      if (e[i] < 0) throw std::logic_error("gcd: inexact division");
    }
    mpq_class c = lr.c / lb.c;
    q.push_back({e, c});
    r = dsub(r, dmul_term(b, e, c));
  }
  normalize_order(q);
  return q;
}

// Scale to integer coefficients with unit content and positive leading
// coefficient.
DPoly primitive_scale(DPoly p) {
  if (p.empty()) return p;
  mpz_class l = 1, g = 0;
  for (const auto& t : p) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.c.get_den_mpz_t());
  for (const auto& t : p) {
    mpz_class num = t.c.get_num() * (l / t.c.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
  }
  mpq_class scale(l, g);
  if (sgn(p.front().c) < 0) scale = -scale;
  for (auto& t : p) t.c *= scale;
  return p;
}

DPoly dgcd(const DPoly& a, const DPoly& b);

// Coefficients of p as a polynomial in v (exponent of v zeroed).
std::map<int, DPoly> coefficients_in(const DPoly& p, std::size_t v) {
  std::map<int, DPoly> out;
  for (const auto& t : p) {
    DTerm s = t;
    s.e[v] = 0;
    out[t.e[v]].push_back(std::move(s));
  }
  for (auto& [d, c] : out) normalize_order(c);
  return out;
}

DPoly content_in(const DPoly& p, std::size_t v) {
  auto coeffs = coefficients_in(p, v);
  std::vector<const DPoly*> list;
  for (auto& [d, c] : coeffs) list.push_back(&c);
  std::sort(list.begin(), list.end(), [](const DPoly* x, const DPoly* y) { return x->size() < y->size(); });
  DPoly g = *list.front();
  for (std::size_t i = 1; i < list.size() && !is_const(g); ++i) g = dgcd(g, *list[i]);
  if (is_const(g)) return dconst(p.front().e.size(), 1);
  return primitive_scale(g);
}

DPoly lead_coeff_in(const DPoly& p, std::size_t v, int d) {
  DPoly out;
  for (const auto& t : p) {
    if (t.e[v] != d) continue;
    DTerm s = t;
    s.e[v] = 0;
    out.push_back(std::move(s));
  }
  normalize_order(out);
  return out;
}

DPoly pseudo_remainder(DPoly r, const DPoly& b, std::size_t v) {
  int db = degree(b, v);
  DPoly lcb = lead_coeff_in(b, v, db);
  std::size_t k = b.front().e.size();
  while (!r.empty()) {
    int dr = degree(r, v);
    if (dr < db) break;
    DPoly lcr = lead_coeff_in(r, v, dr);
    std::vector<int> shift(k, 0);
    shift[v] = dr - db;
    DPoly t = dmul(lcr, b);
    for (auto& term : t) term.e[v] += shift[v];
    normalize_order(t);
    r = dsub(dmul(lcb, r), t);
    if (!r.empty()) r = primitive_scale(r);
  }
  return r;
}

std::vector<bool> present_vars(const DPoly& p, std::size_t k) {
  std::vector<bool> out(k, false);
  for (const auto& t : p)
    for (std::size_t i = 0; i < k; ++i)
      if (t.e[i] > 0) out[i] = true;
  return out;
}

DPoly dgcd(const DPoly& a_in, const DPoly& b_in) {
  if (a_in.empty()) return primitive_scale(b_in);
  if (b_in.empty()) return primitive_scale(a_in);
  std::size_t k = a_in.front().e.size();
  if (is_const(a_in) || is_const(b_in)) return dconst(k, 1);

  DPoly a = a_in, b = b_in;
  // A variable present in only one operand cannot divide the gcd.
  for (bool changed = true; changed;) {
    changed = false;
    auto pa = present_vars(a, k), pb = present_vars(b, k);
    for (std::size_t v = 0; v < k; ++v) {
      if (pa[v] && !pb[v]) {
        a = content_in(a, v);
        changed = true;
        break;
      }
      if (pb[v] && !pa[v]) {
        b = content_in(b, v);
        changed = true;
        break;
      }
    }
    if (is_const(a) || is_const(b)) return dconst(k, 1);
  }

  auto pa = present_vars(a, k);
  std::size_t v = k;
  int best = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (!pa[i]) continue;
    int d = std::max(degree(a, i), degree(b, i));
    if (v == k || d < best) {
      v = i;
      best = d;
    }
  }

  DPoly ca = content_in(a, v), cb = content_in(b, v);
  DPoly c = dgcd(ca, cb);
  DPoly p = primitive_scale(ddiv(a, ca));
  DPoly q = primitive_scale(ddiv(b, cb));
  if (degree(p, v) < degree(q, v)) std::swap(p, q);
  while (true) {
    DPoly r = pseudo_remainder(p, q, v);
    if (r.empty()) break;
    if (degree(r, v) == 0) {
      q = dconst(k, 1);
      break;
    }
    p = std::move(q);
    q = primitive_scale(ddiv(r, content_in(r, v)));
  }
  return primitive_scale(dmul(c, q));
}

// Poly <-> DPoly conversion with a shared variable map.
struct Embedding {
  std::vector<Var> vars;       // polynomial indeterminates
  std::vector<Var> exp_coords;  // coordinates carried by exponentials
  std::vector<std::int64_t> scale;  // L_i per exp coordinate

  std::size_t width() const { return vars.size() + exp_coords.size(); }

  DPoly embed(const Poly& p) const {
    std::vector<Fraction> low(exp_coords.size(), Fraction(0));
    bool first = true;
    for (const auto& t : p.terms()) {
      for (std::size_t i = 0; i < exp_coords.size(); ++i) {
        Fraction c = t.mono.exp_coeff(exp_coords[i]);
        if (first || c < low[i]) low[i] = c;
      }
      first = false;
    }
    DPoly out;
    out.reserve(p.size());
    for (const auto& t : p.terms()) {
      DTerm d{std::vector<int>(width(), 0), t.coeff};
      for (const auto& pw : t.mono.powers()) {
        auto it = std::lower_bound(vars.begin(), vars.end(), pw.var,
                                   [](Var x, Var y) { return x->id < y->id; });
        d.e[static_cast<std::size_t>(it - vars.begin())] = pw.exp;
      }
      for (std::size_t i = 0; i < exp_coords.size(); ++i) {
        Fraction c = (t.mono.exp_coeff(exp_coords[i]) - low[i]) * Fraction(scale[i]);
        if (!c.is_integer()) throw std::logic_error("gcd: exponent scaling");
        d.e[vars.size() + i] = static_cast<int>(c.num());
      }
      out.push_back(std::move(d));
    }
    normalize_order(out);
    return out;
  }

  Poly restore(const DPoly& d) const {
    std::vector<Term> terms;
    for (const auto& t : d) {
      Monomial m;
      for (std::size_t i = 0; i < vars.size(); ++i)
        if (t.e[i] != 0) m = m * Monomial::variable(vars[i], t.e[i]);
      LinearForm form;
      for (std::size_t i = 0; i < exp_coords.size(); ++i) {
        int e = t.e[vars.size() + i];
        if (e != 0) form.push_back({exp_coords[i], Fraction(e, scale[i])});
      }
      if (!form.empty()) m = m * Monomial::exponential(form);
      terms.push_back({std::move(m), t.c});
    }
    return Poly::from_terms(std::move(terms));
  }
};

Embedding make_embedding(const Poly& a, const Poly& b) {
  Embedding emb;
  auto merge = [](std::vector<Var> x, const std::vector<Var>& y) {
    x.insert(x.end(), y.begin(), y.end());
    std::sort(x.begin(), x.end(), [](Var p, Var q) { return p->id < q->id; });
    x.erase(std::unique(x.begin(), x.end()), x.end());
    return x;
  };
  emb.vars = merge(a.variables(), b.variables());
  emb.exp_coords = merge(a.exp_coordinates(), b.exp_coordinates());
  for (Var c : emb.exp_coords) {
    std::int64_t l = 1;
    for (const Poly* p : {&a, &b})
      for (const auto& t : p->terms()) l = std::lcm(l, t.mono.exp_coeff(c).den());
    emb.scale.push_back(l);
  }
  return emb;
}

// gcd when one side is a single term: only shared polynomial powers survive.
Poly monomial_gcd(const Term& single, const Poly& other) {
  Monomial g;
  for (const auto& pw : single.mono.powers()) {
    int m = pw.exp;
    for (const auto& t : other.terms()) {
      m = std::min(m, t.mono.degree_in(pw.var));
      if (m == 0) break;
    }
    if (m > 0) g = g * Monomial::variable(pw.var, m);
  }
  return Poly(g, 1);
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.is_constant() || b.is_constant()) return Poly(mpq_class(1));
  if (a.size() == 1) return monomial_gcd(a.terms()[0], b);
  if (b.size() == 1) return monomial_gcd(b.terms()[0], a);
  if (auto q = a.divide_exact(b)) return b;
  if (auto q = b.divide_exact(a)) return a;
  Embedding emb = make_embedding(a, b);
  DPoly g = dgcd(emb.embed(a), emb.embed(b));
  return emb.restore(g);
}

}  // namespace curvkit
