#include "curvkit/tensor/curvature.hpp"

namespace curvkit {

namespace {

std::size_t power(std::size_t n, int k) {
  std::size_t p = 1;
  for (int i = 0; i < k; ++i) p *= n;
  return p;
}

void require_symmetric(const TensorField& t, const char* what) {
  if (t.rank() != 2) throw std::invalid_argument(std::string(what) + ": expected a (0,2) tensor");
  for (std::size_t i = 0; i < t.dim(); ++i)
    for (std::size_t j = i + 1; j < t.dim(); ++j)
      if (t.at({int(i), int(j)}) != t.at({int(j), int(i)}))
        throw std::invalid_argument(std::string(what) + ": asymmetric input");
}

// Nonzero Gamma^m_{l i} grouped by (l, i).
std::vector<std::vector<std::pair<int, Expr>>> gamma_lists(const ChristoffelSymbols& g) {
  const std::size_t n = g.dim();
  std::vector<std::vector<std::pair<int, Expr>>> out(n * n);
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t m = 0; m < n; ++m)
        if (!g(m, l, i).is_zero()) out[l * n + i].emplace_back(int(m), g(m, l, i));
  return out;
}

}  // namespace

ChristoffelSymbols christoffel(const MetricSpec& m) { return christoffel(m, invert_matrix(m.g(), true).matrix); }

ChristoffelSymbols christoffel(const MetricSpec& m, const ExprMatrix& ginv) {
  const std::size_t n = m.dim();
  std::vector<Expr> dg(n * n * n);  // dg[(l*n+i)*n+j] = d_l g_ij
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) dg[(l * n + i) * n + j] = differentiate(m.g(i, j), m.coordinate(l));
  auto d = [&](std::size_t l, std::size_t i, std::size_t j) -> const Expr& { return dg[(l * n + i) * n + j]; };
  // First kind: [ij, l] = 1/2 (d_i g_jl + d_j g_il - d_l g_ij).
  std::vector<Expr> first(n * n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l) {
        Expr v = (d(i, j, l) + d(j, i, l) - d(l, i, j)) * Expr::rational(1, 2);
        first[(i * n + j) * n + l] = v;
        first[(j * n + i) * n + l] = v;
      }
  std::vector<Expr> gamma(n * n * n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        Expr s;
        for (std::size_t l = 0; l < n; ++l)
          if (!ginv(k, l).is_zero() && !first[(i * n + j) * n + l].is_zero())
            s += ginv(k, l) * first[(i * n + j) * n + l];
        gamma[(k * n + i) * n + j] = s;
        gamma[(k * n + j) * n + i] = s;
      }
  ChristoffelSymbols result(n, std::move(gamma));
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        Expr s = d(l, i, j);
        for (std::size_t q = 0; q < n; ++q) {
          if (!result(q, l, i).is_zero() && !m.g(q, j).is_zero()) s -= result(q, l, i) * m.g(q, j);
          if (!result(q, l, j).is_zero() && !m.g(i, q).is_zero()) s -= result(q, l, j) * m.g(i, q);
        }
        if (!s.is_zero()) throw std::logic_error("christoffel symbols fail metric compatibility");
      }
  return result;
}

TensorField metric_tensor(const MetricSpec& m) {
  const std::size_t n = m.dim();
  std::vector<Expr> d(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d[i * n + j] = m.g(i, j);
  return TensorField("g", n, 2, std::move(d), kSymmetric);
}

TensorField riemann(const MetricSpec& m, const ChristoffelSymbols& gamma) {
  const std::size_t n = m.dim();
  std::vector<Expr> dgamma(n * n * n * n);  // d_a Gamma^m_bc at ((a*n+m)*n+b)*n+c
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t q = 0; q < n; ++q)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = b; c < n; ++c) {
          Expr v = differentiate(gamma(q, b, c), m.coordinate(a));
          dgamma[((a * n + q) * n + b) * n + c] = v;
          dgamma[((a * n + q) * n + c) * n + b] = v;
        }
  auto dG = [&](std::size_t a, std::size_t q, std::size_t b, std::size_t c) -> const Expr& {
    return dgamma[((a * n + q) * n + b) * n + c];
  };
  std::vector<Expr> r(power(n, 4));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        // (Rm(d_a, d_b) d_c)^q
        std::vector<Expr> rm(n);
        for (std::size_t q = 0; q < n; ++q) {
          Expr v = dG(a, q, b, c) - dG(b, q, a, c);
          for (std::size_t l = 0; l < n; ++l) {
            if (!gamma(q, a, l).is_zero() && !gamma(l, b, c).is_zero()) v += gamma(q, a, l) * gamma(l, b, c);
            if (!gamma(q, b, l).is_zero() && !gamma(l, a, c).is_zero()) v -= gamma(q, b, l) * gamma(l, a, c);
          }
          rm[q] = v;
        }
        for (std::size_t d = 0; d < n; ++d) {
          Expr v;
          for (std::size_t q = 0; q < n; ++q)
            if (!rm[q].is_zero() && !m.g(d, q).is_zero()) v -= m.g(d, q) * rm[q];
          r[((a * n + b) * n + c) * n + d] = v;
          r[((b * n + a) * n + c) * n + d] = -v;
        }
      }
  return TensorField("R", n, 4, std::move(r), kRiemannSymmetries);
}

TensorField ricci(const TensorField& riemann, const ExprMatrix& ginv) {
  const std::size_t n = riemann.dim();
  std::vector<Expr> s(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Expr v;
      for (std::size_t h = 0; h < n; ++h)
        for (std::size_t k = 0; k < n; ++k) {
          const Expr& r = riemann.at({int(h), int(i), int(j), int(k)});
          if (!r.is_zero() && !ginv(h, k).is_zero()) v += ginv(h, k) * r;
        }
      s[i * n + j] = v;
      s[j * n + i] = v;
    }
  return TensorField("S", n, 2, std::move(s), kSymmetric);
}

Expr scalar_curvature(const TensorField& ricci, const ExprMatrix& ginv) {
  Expr r;
  for (std::size_t i = 0; i < ricci.dim(); ++i)
    for (std::size_t j = 0; j < ricci.dim(); ++j) {
      const Expr& s = ricci.at({int(i), int(j)});
      if (!s.is_zero() && !ginv(i, j).is_zero()) r += ginv(i, j) * s;
    }
  return r;
}

TensorField covariant_derivative(const TensorField& t, const ChristoffelSymbols& gamma, const MetricSpec& m) {
  if (t.rank() < 1) throw std::invalid_argument("covariant derivative needs rank >= 1");
  const std::size_t n = t.dim();
  const int k = t.rank();
  auto lists = gamma_lists(gamma);
  std::vector<Expr> out(t.size() * n);
  for (std::size_t f = 0; f < t.size(); ++f) {
    if (t[f].is_zero()) continue;
    for (std::size_t l = 0; l < n; ++l) {
      Expr d = differentiate(t[f], m.coordinate(l));
      if (!d.is_zero()) out[f * n + l] += d;
    }
  }
  // Connection terms: each nonzero T(..m..) feeds the outputs whose slot j
  // carries an index i with Gamma^m_{l i} != 0.
  for (std::size_t f = 0; f < t.size(); ++f) {
    if (t[f].is_zero()) continue;
    Index idx = t.unflatten(f);
    for (int j = 0; j < k; ++j) {
      int mj = idx[j];
      for (std::size_t l = 0; l < n; ++l)
        for (std::size_t i = 0; i < n; ++i)
          for (const auto& [q, g] : lists[l * n + i]) {
            if (q != mj) continue;
            std::size_t target = f - std::size_t(mj) * t.stride(j) + i * t.stride(j);
            out[target * n + l] -= g * t[f];
          }
    }
  }
  unsigned sym = t.symmetries() & ~unsigned(kSymmetric);
  if (k < 4) sym &= kAntisymFirstPair;
  return TensorField("nabla " + t.name(), n, k + 1, std::move(out), sym);
}

TensorField kulkarni_nomizu(const TensorField& j, const TensorField& f) {
  require_symmetric(j, "Kulkarni-Nomizu product");
  require_symmetric(f, "Kulkarni-Nomizu product");
  if (j.dim() != f.dim()) throw std::invalid_argument("Kulkarni-Nomizu product: dimension mismatch");
  const std::size_t n = j.dim();
  auto J = [&](std::size_t a, std::size_t b) -> const Expr& { return j[a * n + b]; };
  auto F = [&](std::size_t a, std::size_t b) -> const Expr& { return f[a * n + b]; };
  auto prod = [](const Expr& x, const Expr& y) { return (x.is_zero() || y.is_zero()) ? Expr() : x * y; };
  std::vector<Expr> out(power(n, 4));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < n; ++d)
          out[((a * n + b) * n + c) * n + d] =
              prod(J(a, d), F(b, c)) + prod(J(b, c), F(a, d)) - prod(J(a, c), F(b, d)) - prod(J(b, d), F(a, c));
  return TensorField(j.name() + "^" + f.name(), n, 4, std::move(out), kRiemannSymmetries);
}

TensorField derived_tensor(DerivedKind kind, const TensorField& g, const TensorField& riemann,
                           const TensorField& ricci, const Expr& scalar) {
  const std::size_t n = g.dim();
  const long nl = static_cast<long>(n);
  switch (kind) {
    case DerivedKind::Conformal: {
      if (n < 4) throw DimensionError("conformal curvature tensor undefined for dimension " + std::to_string(n));
      TensorField t = riemann - Expr::rational(1, nl - 2) * kulkarni_nomizu(g, ricci) +
                      (scalar * Expr::rational(1, 2 * (nl - 2) * (nl - 1))) * kulkarni_nomizu(g, g);
      return t.renamed("C");
    }
    case DerivedKind::Conharmonic: {
      if (n < 4) throw DimensionError("conharmonic curvature tensor undefined for dimension " + std::to_string(n));
      return (riemann - Expr::rational(1, nl - 2) * kulkarni_nomizu(g, ricci)).renamed("K");
    }
    case DerivedKind::Concircular: {
      TensorField t = riemann - (scalar * Expr::rational(1, 2 * nl * (nl - 1))) * kulkarni_nomizu(g, g);
      return t.renamed("W");
    }
    case DerivedKind::Projective: {
      std::vector<Expr> out(riemann.components());
      Expr k = Expr::rational(1, nl - 1);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          for (std::size_t c = 0; c < n; ++c)
            for (std::size_t d = 0; d < n; ++d) {
              Expr v = g[a * n + d] * ricci[b * n + c] - g[b * n + d] * ricci[a * n + c];
              if (!v.is_zero()) out[((a * n + b) * n + c) * n + d] -= k * v;
            }
      return TensorField("P", n, 4, std::move(out), kAntisymFirstPair);
    }
  }
  throw std::invalid_argument("unknown derived tensor kind");
}

Endomorphism curvature_endomorphism(const TensorField& h, const ExprMatrix& ginv) {
  if (h.rank() != 4) throw std::invalid_argument("curvature action needs a (0,4) tensor");
  const std::size_t n = h.dim();
  Endomorphism e;
  e.dim = n;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t q = 0; q < n; ++q) {
          Expr v;
          for (std::size_t w = 0; w < n; ++w) {
            const Expr& hv = h[((x * n + y) * n + a) * n + w];
            if (!hv.is_zero() && !ginv(q, w).is_zero()) v += ginv(q, w) * hv;
          }
          if (!v.is_zero()) e.entries.push_back({int(x), int(y), int(q), int(a), v});
        }
  return e;
}

TensorField curvature_action(const TensorField& h, const TensorField& t, const ExprMatrix& ginv) {
  return curvature_action(curvature_endomorphism(h, ginv), t, h.name() + "." + t.name());
}

TensorField curvature_action(const Endomorphism& h, const TensorField& t, const std::string& name) {
  const std::size_t n = t.dim();
  if (h.dim != n) throw std::invalid_argument("curvature action: dimension mismatch");
  std::vector<std::vector<const Endomorphism::Entry*>> by_m(n);
  for (const auto& e : h.entries) by_m[e.m].push_back(&e);
  std::vector<Expr> out(t.size() * n * n);
  for (std::size_t f = 0; f < t.size(); ++f) {
    if (t[f].is_zero()) continue;
    Index idx = t.unflatten(f);
    for (int j = 0; j < t.rank(); ++j) {
      for (const auto* e : by_m[idx[j]]) {
        std::size_t target = f - std::size_t(idx[j]) * t.stride(j) + std::size_t(e->a) * t.stride(j);
        out[(target * n + e->x) * n + e->y] -= e->value * t[f];
      }
    }
  }
  return TensorField(name, n, t.rank() + 2, std::move(out));
}

TensorField tachibana(const TensorField& e, const TensorField& t) {
  require_symmetric(e, "Tachibana tensor");
  const std::size_t n = t.dim();
  if (e.dim() != n) throw std::invalid_argument("Tachibana tensor: dimension mismatch");
  std::vector<std::tuple<int, int, Expr>> nz;  // (row, col, E)
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (!e[a * n + b].is_zero()) nz.emplace_back(int(a), int(b), e[a * n + b]);
  std::vector<Expr> out(t.size() * n * n);
  for (std::size_t f = 0; f < t.size(); ++f) {
    if (t[f].is_zero()) continue;
    Index idx = t.unflatten(f);
    for (int j = 0; j < t.rank(); ++j) {
      std::size_t base = f - std::size_t(idx[j]) * t.stride(j);
      for (const auto& [p, a, ev] : nz) {
        Expr v = ev * t[f];
        std::size_t target = base + std::size_t(a) * t.stride(j);
        // -E(Y, a) T(..X..) with X = idx[j], Y = p
        out[(target * n + idx[j]) * n + p] -= v;
        // +E(X, a) T(..Y..) with Y = idx[j], X = p
        out[(target * n + p) * n + idx[j]] += v;
      }
    }
  }
  return TensorField("Q(" + e.name() + "," + t.name() + ")", n, t.rank() + 2, std::move(out));
}

}  // namespace curvkit
