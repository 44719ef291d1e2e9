#include "curvkit/classify/detectors.hpp"

#include <stdexcept>

#include "identity_system.hpp"

namespace curvkit {

using detail::IdentitySystem;
using detail::make_verdict;

namespace {

const char* const kFormLabels[] = {"A", "B", "D", "E", "F", "G", "H", "J"};

void require_derivative_of(const TensorField& nabla_t, const TensorField& t) {
  if (nabla_t.rank() != t.rank() + 1 || nabla_t.dim() != t.dim())
    throw ValenceMismatch("valence mismatch: " + nabla_t.name() + " is not a derivative of a rank " +
                          std::to_string(t.rank()) + " tensor");
}

Index with_slot(Index idx, int slot, int value) {
  idx[slot] = value;
  return idx;
}

Index appended(Index idx, int value) {
  idx.push_back(value);
  return idx;
}

StructureVerdict inconsistent(const std::string& name, const IdentitySystem& sys, const LinearSolution& sol) {
  StructureVerdict v = make_verdict(name, Status::Fails);
  const auto& eq = sys.equation(*sol.inconsistent_row);
  v.witness = Witness{name + " residual", eq.id, sol.inconsistent_residual};
  return v;
}

// Shared tail of the single one-form and slot-weighted detectors: solve,
// verify, enforce the nonzero requirement.
StructureVerdict solve_joint(const std::string& name, const IdentitySystem& sys,
                             const std::vector<std::string>& labels, std::size_t n, bool require_nonzero) {
  LinearSolution sol = sys.solve();
  if (sol.status == LinearSolution::Status::Inconsistent) return inconsistent(name, sys, sol);
  sys.verify(sol);
  Certificate cert = detail::joint_certificate(labels, n, sol);
  if (require_nonzero && detail::all_zero(cert)) {
    StructureVerdict v = make_verdict(name, Status::Fails);
    v.notes.push_back("holds only trivially: the one-forms must vanish");
    return v;
  }
  StructureVerdict v = make_verdict(name, Status::Holds);
  v.certificate = std::move(cert);
  detail::merge_regularity(v.regularity, sol.regularity);
  if (!v.certificate.family.empty()) v.notes.push_back("one-forms are not unique");
  return v;
}

}  // namespace

StructureVerdict detect_symmetry(const std::string& name, const TensorField& nabla_t) {
  return detail::zero_verdict(name, nabla_t);
}

StructureVerdict detect_linear_recurrence(const std::string& name, const TensorField& nabla_t,
                                          const std::vector<TensorField>& basis) {
  if (basis.empty()) throw std::invalid_argument("recurrence basis is empty");
  if (basis.size() > std::size(kFormLabels)) throw std::invalid_argument("recurrence basis too large");
  for (const auto& b : basis) require_derivative_of(nabla_t, b);
  bool vacuous = true;
  for (const auto& b : basis) vacuous = vacuous && b.is_zero();
  if (vacuous) {
    StructureVerdict v = make_verdict(name, Status::Vacuous);
    v.notes.push_back("every basis tensor vanishes identically");
    return v;
  }

  const std::size_t n = nabla_t.dim();
  const std::size_t m = basis.size();
  const TensorField& t0 = basis.front();
  StructureVerdict v = make_verdict(name, Status::Holds);
  for (std::size_t b = 0; b < m; ++b) v.certificate.forms.push_back({kFormLabels[b], ExprVector(n)});

  for (std::size_t l = 0; l < n; ++l) {
    IdentitySystem sys(m);
    for (std::size_t f = 0; f < t0.size(); ++f) {
      std::vector<std::pair<std::size_t, Expr>> terms;
      for (std::size_t b = 0; b < m; ++b) terms.emplace_back(b, basis[b][f]);
      sys.add(appended(t0.unflatten(f), int(l)), nabla_t[f * n + l], terms);
    }
    LinearSolution sol = sys.solve();
    if (sol.status == LinearSolution::Status::Inconsistent) return inconsistent(name, sys, sol);
    sys.verify(sol);
    for (std::size_t b = 0; b < m; ++b) v.certificate.forms[b].components[l] = sol.particular[b];
    for (const auto& z : sol.null_basis) {
      std::vector<NamedForm> dir;
      for (std::size_t b = 0; b < m; ++b) {
        dir.push_back({kFormLabels[b], ExprVector(n)});
        dir.back().components[l] = z[b];
      }
      v.certificate.family.push_back(std::move(dir));
    }
    detail::merge_regularity(v.regularity, sol.regularity);
  }
  for (std::size_t b = 0; b < m; ++b)
    if (basis[b].is_zero())
      v.notes.push_back(std::string(kFormLabels[b]) + " is arbitrary: " + basis[b].name() + " vanishes identically");
  if (!v.certificate.family.empty()) v.notes.push_back("one-forms are not unique");
  return v;
}

StructureVerdict detect_proportional(const std::string& name, const TensorField& x, const TensorField& y) {
  if (x.rank() != y.rank() || x.dim() != y.dim())
    throw ValenceMismatch("valence mismatch: " + x.name() + " and " + y.name());
  std::size_t first = y.size();
  for (std::size_t f = 0; f < y.size(); ++f)
    if (!y[f].is_zero()) {
      first = f;
      break;
    }
  if (first == y.size()) {
    StructureVerdict v = make_verdict(name, Status::Vacuous);
    v.notes.push_back(y.name() + " vanishes identically");
    return v;
  }
  Expr l = x[first] / y[first];
  for (std::size_t f = 0; f < x.size(); ++f) {
    Expr r = x[f] - l * y[f];
    if (r.is_zero()) continue;
    StructureVerdict v = make_verdict(name, Status::Fails);
    v.witness = Witness{x.name() + " - L " + y.name(), x.unflatten(f), r};
    v.certificate.scalars.emplace_back("L", l);
    v.notes.push_back("L is fixed by " + y.name() + "[" + detail::index_label(y.unflatten(first)) + "]");
    return v;
  }
  StructureVerdict v = make_verdict(name, Status::Holds);
  v.certificate.scalars.emplace_back("L", l);
  detail::merge_regularity(v.regularity, {y[first]});
  return v;
}

StructureVerdict detect_chaki_pseudosymmetry(const std::string& name, const TensorField& t,
                                             const TensorField& nabla_t) {
  if (t.rank() != 2 && t.rank() != 4) throw ValenceMismatch("Chaki pseudosymmetry needs rank 2 or 4");
  require_derivative_of(nabla_t, t);
  if (t.is_zero()) {
    StructureVerdict v = make_verdict(name, Status::Vacuous);
    v.notes.push_back(t.name() + " vanishes identically");
    return v;
  }
  const std::size_t n = t.dim();
  IdentitySystem sys(n);
  for (std::size_t f = 0; f < t.size(); ++f) {
    Index idx = t.unflatten(f);
    for (std::size_t l = 0; l < n; ++l) {
      std::vector<std::pair<std::size_t, Expr>> terms{{l, Expr(2) * t[f]}};
      for (int j = 0; j < t.rank(); ++j) terms.emplace_back(idx[j], t.at(with_slot(idx, j, int(l))));
      sys.add(appended(idx, int(l)), nabla_t[f * n + l], terms);
    }
  }
  return solve_joint(name, sys, {"A"}, n, true);
}

StructureVerdict detect_weak_symmetry(const std::string& name, const TensorField& t, const TensorField& nabla_t) {
  if (t.rank() != 2 && t.rank() != 4) throw ValenceMismatch("weak symmetry needs rank 2 or 4");
  require_derivative_of(nabla_t, t);
  if (t.is_zero()) {
    StructureVerdict v = make_verdict(name, Status::Vacuous);
    v.notes.push_back(t.name() + " vanishes identically");
    return v;
  }
  const std::size_t n = t.dim();
  const std::vector<std::string> labels =
      t.rank() == 4 ? std::vector<std::string>{"A", "B", "Bbar", "D", "Dbar"} : std::vector<std::string>{"A", "B", "D"};
  IdentitySystem sys(labels.size() * n);
  for (std::size_t f = 0; f < t.size(); ++f) {
    Index idx = t.unflatten(f);
    for (std::size_t l = 0; l < n; ++l) {
      std::vector<std::pair<std::size_t, Expr>> terms{{l, t[f]}};
      for (int j = 0; j < t.rank(); ++j)
        terms.emplace_back((j + 1) * n + idx[j], t.at(with_slot(idx, j, int(l))));
      sys.add(appended(idx, int(l)), nabla_t[f * n + l], terms);
    }
  }
  return solve_joint(name, sys, labels, n, true);
}

std::pair<StructureVerdict, StructureVerdict> detect_class_AB(const TensorField& nabla_s) {
  if (nabla_s.rank() != 3) throw ValenceMismatch("class A/B needs the derivative of a rank 2 tensor");
  const std::size_t n = nabla_s.dim();
  std::vector<Expr> cyclic(n * n * n), codazzi(n * n * n);
  for (int i = 0; i < int(n); ++i)
    for (int j = 0; j < int(n); ++j)
      for (int k = 0; k < int(n); ++k) {
        std::size_t f = (i * n + j) * n + k;
        cyclic[f] = nabla_s.at({i, j, k}) + nabla_s.at({j, k, i}) + nabla_s.at({k, i, j});
        codazzi[f] = nabla_s.at({i, j, k}) - nabla_s.at({k, j, i});
      }
  return {detail::zero_verdict("cyclic_ricci_parallel", TensorField("cyclic nabla S", n, 3, std::move(cyclic))),
          detail::zero_verdict("codazzi_type_ricci", TensorField("Codazzi nabla S", n, 3, std::move(codazzi)))};
}

StructureVerdict detect_curvature_form_recurrence(const std::string& name, const TensorField& h,
                                                  const TensorField& nabla_h) {
  if (h.rank() != 4) throw ValenceMismatch("curvature 2-forms need a rank 4 tensor");
  require_derivative_of(nabla_h, h);
  if (h.is_zero()) {
    StructureVerdict v = make_verdict(name, Status::Vacuous);
    v.notes.push_back(h.name() + " vanishes identically");
    return v;
  }
  const int n = int(h.dim());
  auto dh = [&](int b, int c, int x, int y, int a) { return nabla_h.at({b, c, x, y, a}); };
  IdentitySystem sys(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int x = 0; x < n; ++x)
          for (int y = 0; y < n; ++y) {
            Expr lhs = dh(b, c, x, y, a) + dh(c, a, x, y, b) + dh(a, b, x, y, c);
            sys.add({a, b, c, x, y}, lhs,
                    {{std::size_t(a), h.at({b, c, x, y})},
                     {std::size_t(b), h.at({c, a, x, y})},
                     {std::size_t(c), h.at({a, b, x, y})}});
          }
  // With a vanishing left side A = 0 always solves; only a nonzero A says
  // anything about the metric.
  bool homogeneous = sys.homogeneous();
  StructureVerdict v = solve_joint(name, sys, {"A"}, h.dim(), homogeneous);
  if (homogeneous) v.notes.push_back("cyclic derivative sum vanishes identically; A must be nonzero");
  return v;
}

StructureVerdict detect_ricci_form_recurrence(const std::string& name, const TensorField& s,
                                              const TensorField& nabla_s) {
  if (s.rank() != 2) throw ValenceMismatch("Ricci 1-forms need a rank 2 tensor");
  require_derivative_of(nabla_s, s);
  if (s.is_zero()) {
    StructureVerdict v = make_verdict(name, Status::Vacuous);
    v.notes.push_back(s.name() + " vanishes identically");
    return v;
  }
  const int n = int(s.dim());
  IdentitySystem sys(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int x = 0; x < n; ++x)
        sys.add({a, b, x}, nabla_s.at({b, x, a}) - nabla_s.at({a, x, b}),
                {{std::size_t(a), s.at({b, x})}, {std::size_t(b), -s.at({a, x})}});
  bool homogeneous = sys.homogeneous();
  StructureVerdict v = solve_joint(name, sys, {"A"}, s.dim(), homogeneous);
  if (homogeneous) v.notes.push_back("left side vanishes identically; A must be nonzero");
  return v;
}

StructureVerdict compatible_tensor_space(const std::string& name, const TensorField& h, const ExprMatrix& ginv,
                                         bool symmetric_only) {
  if (h.rank() != 4) throw ValenceMismatch("compatibility needs a rank 4 tensor");
  const int n = int(h.dim());
  if (h.is_zero()) {
    StructureVerdict v = make_verdict(name, Status::Vacuous);
    v.notes.push_back(h.name() + " vanishes identically; every tensor is compatible");
    return v;
  }
  // up[w][x][b][c] = g^{mw} H_{m x b c}
  std::vector<Expr> up(h.size());
  for (std::size_t f = 0; f < h.size(); ++f) {
    if (h[f].is_zero()) continue;
    Index idx = h.unflatten(f);
    for (int w = 0; w < n; ++w) {
      const Expr& gi = ginv(idx[0], w);
      if (!gi.is_zero()) up[f - idx[0] * h.stride(0) + w * h.stride(0)] += gi * h[f];
    }
  }
  auto U = [&](int w, int x, int b, int c) -> const Expr& { return up[h.flatten({w, x, b, c})]; };

  std::vector<std::pair<int, int>> slots;  // unknown -> (p, q)
  std::vector<int> unknown_of(n * n);
  for (int p = 0; p < n; ++p)
    for (int q = symmetric_only ? p : 0; q < n; ++q) {
      unknown_of[p * n + q] = int(slots.size());
      if (symmetric_only) unknown_of[q * n + p] = int(slots.size());
      slots.emplace_back(p, q);
    }

  IdentitySystem sys(slots.size());
  for (int x = 0; x < n; ++x)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          std::vector<std::pair<std::size_t, Expr>> terms;
          for (int w = 0; w < n; ++w) {
            terms.emplace_back(unknown_of[a * n + w], U(w, x, b, c));
            terms.emplace_back(unknown_of[b * n + w], U(w, x, c, a));
            terms.emplace_back(unknown_of[c * n + w], U(w, x, a, b));
          }
          sys.add({x, a, b, c}, Expr(), terms);
        }

  StructureVerdict v = make_verdict(name, Status::Holds);
  ExprMatrix a(sys.size(), slots.size());
  for (std::size_t i = 0; i < sys.size(); ++i)
    for (const auto& [u, c] : sys.equation(i).terms) a(i, u) = c;
  ExprVector reg;
  auto basis = sys.size() ? null_space(a, &reg) : std::vector<ExprVector>{};
  if (!sys.size())
    for (std::size_t u = 0; u < slots.size(); ++u) {
      basis.emplace_back(slots.size());
      basis.back()[u] = Expr(1);
    }
  for (const auto& z : basis) {
    if (sys.violation(z, true)) throw std::logic_error("compatible basis vector fails the identity");
    ExprVector e(n * n);
    for (std::size_t u = 0; u < slots.size(); ++u) {
      auto [p, q] = slots[u];
      e[p * n + q] = z[u];
      if (symmetric_only) e[q * n + p] = z[u];
    }
    v.certificate.basis.push_back(std::move(e));
  }
  v.certificate.scalars.emplace_back("dimension", Expr(long(basis.size())));
  detail::merge_regularity(v.regularity, reg);
  if (symmetric_only) v.notes.push_back("symmetric E only");
  return v;
}

StructureVerdict compatible_vector_check(const std::string& name, const TensorField& h, const ExprMatrix& g,
                                         const ExprVector& y) {
  const int n = int(h.dim());
  if (h.rank() != 4) throw ValenceMismatch("compatibility needs a rank 4 tensor");
  if (int(y.size()) != n || int(g.rows()) != n) throw ValenceMismatch("vector has the wrong number of components");
  ExprVector pi = g * y;
  // yh[x][b][c] = Y^m H_{m x b c}
  std::vector<Expr> yh(n * n * n);
  for (int m = 0; m < n; ++m) {
    if (y[m].is_zero()) continue;
    for (int x = 0; x < n; ++x)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          const Expr& hv = h.at({m, x, b, c});
          if (!hv.is_zero()) yh[(x * n + b) * n + c] += y[m] * hv;
        }
  }
  auto YH = [&](int x, int b, int c) -> const Expr& { return yh[(x * n + b) * n + c]; };
  for (int x = 0; x < n; ++x)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          Expr r = pi[a] * YH(x, b, c) + pi[b] * YH(x, c, a) + pi[c] * YH(x, a, b);
          if (r.is_zero()) continue;
          StructureVerdict v = make_verdict(name, Status::Fails);
          v.witness = Witness{name + " residual", {x, a, b, c}, r};
          return v;
        }
  StructureVerdict v = make_verdict(name, Status::Holds);
  v.certificate.forms.push_back({"Pi", pi});
  return v;
}

std::vector<StructureVerdict> detect_semisymmetry_suite(Geometry& geo) {
  const TensorKind hs[] = {TensorKind::Riemann, TensorKind::Conformal, TensorKind::Projective,
                           TensorKind::Concircular, TensorKind::Conharmonic};
  const TensorKind ts[] = {TensorKind::Riemann,    TensorKind::Ricci,       TensorKind::Conformal,
                           TensorKind::Projective, TensorKind::Concircular, TensorKind::Conharmonic};
  std::vector<StructureVerdict> out;
  for (auto h : hs)
    for (auto t : ts) {
      std::string name = "semisymmetric_" + symbol_of(h) + "_" + symbol_of(t);
      if (!geo.defined(h) || !geo.defined(t)) {
        StructureVerdict v = make_verdict(name, Status::Vacuous);
        v.notes.push_back("undefined in dimension " + std::to_string(geo.dim()));
        out.push_back(std::move(v));
        continue;
      }
      out.push_back(detail::zero_verdict(name, geo.action(h, t)));
    }
  return out;
}

}  // namespace curvkit
