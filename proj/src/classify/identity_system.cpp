#include "identity_system.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace curvkit::detail {

void IdentitySystem::add(Index id, Expr lhs, const std::vector<std::pair<std::size_t, Expr>>& terms) {
  std::map<std::size_t, Expr> merged;
  for (const auto& [u, c] : terms) {
    if (c.is_zero()) continue;
    merged[u] += c;
  }
  Equation eq{std::move(id), std::move(lhs), {}};
  for (auto& [u, c] : merged)
    if (!c.is_zero()) eq.terms.emplace_back(u, std::move(c));
  if (eq.lhs.is_zero() && eq.terms.empty()) return;
  eqs_.push_back(std::move(eq));
}

bool IdentitySystem::homogeneous() const {
  return std::all_of(eqs_.begin(), eqs_.end(), [](const Equation& e) { return e.lhs.is_zero(); });
}

LinearSolution IdentitySystem::solve() const {
  if (eqs_.empty()) {
    LinearSolution sol;
    sol.particular.assign(unknowns_, Expr());
    for (std::size_t u = 0; u < unknowns_; ++u) {
      ExprVector v(unknowns_);
      v[u] = Expr(1);
      sol.null_basis.push_back(std::move(v));
    }
    sol.status = unknowns_ ? LinearSolution::Status::Family : LinearSolution::Status::Unique;
    return sol;
  }
  ExprMatrix a(eqs_.size(), unknowns_);
  ExprVector b(eqs_.size());
  for (std::size_t i = 0; i < eqs_.size(); ++i) {
    b[i] = eqs_[i].lhs;
    for (const auto& [u, c] : eqs_[i].terms) a(i, u) = c;
  }
  return solve_linear(a, b);
}

std::optional<std::size_t> IdentitySystem::violation(const ExprVector& x, bool homogeneous) const {
  for (std::size_t i = 0; i < eqs_.size(); ++i) {
    Expr r = homogeneous ? Expr() : eqs_[i].lhs;
    for (const auto& [u, c] : eqs_[i].terms) r -= c * x[u];
    if (!r.is_zero()) return i;
  }
  return std::nullopt;
}

void IdentitySystem::verify(const LinearSolution& sol) const {
  if (sol.status == LinearSolution::Status::Inconsistent) return;
  if (violation(sol.particular, false)) throw std::logic_error("certificate residual is not zero");
  for (const auto& v : sol.null_basis)
    if (violation(v, true)) throw std::logic_error("family direction residual is not zero");
}

void merge_regularity(ExprVector& out, const ExprVector& extra) {
  for (const Expr& e : extra) {
    if (e.is_constant()) continue;
    if (std::find(out.begin(), out.end(), e) == out.end() && std::find(out.begin(), out.end(), -e) == out.end())
      out.push_back(e);
  }
}

Certificate joint_certificate(const std::vector<std::string>& labels, std::size_t n, const LinearSolution& sol) {
  auto split = [&](const ExprVector& x) {
    std::vector<NamedForm> forms;
    for (std::size_t f = 0; f < labels.size(); ++f)
      forms.push_back({labels[f], ExprVector(x.begin() + f * n, x.begin() + (f + 1) * n)});
    return forms;
  };
  Certificate c;
  c.forms = split(sol.particular);
  for (const auto& v : sol.null_basis) c.family.push_back(split(v));
  return c;
}

bool all_zero(const Certificate& c) {
  if (!c.family.empty()) return false;
  for (const auto& f : c.forms)
    for (const auto& e : f.components)
      if (!e.is_zero()) return false;
  return true;
}

StructureVerdict make_verdict(const std::string& name, Status status) {
  StructureVerdict v;
  v.name = name;
  v.status = status;
  return v;
}

StructureVerdict zero_verdict(const std::string& name, const TensorField& t) {
  for (std::size_t f = 0; f < t.size(); ++f) {
    if (t[f].is_zero()) continue;
    StructureVerdict v = make_verdict(name, Status::Fails);
    v.witness = Witness{t.name(), t.unflatten(f), t[f]};
    return v;
  }
  return make_verdict(name, Status::Holds);
}

std::string index_label(const Index& idx) {
  std::string s;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(idx[i] + 1);
  }
  return s;
}

}  // namespace curvkit::detail
