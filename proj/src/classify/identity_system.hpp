#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "curvkit/classify/verdict.hpp"
#include "curvkit/linalg/matrix.hpp"

namespace curvkit::detail {

/// Componentwise identity lhs = sum coeff * unknown, one equation per
/// component id. Equations that are 0 = 0 are dropped on insertion.
class IdentitySystem {
 public:
  struct Equation {
    Index id;
    Expr lhs;
    std::vector<std::pair<std::size_t, Expr>> terms;
  };

  explicit IdentitySystem(std::size_t unknowns) : unknowns_(unknowns) {}

  void add(Index id, Expr lhs, const std::vector<std::pair<std::size_t, Expr>>& terms);

  std::size_t unknowns() const { return unknowns_; }
  std::size_t size() const { return eqs_.size(); }
  const Equation& equation(std::size_t i) const { return eqs_[i]; }
  bool homogeneous() const;

  LinearSolution solve() const;

  /// First equation not satisfied by x (with lhs dropped when homogeneous).
  std::optional<std::size_t> violation(const ExprVector& x, bool homogeneous) const;
  /// Throws std::logic_error unless the particular solution and every null
  /// vector satisfy the identity exactly.
  void verify(const LinearSolution& sol) const;

 private:
  std::size_t unknowns_;
  std::vector<Equation> eqs_;
};

/// Append the non-constant members of extra not already in out.
void merge_regularity(ExprVector& out, const ExprVector& extra);

/// Unknown u of a joint system holds component u % n of form u / n.
Certificate joint_certificate(const std::vector<std::string>& labels, std::size_t n, const LinearSolution& sol);

bool all_zero(const Certificate& c);

StructureVerdict make_verdict(const std::string& name, Status status);

/// Fails verdict with the first nonzero component of t as witness, or a
/// Holds verdict if there is none.
StructureVerdict zero_verdict(const std::string& name, const TensorField& t);

std::string index_label(const Index& idx);

}  // namespace curvkit::detail
