#pragma once

#include <string>
#include <utility>
#include <vector>

#include "curvkit/expr/numeric.hpp"
#include "curvkit/expr/parse.hpp"
#include "curvkit/linalg/matrix.hpp"

namespace curvkit {

struct OpaqueDecl {
  std::string name;
  Var argument = nullptr;
  bool positive = false;
};

/// A metric in a single coordinate chart.
class MetricSpec {
 public:
  /// Validates n >= 3, symmetry and a nonzero determinant. Throws
  /// std::invalid_argument or DegenerateMetric.
  MetricSpec(std::string name, std::vector<Var> coordinates, ExprMatrix g, std::vector<Var> parameters = {},
             std::vector<OpaqueDecl> opaque = {}, std::vector<Assumption> assumptions = {});

  const std::string& name() const { return name_; }
  std::size_t dim() const { return coords_.size(); }
  const std::vector<Var>& coordinates() const { return coords_; }
  Var coordinate(std::size_t i) const { return coords_[i]; }
  const ExprMatrix& g() const { return g_; }
  const Expr& g(std::size_t i, std::size_t j) const { return g_(i, j); }
  const std::vector<Var>& parameters() const { return params_; }
  const std::vector<OpaqueDecl>& opaque() const { return opaque_; }
  const std::vector<Assumption>& assumptions() const { return assumptions_; }

  /// Names in scope for parsing further expressions over this metric.
  ParseContext parse_context() const;

  /// Sampling configuration honouring assumptions and positive opaque atoms.
  EqualityConfig equality_config(std::uint64_t seed = 0, int num_points = 8) const;

 private:
  std::string name_;
  std::vector<Var> coords_;
  ExprMatrix g_;
  std::vector<Var> params_;
  std::vector<OpaqueDecl> opaque_;
  std::vector<Assumption> assumptions_;
};

/// Inertia (positive, negative) of the numeric matrix g at a point.
/// Throws std::domain_error when g is degenerate there.
std::pair<int, int> signature_at(const MetricSpec& m, const Assignment& point);

}  // namespace curvkit
