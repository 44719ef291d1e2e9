#include "curvkit/tensor/metric.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace curvkit {

MetricSpec::MetricSpec(std::string name, std::vector<Var> coordinates, ExprMatrix g, std::vector<Var> parameters,
                       std::vector<OpaqueDecl> opaque, std::vector<Assumption> assumptions)
    : name_(std::move(name)),
      coords_(std::move(coordinates)),
      g_(std::move(g)),
      params_(std::move(parameters)),
      opaque_(std::move(opaque)),
      assumptions_(std::move(assumptions)) {
  if (coords_.size() < 3) throw std::invalid_argument("metric dimension must be at least 3");
  if (g_.rows() != coords_.size() || !g_.is_square())
    throw std::invalid_argument("metric matrix size does not match the coordinate count");
  if (!g_.is_symmetric()) throw std::invalid_argument("metric is not symmetric");
  invert_matrix(g_, true);  // throws DegenerateMetric
}

ParseContext MetricSpec::parse_context() const {
  ParseContext ctx;
  ctx.coordinates = coords_;
  ctx.parameters = params_;
  for (const auto& o : opaque_) ctx.add_opaque(o.name, o.argument);
  return ctx;
}

EqualityConfig MetricSpec::equality_config(std::uint64_t seed, int num_points) const {
  EqualityConfig c;
  c.seed = seed;
  c.num_points = num_points;
  c.assumptions = assumptions_;
  for (const auto& o : opaque_)
    if (o.positive) c.positive_opaque.push_back(o.name);
  return c;
}

std::pair<int, int> signature_at(const MetricSpec& m, const Assignment& point) {
  const std::size_t n = m.dim();
  Eigen::MatrixXd g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = eval_numeric(m.g(i, j), point);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  double scale = ev.cwiseAbs().maxCoeff();
  int pos = 0, neg = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (std::fabs(ev(i)) <= 1e-12 * std::max(scale, 1.0)) throw std::domain_error("metric degenerate at point");
    (ev(i) > 0 ? pos : neg)++;
  }
  return {pos, neg};
}

}  // namespace curvkit
