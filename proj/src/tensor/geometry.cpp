#include "curvkit/tensor/geometry.hpp"

namespace curvkit {

std::string symbol_of(TensorKind k) {
  switch (k) {
    case TensorKind::Metric: return "g";
    case TensorKind::Riemann: return "R";
    case TensorKind::Ricci: return "S";
    case TensorKind::Conformal: return "C";
    case TensorKind::Projective: return "P";
    case TensorKind::Concircular: return "W";
    case TensorKind::Conharmonic: return "K";
  }
  return "?";
}

std::optional<TensorKind> tensor_kind_from(const std::string& s) {
  for (auto k : {TensorKind::Metric, TensorKind::Riemann, TensorKind::Ricci, TensorKind::Conformal,
                 TensorKind::Projective, TensorKind::Concircular, TensorKind::Conharmonic})
    if (symbol_of(k) == s) return k;
  return std::nullopt;
}

Geometry::Geometry(MetricSpec m) : metric_(std::move(m)) {}

bool Geometry::defined(TensorKind k) const {
  return dim() >= 4 || (k != TensorKind::Conformal && k != TensorKind::Conharmonic);
}

const ExprMatrix& Geometry::inverse() {
  std::lock_guard lock(mutex_);
  if (!inverse_) inverse_ = invert_matrix(metric_.g(), true);
  return inverse_->matrix;
}

const Expr& Geometry::determinant() {
  std::lock_guard lock(mutex_);
  inverse();
  return inverse_->determinant;
}

const ChristoffelSymbols& Geometry::christoffel() {
  std::lock_guard lock(mutex_);
  if (!christoffel_) christoffel_ = curvkit::christoffel(metric_, inverse());
  return *christoffel_;
}

const Expr& Geometry::scalar() {
  std::lock_guard lock(mutex_);
  if (!scalar_) scalar_ = scalar_curvature(tensor(TensorKind::Ricci), inverse());
  return *scalar_;
}

const TensorField& Geometry::tensor(TensorKind k) {
  std::lock_guard lock(mutex_);
  auto it = tensors_.find(k);
  if (it != tensors_.end()) return it->second;
  TensorField t;
  switch (k) {
    case TensorKind::Metric: t = metric_tensor(metric_); break;
    case TensorKind::Riemann: t = riemann(metric_, christoffel()); break;
    case TensorKind::Ricci: t = ricci(tensor(TensorKind::Riemann), inverse()); break;
    case TensorKind::Conformal:
      t = derived_tensor(DerivedKind::Conformal, tensor(TensorKind::Metric), tensor(TensorKind::Riemann),
                         tensor(TensorKind::Ricci), scalar());
      break;
    case TensorKind::Projective:
      t = derived_tensor(DerivedKind::Projective, tensor(TensorKind::Metric), tensor(TensorKind::Riemann),
                         tensor(TensorKind::Ricci), scalar());
      break;
    case TensorKind::Concircular:
      t = derived_tensor(DerivedKind::Concircular, tensor(TensorKind::Metric), tensor(TensorKind::Riemann),
                         tensor(TensorKind::Ricci), scalar());
      break;
    case TensorKind::Conharmonic:
      t = derived_tensor(DerivedKind::Conharmonic, tensor(TensorKind::Metric), tensor(TensorKind::Riemann),
                         tensor(TensorKind::Ricci), scalar());
      break;
  }
  return tensors_.emplace(k, std::move(t)).first->second;
}

const TensorField& Geometry::nabla(TensorKind k) {
  std::lock_guard lock(mutex_);
  auto it = nablas_.find(k);
  if (it != nablas_.end()) return it->second;
  TensorField t = covariant_derivative(tensor(k), christoffel(), metric_).renamed("nabla " + symbol_of(k));
  return nablas_.emplace(k, std::move(t)).first->second;
}

const Endomorphism& Geometry::endomorphism(TensorKind k) {
  std::lock_guard lock(mutex_);
  auto it = endos_.find(k);
  if (it != endos_.end()) return it->second;
  return endos_.emplace(k, curvature_endomorphism(tensor(k), inverse())).first->second;
}

const TensorField& Geometry::gg() {
  std::lock_guard lock(mutex_);
  auto it = products_.find("gg");
  if (it != products_.end()) return it->second;
  const auto& g = tensor(TensorKind::Metric);
  return products_.emplace("gg", kulkarni_nomizu(g, g).renamed("g^g")).first->second;
}

const TensorField& Geometry::gs() {
  std::lock_guard lock(mutex_);
  auto it = products_.find("gs");
  if (it != products_.end()) return it->second;
  return products_
      .emplace("gs", kulkarni_nomizu(tensor(TensorKind::Metric), tensor(TensorKind::Ricci)).renamed("g^S"))
      .first->second;
}

const TensorField& Geometry::ss() {
  std::lock_guard lock(mutex_);
  auto it = products_.find("ss");
  if (it != products_.end()) return it->second;
  const auto& s = tensor(TensorKind::Ricci);
  return products_.emplace("ss", kulkarni_nomizu(s, s).renamed("S^S")).first->second;
}

const TensorField& Geometry::action(TensorKind h, TensorKind t) {
  std::lock_guard lock(mutex_);
  std::string key = symbol_of(h) + "." + symbol_of(t);
  auto it = products_.find(key);
  if (it != products_.end()) return it->second;
  return products_.emplace(key, curvature_action(endomorphism(h), tensor(t), key)).first->second;
}

const TensorField& Geometry::tachibana(TensorKind e, TensorKind t) {
  std::lock_guard lock(mutex_);
  std::string key = "Q(" + symbol_of(e) + "," + symbol_of(t) + ")";
  auto it = products_.find(key);
  if (it != products_.end()) return it->second;
  return products_.emplace(key, curvkit::tachibana(tensor(e), tensor(t)).renamed(key)).first->second;
}

}  // namespace curvkit
