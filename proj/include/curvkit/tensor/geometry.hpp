#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "curvkit/tensor/curvature.hpp"

namespace curvkit {

enum class TensorKind { Metric, Riemann, Ricci, Conformal, Projective, Concircular, Conharmonic };

/// One-letter symbol: g, R, S, C, P, W, K.
std::string symbol_of(TensorKind k);
std::optional<TensorKind> tensor_kind_from(const std::string& symbol);

/// Lazily computed and cached curvature data of one metric. Accessors are
/// safe to call from several threads.
class Geometry {
 public:
  explicit Geometry(MetricSpec m);

  const MetricSpec& metric() const { return metric_; }
  std::size_t dim() const { return metric_.dim(); }

  const ExprMatrix& inverse();
  const Expr& determinant();
  const ChristoffelSymbols& christoffel();
  const TensorField& tensor(TensorKind k);
  const TensorField& nabla(TensorKind k);
  const Endomorphism& endomorphism(TensorKind k);
  const Expr& scalar();
  /// g ^ g, g ^ S and S ^ S.
  const TensorField& gg();
  const TensorField& gs();
  const TensorField& ss();
  /// H.T and Q(E,T), named "H.T" and "Q(E,T)".
  const TensorField& action(TensorKind h, TensorKind t);
  const TensorField& tachibana(TensorKind e, TensorKind t);

  /// False for C and K in dimension 3.
  bool defined(TensorKind k) const;

 private:
  MetricSpec metric_;
  std::recursive_mutex mutex_;
  std::optional<Inverse> inverse_;
  std::optional<ChristoffelSymbols> christoffel_;
  std::optional<Expr> scalar_;
  std::map<TensorKind, TensorField> tensors_;
  std::map<TensorKind, TensorField> nablas_;
  std::map<TensorKind, Endomorphism> endos_;
  std::map<std::string, TensorField> products_;
};

}  // namespace curvkit
