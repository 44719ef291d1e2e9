#pragma once

#include <stdexcept>

#include "curvkit/linalg/matrix.hpp"
#include "curvkit/tensor/metric.hpp"
#include "curvkit/tensor/tensor.hpp"

namespace curvkit {

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Gamma^k_ij = 1/2 g^kl (d_i g_jl + d_j g_il - d_l g_ij). Metric
/// compatibility is verified exactly.
ChristoffelSymbols christoffel(const MetricSpec& m, const ExprMatrix& ginv);
ChristoffelSymbols christoffel(const MetricSpec& m);

/// Covariant curvature tensor with R_abcd = -g(Rm(d_a, d_b) d_c, d_d), where
/// Rm(X, Y) = [nabla_X, nabla_Y] - nabla_[X,Y]; Ricci is S_ij = g^hk R_hijk.
TensorField riemann(const MetricSpec& m, const ChristoffelSymbols& gamma);
TensorField ricci(const TensorField& riemann, const ExprMatrix& ginv);
Expr scalar_curvature(const TensorField& ricci, const ExprMatrix& ginv);

/// The metric as a symmetric (0,2) tensor.
TensorField metric_tensor(const MetricSpec& m);

/// T_{i1..ik,l} = d_l T_{i1..ik} - sum_j Gamma^m_{l ij} T_{i1..m..ik}; the
/// derivative direction is the last slot. Pair symmetries of T carry over.
TensorField covariant_derivative(const TensorField& t, const ChristoffelSymbols& gamma, const MetricSpec& m);

/// (J ^ F)_abcd = J_ad F_bc + J_bc F_ad - J_ac F_bd - J_bd F_ac.
TensorField kulkarni_nomizu(const TensorField& j, const TensorField& f);

enum class DerivedKind { Conformal, Projective, Concircular, Conharmonic };

/// C, P, W or K built from g, R, S and r. C and K need n >= 4.
TensorField derived_tensor(DerivedKind kind, const TensorField& g, const TensorField& riemann,
                           const TensorField& ricci, const Expr& scalar);

/// Nonzero entries h^m_a of the endomorphisms H(X,Y), (H(X,Y)Z)^m = g^mw H_XYZw.
struct Endomorphism {
  std::size_t dim = 0;
  struct Entry {
    int x, y, m, a;
    Expr value;
  };
  std::vector<Entry> entries;
};
Endomorphism curvature_endomorphism(const TensorField& h, const ExprMatrix& ginv);

/// (H.T)(X1..Xk; X, Y) = -sum_j T(X1, .., H(X,Y)Xj, .., Xk).
TensorField curvature_action(const TensorField& h, const TensorField& t, const ExprMatrix& ginv);
TensorField curvature_action(const Endomorphism& h, const TensorField& t, const std::string& name);

/// Q(E,T)(X1..Xk; X, Y) = -sum_j T(X1, .., (X ^_E Y)Xj, .., Xk) with
/// (X ^_E Y)Z = E(Y,Z)X - E(X,Z)Y.
TensorField tachibana(const TensorField& e, const TensorField& t);

}  // namespace curvkit
