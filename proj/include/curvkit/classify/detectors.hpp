#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "curvkit/classify/verdict.hpp"
#include "curvkit/tensor/geometry.hpp"

namespace curvkit {

class ValenceMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Holds iff nabla_t, the covariant derivative of T, vanishes.
StructureVerdict detect_symmetry(const std::string& name, const TensorField& nabla_t);

/// nabla T = sum_b A_b (x) basis[b], solved direction by direction. The
/// one-forms are labelled A, B, D, E, ... in basis order.
StructureVerdict detect_linear_recurrence(const std::string& name, const TensorField& nabla_t,
                                          const std::vector<TensorField>& basis);

/// X = L Y for one global scalar L.
StructureVerdict detect_proportional(const std::string& name, const TensorField& x, const TensorField& y);

/// (nabla_X T)(X1..Xk) = 2A(X)T(X1..Xk) + sum_j A(Xj) T(X1..X..Xk) with a
/// nonzero one-form A; T of rank 2 or 4.
StructureVerdict detect_chaki_pseudosymmetry(const std::string& name, const TensorField& t,
                                             const TensorField& nabla_t);

/// (nabla_X T)(X1..Xk) = A(X)T(X1..Xk) + sum_j F_j(Xj) T(X1..X..Xk) with one
/// independent one-form per slot (B, Bbar, D, Dbar for rank 4; B, D for
/// rank 2), not all zero.
StructureVerdict detect_weak_symmetry(const std::string& name, const TensorField& t, const TensorField& nabla_t);

/// S - (r/n) g = 0.
StructureVerdict detect_einstein(const TensorField& s, const TensorField& g, const Expr& r);
/// S = beta eta (x) eta, with eta normalized to eta_k = 1 at the first nonzero
/// diagonal entry S_kk. Parallelity of eta is decided with gamma.
StructureVerdict detect_ricci_simple(const TensorField& s, const ChristoffelSymbols& gamma, const MetricSpec& m);
/// rank(S - alpha g) <= 1 for some scalar alpha.
StructureVerdict detect_quasi_einstein(const TensorField& s, const TensorField& g);
/// Every partial derivative of r vanishes.
StructureVerdict detect_constant_scalar_curvature(const Expr& r, const MetricSpec& m);
/// einstein, ricci_simple, quasi_einstein, constant_scalar_curvature.
std::vector<StructureVerdict> detect_einstein_family(Geometry& geo);

/// Class A: S_ij,k + S_jk,i + S_ki,j = 0. Class B: S_ij,k - S_kj,i = 0.
std::pair<StructureVerdict, StructureVerdict> detect_class_AB(const TensorField& nabla_s);

/// Cyclic sum over (X1, X2, X3) of (nabla_X1 H)(X2, X3, X, Y) equals the
/// A-weighted cyclic sum of H(X2, X3, X, Y).
StructureVerdict detect_curvature_form_recurrence(const std::string& name, const TensorField& h,
                                                  const TensorField& nabla_h);
/// (nabla_X1 S)(X2, X) - (nabla_X2 S)(X1, X) = A(X1) S(X2, X) - A(X2) S(X1, X).
StructureVerdict detect_ricci_form_recurrence(const std::string& name, const TensorField& s,
                                              const TensorField& nabla_s);

/// Null space of H(EX1, X, X2, X3) + H(EX2, X, X3, X1) + H(EX3, X, X1, X2) = 0
/// in the components E_ij, where (EX)^m = g^mw E(X, d_w). With
/// symmetric_only the unknowns are E_ij = E_ji, i <= j. Basis vectors are
/// n*n matrices in row-major order either way.
StructureVerdict compatible_tensor_space(const std::string& name, const TensorField& h, const ExprMatrix& ginv,
                                         bool symmetric_only);

/// Pi(X1) H(Y, X, X2, X3) + cyclic = 0 with Pi = g(., Y).
StructureVerdict compatible_vector_check(const std::string& name, const TensorField& h, const ExprMatrix& g,
                                         const ExprVector& y);

/// H.T = 0 for H in {R, C, P, W, K} and T in {R, S, C, P, W, K}, named
/// "semisymmetric_<H>_<T>". Tensors undefined in dimension 3 give Vacuous.
std::vector<StructureVerdict> detect_semisymmetry_suite(Geometry& geo);

}  // namespace curvkit
