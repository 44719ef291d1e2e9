#pragma once

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include "curvkit/expr/expr.hpp"

namespace curvkit {

/// Declared index symmetries, checked exactly when a tensor is built.
/// Pair flags refer to slots (0,1) and (2,3); the Bianchi flag is the
/// cyclic sum over slots 1, 2, 3.
enum Symmetry : unsigned {
  kNoSymmetry = 0,
  kSymmetric = 1u << 0,        // rank 2: T_ij = T_ji
  kAntisymFirstPair = 1u << 1,
  kAntisymLastPair = 1u << 2,
  kPairExchange = 1u << 3,
  kFirstBianchi = 1u << 4,
};
constexpr unsigned kRiemannSymmetries = kAntisymFirstPair | kAntisymLastPair | kPairExchange | kFirstBianchi;

class SymmetryViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Index = std::vector<int>;

/// Covariant tensor of rank k with dense storage, components indexed from 0.
class TensorField {
 public:
  TensorField() = default;
  /// Throws SymmetryViolation if a declared symmetry fails.
  TensorField(std::string name, std::size_t dim, int rank, std::vector<Expr> components,
              unsigned symmetries = kNoSymmetry);
  static TensorField zero(std::string name, std::size_t dim, int rank);

  const std::string& name() const { return name_; }
  std::size_t dim() const { return dim_; }
  int rank() const { return rank_; }
  unsigned symmetries() const { return symmetries_; }
  std::size_t size() const { return data_.size(); }

  const Expr& operator[](std::size_t flat) const { return data_[flat]; }
  const Expr& at(const Index& idx) const { return data_[flatten(idx)]; }
  const Expr& at(std::initializer_list<int> idx) const { return at(Index(idx)); }
  const std::vector<Expr>& components() const { return data_; }

  std::size_t flatten(const Index& idx) const;
  Index unflatten(std::size_t flat) const;
  std::size_t stride(int slot) const { return strides_[slot]; }

  bool is_zero() const;
  std::vector<std::size_t> nonzero() const;

  /// One line per nonzero component, "R[1,3,1,3] = -1/2*exp(x1+x3)", in
  /// lexicographic index order with 1-based indices.
  std::string dump(const std::string& symbol) const;

  friend TensorField operator+(const TensorField& a, const TensorField& b);
  friend TensorField operator-(const TensorField& a, const TensorField& b);
  friend TensorField operator*(const Expr& s, const TensorField& t);
  TensorField renamed(std::string name) const;
  TensorField with_symmetries(unsigned symmetries) const;

 private:
  void verify() const;

  std::string name_;
  std::size_t dim_ = 0;
  int rank_ = 0;
  unsigned symmetries_ = kNoSymmetry;
  std::vector<std::size_t> strides_;
  std::vector<Expr> data_;
};

/// Gamma^k_ij stored as gamma(k, i, j).
class ChristoffelSymbols {
 public:
  ChristoffelSymbols(std::size_t dim, std::vector<Expr> data);
  std::size_t dim() const { return n_; }
  const Expr& operator()(std::size_t k, std::size_t i, std::size_t j) const { return data_[(k * n_ + i) * n_ + j]; }
  bool is_zero() const;
  std::string dump() const;

 private:
  std::size_t n_;
  std::vector<Expr> data_;
};

}  // namespace curvkit
