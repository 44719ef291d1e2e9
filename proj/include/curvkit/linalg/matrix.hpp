#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "curvkit/expr/expr.hpp"

namespace curvkit {

using ExprVector = std::vector<Expr>;

/// Dense row-major matrix of canonical Exprs.
class ExprMatrix {
 public:
  ExprMatrix(std::size_t rows, std::size_t cols);
  static ExprMatrix identity(std::size_t n);
  static ExprMatrix diagonal(const ExprVector& d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Expr& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Expr& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_square() const { return rows_ == cols_; }
  bool is_symmetric() const;
  bool is_zero() const;
  ExprVector row(std::size_t i) const;

  friend ExprMatrix operator*(const ExprMatrix& a, const ExprMatrix& b);
  friend ExprVector operator*(const ExprMatrix& a, const ExprVector& v);
  friend bool operator==(const ExprMatrix& a, const ExprMatrix& b);

  std::string to_string() const;

 private:
  std::size_t rows_, cols_;
  std::vector<Expr> data_;
};

class DegenerateMetric : public std::runtime_error {
 public:
  DegenerateMetric() : std::runtime_error("degenerate metric") {}
};

struct Inverse {
  ExprMatrix matrix;
  Expr determinant;  ///< assumed nonvanishing
};

/// Exact inverse. Throws DegenerateMetric when the determinant is zero.
/// With symmetric set, the input must be symmetric and the result is
/// symmetrized from its upper triangle.
Inverse invert_matrix(const ExprMatrix& g, bool symmetric = false);

struct LinearSolution {
  enum class Status { Unique, Family, Inconsistent };
  Status status = Status::Unique;
  ExprVector particular;               ///< empty when Inconsistent
  std::vector<ExprVector> null_basis;  ///< homogeneous solutions
  ExprVector regularity;               ///< non-constant pivots assumed nonzero
  std::optional<std::size_t> inconsistent_row;
  Expr inconsistent_residual;  ///< reduced right-hand side of that row
};

/// Solve A x = b by elimination over the field of Exprs. The pivot is the
/// nonzero entry of least structural size, ties broken row-major.
LinearSolution solve_linear(const ExprMatrix& a, const ExprVector& b);

/// Basis of the right null space, each vector scaled so its first nonzero
/// entry is 1. Pivots assumed nonzero are appended to regularity if given.
std::vector<ExprVector> null_space(const ExprMatrix& a, ExprVector* regularity = nullptr);

/// Row rank over the Expr field.
std::size_t rank(const ExprMatrix& a);

}  // namespace curvkit
