#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <random>

#include "curvkit/expr/numeric.hpp"
#include "curvkit/linalg/matrix.hpp"
#include "test_support.hpp"

using namespace curvkit;
using curvkit::testing::P;

namespace {

ExprMatrix from_strings(std::size_t r, std::size_t c, std::vector<std::string> v) {
  ExprMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = P(v[i * c + j]);
  return m;
}

ExprMatrix metric31() {
  return from_strings(4, 4, {"exp(x1+x3)", "1", "0", "0", "1", "0", "0", "0", "0", "0", "1", "0", "0", "0", "0",
                             "exp(x1)"});
}

Eigen::MatrixXd numeric(const ExprMatrix& m, const Assignment& at) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = eval_numeric(m(i, j), at);
  return out;
}

Assignment random_point(std::mt19937_64& rng) {
  Assignment at;
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int i = 1; i <= 4; ++i) at[curvkit::testing::X(i)] = u(rng);
  at[parameter_symbol("c")] = u(rng);
  return at;
}

}  // namespace

TEST(Linalg, InverseOfIdentity) {
  auto inv = invert_matrix(ExprMatrix::identity(4), true);
  EXPECT_EQ(inv.matrix, ExprMatrix::identity(4));
  EXPECT_EQ(inv.determinant, Expr(1));
}

TEST(Linalg, InverseOfLorentzianMetric) {
  ExprMatrix g = metric31();
  auto inv = invert_matrix(g, true);
  EXPECT_EQ(inv.matrix(0, 1), Expr(1));
  EXPECT_EQ(inv.matrix(1, 1), P("-exp(x1+x3)"));
  EXPECT_EQ(inv.matrix(2, 2), Expr(1));
  EXPECT_EQ(inv.matrix(3, 3), P("exp(-x1)"));
  EXPECT_EQ(inv.matrix(0, 0), Expr(0));
  EXPECT_EQ(g * inv.matrix, ExprMatrix::identity(4));
  EXPECT_EQ(inv.determinant, P("-exp(x1)"));
  std::mt19937_64 rng(3);
  for (int k = 0; k < 5; ++k) {
    Assignment at = random_point(rng);
    Eigen::MatrixXd diff = numeric(g, at).inverse() - numeric(inv.matrix, at);
    EXPECT_LT(diff.norm(), 1e-9);
  }
}

TEST(Linalg, InverseOfDiagonal) {
  ExprVector d{P("x1^2+1"), P("exp(x2)"), P("c"), P("f(x1)")};
  auto inv = invert_matrix(ExprMatrix::diagonal(d), true);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(inv.matrix(i, i), Expr(1) / d[i]);
}

TEST(Linalg, DegenerateMatrixRejected) {
  ExprMatrix g = from_strings(2, 2, {"x1", "x2", "2*x1", "2*x2"});
  EXPECT_THROW(invert_matrix(g), DegenerateMetric);
  EXPECT_THROW(invert_matrix(from_strings(2, 2, {"1", "2", "3", "4"}), true), std::invalid_argument);
}

TEST(Linalg, SolveTrivialCases) {
  Expr s11 = P("(1+2*exp(x1+x3))/4");
  auto sol = solve_linear(from_strings(1, 1, {"1"}), {s11});
  ASSERT_EQ(sol.status, LinearSolution::Status::Unique);
  EXPECT_EQ(sol.particular[0], s11);

  auto bad = solve_linear(from_strings(2, 1, {"1", "1"}), {Expr(1), Expr(2)});
  ASSERT_EQ(bad.status, LinearSolution::Status::Inconsistent);
  ASSERT_TRUE(bad.inconsistent_row.has_value());
  EXPECT_EQ(*bad.inconsistent_row, 1u);
  EXPECT_FALSE(bad.inconsistent_residual.is_zero());
}

TEST(Linalg, SolveRecordsPivots) {
  ExprMatrix a = from_strings(3, 2, {"x1", "1", "exp(x1)", "x2", "x1+exp(x1)", "1+x2"});
  ExprVector b{P("x3"), P("x4"), P("x3+x4")};
  auto sol = solve_linear(a, b);
  ASSERT_EQ(sol.status, LinearSolution::Status::Unique);
  auto residual = a * sol.particular;
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(residual[i], b[i]);
  EXPECT_FALSE(sol.regularity.empty());
}

TEST(Linalg, FamilyAndNullSpace) {
  ExprMatrix zero(2, 3);
  auto basis = null_space(zero);
  ASSERT_EQ(basis.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(basis[i][i], Expr(1));
  EXPECT_TRUE(null_space(ExprMatrix::identity(3)).empty());

  ExprMatrix a = from_strings(2, 4, {"1", "x1", "0", "exp(x2)", "0", "0", "1", "x3"});
  ExprVector b{P("x4"), P("1")};
  auto sol = solve_linear(a, b);
  ASSERT_EQ(sol.status, LinearSolution::Status::Family);
  EXPECT_EQ(sol.null_basis.size(), 2u);
  for (const auto& v : sol.null_basis) {
    for (const auto& e : a * v) EXPECT_TRUE(e.is_zero());
    auto first = std::find_if(v.begin(), v.end(), [](const Expr& e) { return !e.is_zero(); });
    EXPECT_EQ(*first, Expr(1));
  }
  auto r = a * sol.particular;
  EXPECT_EQ(r[0], b[0]);
  EXPECT_EQ(r[1], b[1]);
}

TEST(Linalg, RandomRationalSystemsMatchNumericElimination) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t m = 2 + rng() % 4, n = 2 + rng() % 4;
    ExprMatrix a(m, n);
    Eigen::MatrixXd an(m, n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        int v = (rng() % 3 == 0) ? 0 : coef(rng);
        a(i, j) = Expr(v);
        an(i, j) = v;
      }
    ExprVector b(m);
    Eigen::VectorXd bn(m);
    for (std::size_t i = 0; i < m; ++i) {
      int v = coef(rng);
      b[i] = Expr(v);
      bn(i) = v;
    }
    auto sol = solve_linear(a, b);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(an);
    Eigen::MatrixXd aug(m, n + 1);
    aug << an, bn;
    Eigen::FullPivLU<Eigen::MatrixXd> lu_aug(aug);
    bool solvable = lu.rank() == lu_aug.rank();
    EXPECT_EQ(sol.status != LinearSolution::Status::Inconsistent, solvable);
    EXPECT_EQ(rank(a), static_cast<std::size_t>(lu.rank()));
    if (solvable) {
      EXPECT_EQ(sol.null_basis.size(), n - lu.rank());
      auto r = a * sol.particular;
      for (std::size_t i = 0; i < m; ++i) EXPECT_EQ(r[i], b[i]);
    }
    // Row permutation does not change the verdict.
    ExprMatrix ap(m, n);
    ExprVector bp(m);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) ap(i, j) = a(m - 1 - i, j);
      bp[i] = b[m - 1 - i];
    }
    EXPECT_EQ(solve_linear(ap, bp).status, sol.status);
  }
}

TEST(Linalg, SymbolicRankMatchesNumericRank) {
  ExprMatrix a = from_strings(3, 4, {"x1", "exp(x2)", "1", "0", "x1^2", "x1*exp(x2)", "x1", "0", "c", "0", "1",
                                     "exp(x1+x3)"});
  std::size_t r = rank(a);
  EXPECT_EQ(r + null_space(a).size(), 4u);
  std::mt19937_64 rng(9);
  for (int k = 0; k < 5; ++k) {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(numeric(a, random_point(rng)));
    EXPECT_EQ(static_cast<std::size_t>(lu.rank()), r);
  }
}
