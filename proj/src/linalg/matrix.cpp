#include "curvkit/linalg/matrix.hpp"

#include <algorithm>
#include <unordered_map>

namespace curvkit {

ExprMatrix::ExprMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
  if (rows == 0 || cols == 0) throw std::invalid_argument("matrix dimensions must be positive");
}

ExprMatrix ExprMatrix::identity(std::size_t n) {
  ExprMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Expr(1);
  return m;
}

ExprMatrix ExprMatrix::diagonal(const ExprVector& d) {
  ExprMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

bool ExprMatrix::is_symmetric() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i + 1; j < cols_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

bool ExprMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Expr& e) { return e.is_zero(); });
}

ExprVector ExprMatrix::row(std::size_t i) const {
  return ExprVector(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
}

ExprMatrix operator*(const ExprMatrix& a, const ExprMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: dimension mismatch");
  ExprMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Expr& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (!b(k, j).is_zero()) c(i, j) += x * b(k, j);
    }
  return c;
}

ExprVector operator*(const ExprMatrix& a, const ExprVector& v) {
  if (a.cols_ != v.size()) throw std::invalid_argument("matrix-vector product: dimension mismatch");
  ExprVector out(a.rows_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k)
      if (!a(i, k).is_zero() && !v[k].is_zero()) out[i] += a(i, k) * v[k];
  return out;
}

bool operator==(const ExprMatrix& a, const ExprMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::string ExprMatrix::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    s += i ? ", [" : "[";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) s += ", ";
      s += (*this)(i, j).to_string();
    }
    s += "]";
  }
  return s + "]";
}

namespace {

using Row = std::vector<Expr>;

struct Reduction {
  std::vector<Row> rows;          // surviving rows, reduced
  std::vector<std::size_t> origin;  // original index of each surviving row
  std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, column)
  ExprVector regularity;
};

std::size_t row_hash(const Row& r) {
  std::size_t h = 0;
  for (const auto& e : r) h = h * 1000003 + e.hash();
  return h;
}

// Scale so the first nonzero entry is 1; false for a zero row.
bool normalize_row(Row& r, std::size_t ncols) {
  for (std::size_t j = 0; j < ncols; ++j) {
    if (r[j].is_zero()) continue;
    if (r[j] == Expr(1)) return true;
    Expr inv = Expr(1) / r[j];
    for (std::size_t k = j; k < r.size(); ++k)
      if (!r[k].is_zero()) r[k] *= inv;
    return true;
  }
  return false;
}

// Gauss-Jordan reduction of the first nvars columns of [rows]. Extra
// columns (right-hand sides) are carried along. Zero rows in the unknowns
// are kept only if their extra columns are nonzero.
Reduction reduce(std::vector<Row> input, std::size_t nvars) {
  Reduction red;
  std::unordered_multimap<std::size_t, std::size_t> seen;
  for (std::size_t i = 0; i < input.size(); ++i) {
    Row r = std::move(input[i]);
    if (!normalize_row(r, r.size())) continue;
    std::size_t h = row_hash(r);
    bool dup = false;
    for (auto [it, end] = seen.equal_range(h); it != end; ++it)
      if (red.rows[it->second] == r) dup = true;
    if (dup) continue;
    seen.emplace(h, red.rows.size());
    red.rows.push_back(std::move(r));
    red.origin.push_back(i);
  }
  std::vector<bool> row_used(red.rows.size(), false), col_used(nvars, false);
  for (;;) {
    std::size_t best_r = 0, best_c = 0, best_size = 0;
    bool found = false;
    for (std::size_t i = 0; i < red.rows.size(); ++i) {
      if (row_used[i]) continue;
      for (std::size_t j = 0; j < nvars; ++j) {
        if (col_used[j] || red.rows[i][j].is_zero()) continue;
        std::size_t sz = red.rows[i][j].structural_size();
        if (!found || sz < best_size) {
          found = true;
          best_r = i;
          best_c = j;
          best_size = sz;
        }
      }
    }
    if (!found) break;
    Row& pr = red.rows[best_r];
    Expr pivot = pr[best_c];
    if (!pivot.is_constant()) {
      if (std::find(red.regularity.begin(), red.regularity.end(), pivot) == red.regularity.end())
        red.regularity.push_back(pivot);
    }
    Expr inv = Expr(1) / pivot;
    for (auto& e : pr)
      if (!e.is_zero()) e *= inv;
    for (std::size_t i = 0; i < red.rows.size(); ++i) {
      if (i == best_r) continue;
      Row& r = red.rows[i];
      if (r[best_c].is_zero()) continue;
      Expr f = r[best_c];
      for (std::size_t k = 0; k < r.size(); ++k)
        if (!pr[k].is_zero()) r[k] -= f * pr[k];
    }
    row_used[best_r] = true;
    col_used[best_c] = true;
    red.pivots.emplace_back(best_r, best_c);
  }
  return red;
}

std::vector<ExprVector> basis_from(const Reduction& red, std::size_t nvars) {
  std::vector<bool> is_pivot(nvars, false);
  for (auto [r, c] : red.pivots) is_pivot[c] = true;
  std::vector<ExprVector> basis;
  for (std::size_t f = 0; f < nvars; ++f) {
    if (is_pivot[f]) continue;
    ExprVector v(nvars);
    v[f] = Expr(1);
    for (auto [r, c] : red.pivots) v[c] = -red.rows[r][f];
    normalize_row(v, nvars);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace

Inverse invert_matrix(const ExprMatrix& g, bool symmetric) {
  if (!g.is_square()) throw std::invalid_argument("cannot invert a non-square matrix");
  if (symmetric && !g.is_symmetric()) throw std::invalid_argument("matrix is not symmetric");
  const std::size_t n = g.rows();
  std::vector<Row> m(n, Row(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = g(i, j);
    m[i][n + i] = Expr(1);
  }
  // Column-wise pivoting keeps the determinant sign bookkeeping simple.
  Expr det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t best = n;
    for (std::size_t r = c; r < n; ++r) {
      if (m[r][c].is_zero()) continue;
      if (best == n || m[r][c].structural_size() < m[best][c].structural_size()) best = r;
    }
    if (best == n) throw DegenerateMetric();
    if (best != c) {
      std::swap(m[best], m[c]);
      det = -det;
    }
    Expr pivot = m[c][c];
    det *= pivot;
    Expr inv = Expr(1) / pivot;
    for (auto& e : m[c])
      if (!e.is_zero()) e *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c].is_zero()) continue;
      Expr f = m[r][c];
      for (std::size_t k = 0; k < 2 * n; ++k)
        if (!m[c][k].is_zero()) m[r][k] -= f * m[c][k];
    }
  }
  ExprMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = m[i][n + j];
  if (symmetric)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) inv(i, j) = inv(j, i);
  return {std::move(inv), det};
}

LinearSolution solve_linear(const ExprMatrix& a, const ExprVector& b) {
  if (a.rows() != b.size()) throw std::invalid_argument("solve_linear: right-hand side length mismatch");
  const std::size_t n = a.cols();
  std::vector<Row> rows(a.rows(), Row(n + 1));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = a(i, j);
    rows[i][n] = b[i];
  }
  Reduction red = reduce(std::move(rows), n);
  LinearSolution sol;
  sol.regularity = red.regularity;
  std::vector<bool> is_pivot_row(red.rows.size(), false);
  for (auto [r, c] : red.pivots) is_pivot_row[r] = true;
  for (std::size_t i = 0; i < red.rows.size(); ++i) {
    if (is_pivot_row[i] || red.rows[i][n].is_zero()) continue;
    sol.status = LinearSolution::Status::Inconsistent;
    sol.inconsistent_row = red.origin[i];
    sol.inconsistent_residual = red.rows[i][n];
    return sol;
  }
  sol.particular.assign(n, Expr());
  for (auto [r, c] : red.pivots) sol.particular[c] = red.rows[r][n];
  sol.null_basis = basis_from(red, n);
  sol.status = sol.null_basis.empty() ? LinearSolution::Status::Unique : LinearSolution::Status::Family;
  return sol;
}

std::vector<ExprVector> null_space(const ExprMatrix& a, ExprVector* regularity) {
  std::vector<Row> rows(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) rows[i] = a.row(i);
  Reduction red = reduce(std::move(rows), a.cols());
  if (regularity) regularity->insert(regularity->end(), red.regularity.begin(), red.regularity.end());
  return basis_from(red, a.cols());
}

std::size_t rank(const ExprMatrix& a) {
  std::vector<Row> rows(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) rows[i] = a.row(i);
  return reduce(std::move(rows), a.cols()).pivots.size();
}

}  // namespace curvkit
