#include "curvkit/tensor/tensor.hpp"

#include <algorithm>

namespace curvkit {

namespace {

std::size_t power(std::size_t n, int k) {
  std::size_t p = 1;
  for (int i = 0; i < k; ++i) p *= n;
  return p;
}

}  // namespace

TensorField::TensorField(std::string name, std::size_t dim, int rank, std::vector<Expr> components,
                         unsigned symmetries)
    : name_(std::move(name)), dim_(dim), rank_(rank), symmetries_(symmetries), data_(std::move(components)) {
  if (dim == 0 || rank < 0) throw std::invalid_argument("tensor: invalid dimension or rank");
  if (data_.size() != power(dim, rank)) throw std::invalid_argument("tensor: component count is not dim^rank");
  strides_.resize(rank);
  std::size_t s = 1;
  for (int k = rank - 1; k >= 0; --k) {
    strides_[k] = s;
    s *= dim;
  }
  verify();
}

TensorField TensorField::zero(std::string name, std::size_t dim, int rank) {
  return TensorField(std::move(name), dim, rank, std::vector<Expr>(power(dim, rank)));
}

std::size_t TensorField::flatten(const Index& idx) const {
  if (static_cast<int>(idx.size()) != rank_) throw std::invalid_argument("tensor: index arity mismatch");
  std::size_t f = 0;
  for (int k = 0; k < rank_; ++k) {
    if (idx[k] < 0 || static_cast<std::size_t>(idx[k]) >= dim_) throw std::out_of_range("tensor index");
    f += idx[k] * strides_[k];
  }
  return f;
}

Index TensorField::unflatten(std::size_t flat) const {
  Index idx(rank_);
  for (int k = 0; k < rank_; ++k) {
    idx[k] = static_cast<int>(flat / strides_[k]);
    flat %= strides_[k];
  }
  return idx;
}

bool TensorField::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Expr& e) { return e.is_zero(); });
}

std::vector<std::size_t> TensorField::nonzero() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < data_.size(); ++i)
    if (!data_[i].is_zero()) out.push_back(i);
  return out;
}

void TensorField::verify() const {
  auto fail = [&](const std::string& what, std::size_t flat) {
    Index idx = unflatten(flat);
    std::string s;
    for (int i : idx) s += (s.empty() ? "" : ",") + std::to_string(i + 1);
    throw SymmetryViolation(name_ + ": declared " + what + " fails at [" + s + "]");
  };
  auto permuted = [&](std::size_t flat, std::initializer_list<int> perm) {
    Index idx = unflatten(flat), out = idx;
    int k = 0;
    for (int p : perm) out[k++] = idx[p];
    return flatten(out);
  };
  if ((symmetries_ & kSymmetric) && rank_ != 2) throw std::invalid_argument("symmetric flag needs rank 2");
  if ((symmetries_ & ~(kSymmetric | kAntisymFirstPair)) && rank_ < 4)
    throw std::invalid_argument("pair symmetry flags need rank >= 4");
  for (std::size_t f = 0; f < data_.size(); ++f) {
    const Expr& v = data_[f];
    if ((symmetries_ & kSymmetric) && data_[permuted(f, {1, 0})] != v) fail("symmetry", f);
    if ((symmetries_ & kAntisymFirstPair) && data_[permuted(f, {1, 0})] != -v) fail("antisymmetry in slots 1,2", f);
    if (rank_ < 4) continue;
    if ((symmetries_ & kAntisymLastPair) && data_[permuted(f, {0, 1, 3, 2})] != -v)
      fail("antisymmetry in slots 3,4", f);
    if ((symmetries_ & kPairExchange) && data_[permuted(f, {2, 3, 0, 1})] != v) fail("pair symmetry", f);
    if (symmetries_ & kFirstBianchi) {
      Expr sum = v + data_[permuted(f, {0, 2, 3, 1})] + data_[permuted(f, {0, 3, 1, 2})];
      if (!sum.is_zero()) fail("first Bianchi identity", f);
    }
  }
}

std::string TensorField::dump(const std::string& symbol) const {
  std::string out;
  for (std::size_t f = 0; f < data_.size(); ++f) {
    if (data_[f].is_zero()) continue;
    Index idx = unflatten(f);
    out += symbol + "[";
    for (int k = 0; k < rank_; ++k) out += (k ? "," : "") + std::to_string(idx[k] + 1);
    out += "] = " + data_[f].to_string() + "\n";
  }
  return out;
}

TensorField operator+(const TensorField& a, const TensorField& b) {
  if (a.dim_ != b.dim_ || a.rank_ != b.rank_) throw std::invalid_argument("tensor sum: shape mismatch");
  std::vector<Expr> d(a.data_.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = a.data_[i] + b.data_[i];
  return TensorField(a.name_, a.dim_, a.rank_, std::move(d), a.symmetries_ & b.symmetries_);
}

TensorField operator-(const TensorField& a, const TensorField& b) { return a + (Expr(-1) * b); }

TensorField operator*(const Expr& s, const TensorField& t) {
  std::vector<Expr> d(t.data_.size());
  if (!s.is_zero())
    for (std::size_t i = 0; i < d.size(); ++i)
      if (!t.data_[i].is_zero()) d[i] = s * t.data_[i];
  return TensorField(t.name_, t.dim_, t.rank_, std::move(d), t.symmetries_);
}

TensorField TensorField::renamed(std::string name) const {
  TensorField t = *this;
  t.name_ = std::move(name);
  return t;
}

TensorField TensorField::with_symmetries(unsigned symmetries) const {
  return TensorField(name_, dim_, rank_, data_, symmetries);
}

ChristoffelSymbols::ChristoffelSymbols(std::size_t dim, std::vector<Expr> data) : n_(dim), data_(std::move(data)) {
  if (data_.size() != n_ * n_ * n_) throw std::invalid_argument("christoffel: component count mismatch");
  for (std::size_t k = 0; k < n_; ++k)
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        if ((*this)(k, i, j) != (*this)(k, j, i)) throw SymmetryViolation("christoffel symbols not symmetric");
}

bool ChristoffelSymbols::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Expr& e) { return e.is_zero(); });
}

std::string ChristoffelSymbols::dump() const {
  std::string out;
  for (std::size_t k = 0; k < n_; ++k)
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i; j < n_; ++j)
        if (!(*this)(k, i, j).is_zero())
          out += "Gamma[" + std::to_string(k + 1) + "," + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                 "] = " + (*this)(k, i, j).to_string() + "\n";
  return out;
}

}  // namespace curvkit
