#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>

#include "curvkit/expr/poly.hpp"

namespace curvkit {

/// Canonical rational function P/Q over coordinates, parameters, opaque
/// atoms and exponentials of rational linear forms.
///
/// Invariants: gcd(P, Q) = 1; Q has integer coprime coefficients with a
/// positive leading coefficient under the canonical order; no exponential
/// coordinate appears in Q with a negative minimum coefficient and at least
/// one term of Q has coefficient zero for it. Two Exprs are equal iff
/// these canonical forms coincide. Values are immutable and cheap to copy.
class Expr {
 public:
  Expr() = default;  // zero
  Expr(long value);  // NOLINT(google-explicit-constructor)
  explicit Expr(const mpq_class& value);
  explicit Expr(const Poly& p);

  static Expr rational(long num, long den);
  static Expr variable(Var v);
  static Expr exponential(const LinearForm& form);
  /// Build num/den and reduce to canonical form.
  static Expr fraction(const Poly& num, const Poly& den);

  const Poly& num() const;
  const Poly& den() const;

  bool is_zero() const { return rep_ == nullptr; }
  bool is_constant() const { return is_zero() || (num().is_constant() && den().is_one()); }
  bool is_polynomial() const { return is_zero() || den().is_one(); }
  mpq_class constant_value() const;

  /// Total polynomial term count of numerator and denominator.
  std::size_t structural_size() const;

  Expr operator-() const;
  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  Expr& operator+=(const Expr& o) { return *this = *this + o; }
  Expr& operator-=(const Expr& o) { return *this = *this - o; }
  Expr& operator*=(const Expr& o) { return *this = *this * o; }
  Expr pow(int exponent) const;

  friend bool operator==(const Expr& a, const Expr& b);
  friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }
  std::size_t hash() const;

  /// Printed in the parser's grammar, so printing then parsing is the identity.
  std::string to_string() const;

 private:
  struct Rep {
    Poly num;
    Poly den;
  };
  explicit Expr(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
  static Expr normalized(Poly num, Poly den);

  std::shared_ptr<const Rep> rep_;
};

/// Exact partial derivative.
Expr differentiate(const Expr& e, Var coord);

}  // namespace curvkit

template <>
struct std::hash<curvkit::Expr> {
  std::size_t operator()(const curvkit::Expr& e) const noexcept { return e.hash(); }
};
