#pragma once

#include <boost/container/small_vector.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "curvkit/expr/symbol.hpp"

namespace curvkit {

/// Small exact rational used for exponential linear-form coefficients.
/// Always reduced with a positive denominator; arithmetic throws
/// std::overflow_error rather than wrapping.
class Fraction {
 public:
  constexpr Fraction() = default;
  Fraction(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  Fraction operator+(const Fraction& o) const;
  Fraction operator-(const Fraction& o) const;
  Fraction operator*(const Fraction& o) const;
  Fraction operator-() const { return Fraction(-num_, den_); }

  friend bool operator==(const Fraction&, const Fraction&) = default;
  friend int compare(const Fraction& a, const Fraction& b);
  friend bool operator<(const Fraction& a, const Fraction& b) { return compare(a, b) < 0; }

  std::string to_string() const;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

struct VarPower {
  Var var;
  int exp;
  friend bool operator==(const VarPower&, const VarPower&) = default;
};

struct ExpCoeff {
  Var coord;
  Fraction coeff;
  friend bool operator==(const ExpCoeff&, const ExpCoeff&) = default;
};

using PowerList = boost::container::small_vector<VarPower, 4>;
using LinearForm = boost::container::small_vector<ExpCoeff, 3>;

/// Build a linear form from unsorted (coord, coeff) pairs, merging duplicates
/// and dropping zero coefficients.
LinearForm make_linear_form(LinearForm raw);

/// A power product of polynomial indeterminates times exp(linear form).
/// Both lists are sorted by symbol id and hold no zero entries, so structural
/// equality is list equality. Exponentials merge: exp(a)exp(b) = exp(a+b).
class Monomial {
 public:
  Monomial() = default;
  static Monomial variable(Var v, int exp = 1);
  static Monomial exponential(const LinearForm& form);

  const PowerList& powers() const { return powers_; }
  const LinearForm& exps() const { return exps_; }

  bool is_one() const { return powers_.empty() && exps_.empty(); }
  int degree_in(Var v) const;
  Fraction exp_coeff(Var coord) const;
  Fraction total_degree() const;

  Monomial operator*(const Monomial& o) const;
  /// this / o, or nullopt when a polynomial exponent would go negative.
  std::optional<Monomial> divide(const Monomial& o) const;
  /// Drop one power of v (which must be present) -- used by differentiation.
  Monomial without_power(Var v, int remove) const;
  Monomial with_power(Var v, int add) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  std::size_t hash() const;

  /// Lexicographic order on (powers, exps) by symbol id. A group order, so it
  /// supports leading-term division even with negative exp coefficients.
  friend int storage_compare(const Monomial& a, const Monomial& b);
  /// Graded order with interning-independent variable ranking; used for
  /// sign normalization and printing.
  friend int canonical_compare(const Monomial& a, const Monomial& b);

  /// "x1^2*f'(x1)*exp(x1+x3)"; empty string for the unit monomial.
  std::string to_string() const;

 private:
  PowerList powers_;
  LinearForm exps_;
};

std::string linear_form_to_string(const LinearForm& form);

}  // namespace curvkit
