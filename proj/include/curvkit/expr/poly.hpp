#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "curvkit/expr/monomial.hpp"

namespace curvkit {

struct Term {
  Monomial mono;
  mpq_class coeff;
};

/// Sparse multivariate polynomial with exact rational coefficients over
/// coordinates, opaque atoms and parameters, with exp(linear form) factors
/// (i.e. a Laurent polynomial in the exponentials). Terms are kept sorted in
/// descending storage order with nonzero coefficients.
class Poly {
 public:
  Poly() = default;
  explicit Poly(const mpq_class& c);
  explicit Poly(Monomial m, const mpq_class& c = 1);
  static Poly from_terms(std::vector<Term> terms);  // sorts and combines

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  bool is_one() const;
  mpq_class constant_value() const;  // requires is_constant()
  const Term& leading() const { return terms_.front(); }
  /// Leading term under the canonical (graded) order.
  const Term& canonical_leading() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const mpq_class& c) const;
  Poly operator*(const Monomial& m) const;

  /// Exact quotient; nullopt if o does not divide this in the Laurent ring.
  std::optional<Poly> divide_exact(const Poly& o) const;

  /// Partial derivative; opaque atoms f^(k)(x) differentiate to f^(k+1)(x).
  Poly derivative(Var coord) const;

  /// Distinct polynomial variables (coordinates, parameters, opaque atoms).
  std::vector<Var> variables() const;
  /// Coordinates that appear inside exponentials.
  std::vector<Var> exp_coordinates() const;

  friend bool operator==(const Poly& a, const Poly& b);
  std::size_t hash() const;

  /// Lowest common denominator of the coefficients.
  mpz_class coefficient_lcm_den() const;

  /// Sum of terms in ascending canonical order: "1+2*exp(x1+x3)".
  std::string to_string() const;

 private:
  std::vector<Term> terms_;
};

/// Greatest common divisor up to a unit (nonzero rational times exp(ℓ)).
/// gcd(0, 0) is 0.
Poly gcd(const Poly& a, const Poly& b);

std::string coefficient_to_string(const mpq_class& q);

}  // namespace curvkit
