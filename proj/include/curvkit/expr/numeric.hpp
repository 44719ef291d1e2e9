#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "curvkit/expr/expr.hpp"

namespace curvkit {

/// A domain restriction on one coordinate; numeric sampling honours it.
struct Assumption {
  enum class Kind { Positive, Negative, NonZero, Interval };
  Var coord = nullptr;
  Kind kind = Kind::Positive;
  mpq_class lower = 0;  // Interval only, open
  mpq_class upper = 0;

  std::string to_string() const;
};

/// Values for every atom of an expression, keyed by symbol.
using Assignment = std::map<Var, double>;

class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Floating evaluation. Coefficients are exact rationals rounded once;
/// each subsequent operation carries a relative error of about 1e-12 in
/// long double. Throws EvaluationError on a missing atom or zero denominator.
double eval_numeric(const Expr& e, const Assignment& at);

/// Sum of |term| values of the numerator divided by |denominator|: the scale
/// against which cancellation is judged.
double eval_magnitude(const Expr& e, const Assignment& at);

struct EqualityConfig {
  int num_points = 8;
  std::uint64_t seed = 0;
  double tolerance = 1e-9;  ///< relative to eval_magnitude
  std::vector<Assumption> assumptions;
  std::vector<std::string> positive_opaque;  ///< names f with f(x) > 0
};

struct EqualityVerdict {
  enum class Kind { ZeroExact, ZeroProbabilistic, NonZero };
  Kind kind = Kind::ZeroExact;
  int points_tested = 0;
  double tolerance = 0;
  Assignment witness;  ///< NonZero only
  double witness_value = 0;
};

/// Atoms (polynomial variables and exponential coordinates) of e.
std::vector<Var> atoms_of(const Expr& e);

/// Draw one admissible value for each atom. Opaque atoms are independent
/// indeterminates; f^(0) is positive when declared so.
Assignment sample_assignment(const std::vector<Var>& atoms, const EqualityConfig& config,
                             std::mt19937_64& rng);

/// Two-tier zero test: canonical form first, then config.num_points random
/// admissible points. Deterministic for a fixed seed.
EqualityVerdict is_zero(const Expr& e, const EqualityConfig& config);

}  // namespace curvkit
