#pragma once

// Floating-point reference pipeline used only by tests. It shares no code
// with the symbolic tensor calculus: derivatives come from nested central
// finite differences of the numeric metric, and products are naive loops.

#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "curvkit/expr/numeric.hpp"
#include "curvkit/tensor/metric.hpp"

namespace oracle {

using Point = std::vector<double>;
using Flat = std::vector<double>;

/// Each opaque function becomes a cubic polynomial, positive on (0, 3) when
/// declared positive.
struct Instantiation {
  std::map<std::string, std::vector<double>> coefficients;
  double value(const std::string& f, int order, double x) const;
};

Instantiation random_instantiation(const curvkit::MetricSpec& m, std::mt19937_64& rng);

/// Admissible random coordinates (assumptions respected, kept in (0.3, 1.7)
/// for positive coordinates so finite differences stay inside the domain).
Point random_point(const curvkit::MetricSpec& m, std::mt19937_64& rng);

/// Values for every coordinate, parameter and opaque derivative atom.
curvkit::Assignment assignment(const curvkit::MetricSpec& m, const Instantiation& inst, const Point& x);

double evaluate(const curvkit::Expr& e, const curvkit::MetricSpec& m, const Instantiation& inst, const Point& x);
Flat evaluate(const std::vector<curvkit::Expr>& e, const curvkit::MetricSpec& m, const Instantiation& inst,
              const Point& x);

/// Sixth-order central difference of a vector-valued function along axis l.
Flat partial(const std::function<Flat(const Point&)>& f, const Point& x, std::size_t l, double h);

class NumericGeometry {
 public:
  NumericGeometry(const curvkit::MetricSpec& m, Instantiation inst, double h = 4e-3);

  std::size_t dim() const { return n_; }
  Flat metric(const Point& x) const;
  Flat inverse(const Point& x) const;
  Flat christoffel(const Point& x) const;  // [k][i][j]
  Flat riemann(const Point& x) const;      // [a][b][c][d]
  Flat ricci(const Point& x) const;
  double scalar(const Point& x) const;
  Flat conformal(const Point& x) const;
  Flat projective(const Point& x) const;
  Flat concircular(const Point& x) const;
  Flat conharmonic(const Point& x) const;
  /// Covariant derivative of the (0,k) field f, derivative slot last.
  Flat nabla(const std::function<Flat(const Point&)>& f, int rank, const Point& x) const;

 private:
  const curvkit::MetricSpec& m_;
  Instantiation inst_;
  std::size_t n_;
  double h_;
};

/// Naive all-index loops for the Kulkarni-Nomizu product, H.T and Q(E,T).
Flat kulkarni_nomizu(const Flat& j, const Flat& f, std::size_t n);
Flat curvature_action(const Flat& h, const Flat& t, int rank, const Flat& ginv, std::size_t n);
Flat tachibana(const Flat& e, const Flat& t, int rank, std::size_t n);

/// max |a - b| / max(1, max |b|).
double relative_error(const Flat& a, const Flat& b);

}  // namespace oracle
