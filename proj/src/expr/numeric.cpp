#include "curvkit/expr/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace curvkit {

namespace {

long double value_of(Var v, const Assignment& at) {
  auto it = at.find(v);
  if (it == at.end()) throw EvaluationError("no value for atom '" + v->to_string() + "'");
  return it->second;
}

long double term_value(const Term& t, const Assignment& at) {
  long double v = t.coeff.get_d();
  for (const auto& p : t.mono.powers()) v *= std::pow(value_of(p.var, at), static_cast<long double>(p.exp));
  if (!t.mono.exps().empty()) {
    long double arg = 0;
    for (const auto& e : t.mono.exps()) arg += static_cast<long double>(e.coeff.to_double()) * value_of(e.coord, at);
    v *= std::exp(arg);
  }
  return v;
}

long double poly_value(const Poly& p, const Assignment& at, long double* magnitude = nullptr) {
  long double s = 0, m = 0;
  for (const auto& t : p.terms()) {
    long double v = term_value(t, at);
    s += v;
    m += std::fabs(v);
  }
  if (magnitude) *magnitude = m;
  return s;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace

std::string Assumption::to_string() const {
  switch (kind) {
    case Kind::Positive: return coord->name + " > 0";
    case Kind::Negative: return coord->name + " < 0";
    case Kind::NonZero: return coord->name + " != 0";
    case Kind::Interval: return coord->name + " in (" + lower.get_str() + ", " + upper.get_str() + ")";
  }
  return coord->name;
}

double eval_numeric(const Expr& e, const Assignment& at) {
  if (e.is_zero()) return 0.0;
  long double d = poly_value(e.den(), at);
  if (d == 0) throw EvaluationError("zero denominator at evaluation point");
  return static_cast<double>(poly_value(e.num(), at) / d);
}

double eval_magnitude(const Expr& e, const Assignment& at) {
  if (e.is_zero()) return 0.0;
  long double m = 0;
  poly_value(e.num(), at, &m);
  long double d = poly_value(e.den(), at);
  if (d == 0) throw EvaluationError("zero denominator at evaluation point");
  return static_cast<double>(m / std::fabs(d));
}

std::vector<Var> atoms_of(const Expr& e) {
  std::set<Var> s;
  for (const Poly* p : {&e.num(), &e.den()}) {
    for (Var v : p->variables()) {
      s.insert(v);
      if (v->kind == VarKind::Opaque) s.insert(v->arg);
    }
    for (Var v : p->exp_coordinates()) s.insert(v);
  }
  std::vector<Var> out(s.begin(), s.end());
  std::sort(out.begin(), out.end(), [](Var a, Var b) { return canonical_compare(a, b) < 0; });
  return out;
}

Assignment sample_assignment(const std::vector<Var>& atoms, const EqualityConfig& config,
                             std::mt19937_64& rng) {
  Assignment at;
  for (Var v : atoms) {
    double value = 0;
    if (v->kind == VarKind::Opaque) {
      bool positive = v->order == 0 && std::find(config.positive_opaque.begin(), config.positive_opaque.end(),
                                                 v->name) != config.positive_opaque.end();
      value = positive ? uniform(rng, 0.5, 2.0) : uniform(rng, -2.0, 2.0);
    } else {
      const Assumption* a = nullptr;
      for (const auto& as : config.assumptions)
        if (as.coord == v) a = &as;
      if (!a) {
        value = uniform(rng, -2.0, 2.0);
      } else {
        switch (a->kind) {
          case Assumption::Kind::Positive: value = uniform(rng, 0.25, 2.0); break;
          case Assumption::Kind::Negative: value = -uniform(rng, 0.25, 2.0); break;
          case Assumption::Kind::NonZero:
            value = uniform(rng, 0.25, 2.0) * (uniform(rng, 0, 1) < 0.5 ? -1 : 1);
            break;
          case Assumption::Kind::Interval: {
            double lo = a->lower.get_d(), hi = a->upper.get_d();
            double pad = (hi - lo) * 0.01;
            value = uniform(rng, lo + pad, hi - pad);
            break;
          }
        }
      }
    }
    at[v] = value;
  }
  return at;
}

EqualityVerdict is_zero(const Expr& e, const EqualityConfig& config) {
  if (config.num_points < 1) throw std::invalid_argument("num_points must be at least 1");
  EqualityVerdict verdict;
  verdict.tolerance = config.tolerance;
  if (e.is_zero()) return verdict;
  std::mt19937_64 rng(config.seed);
  auto atoms = atoms_of(e);
  constexpr int kMaxRetries = 64;
  for (int i = 0; i < config.num_points; ++i) {
    for (int attempt = 0;; ++attempt) {
      Assignment at = sample_assignment(atoms, config, rng);
      double value, scale;
      try {
        value = eval_numeric(e, at);
        scale = eval_magnitude(e, at);
      } catch (const EvaluationError&) {
        if (attempt >= kMaxRetries) throw EvaluationError("degenerate sampling domain");
        continue;
      }
      ++verdict.points_tested;
      if (!std::isfinite(value) || std::fabs(value) > config.tolerance * std::max(scale, 1e-300)) {
        verdict.kind = EqualityVerdict::Kind::NonZero;
        verdict.witness = std::move(at);
        verdict.witness_value = value;
        return verdict;
      }
      break;
    }
  }
  verdict.kind = EqualityVerdict::Kind::ZeroProbabilistic;
  return verdict;
}

}  // namespace curvkit
