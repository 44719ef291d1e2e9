
#include "curvkit/classify/detectors.hpp"
#include "identity_system.hpp"

namespace curvkit {

using detail::make_verdict;

namespace {

// Polynomials in alpha with Expr coefficients, lowest degree first.
using APoly = std::vector<Expr>;

void trim(APoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

APoly remainder(APoly a, const APoly& b) {
  while (a.size() >= b.size()) {
    Expr q = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= q * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

APoly gcd(APoly a, APoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    APoly r = remainder(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

struct RankOne {
  Expr beta;
  ExprVector eta;
  Expr pivot;
};

// First nonzero 2x2 minor of m, as (i, j, k, l, value).
std::optional<std::pair<Index, Expr>> nonzero_minor(const TensorField& m) {
  const int n = int(m.dim());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = k + 1; l < n; ++l) {
          Expr d = m.at({i, k}) * m.at({j, l}) - m.at({i, l}) * m.at({j, k});
          if (!d.is_zero()) return std::make_pair(Index{i, j, k, l}, d);
        }
  return std::nullopt;
}

// m = beta eta (x) eta for a symmetric m of rank one.
RankOne decompose(const TensorField& m) {
  const int n = int(m.dim());
  for (int k = 0; k < n; ++k) {
    const Expr& mkk = m.at({k, k});
    if (mkk.is_zero()) continue;
    RankOne r{mkk, ExprVector(n), mkk};
    for (int j = 0; j < n; ++j) r.eta[j] = m.at({k, j}) / mkk;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (m.at({i, j}) != r.beta * r.eta[i] * r.eta[j]) throw std::logic_error("rank one decomposition failed");
    return r;
  }
  throw std::logic_error("symmetric rank one tensor without a nonzero diagonal entry");
}

}  // namespace

StructureVerdict detect_einstein(const TensorField& s, const TensorField& g, const Expr& r) {
  const Expr c = r / Expr(long(s.dim()));
  StructureVerdict v = detail::zero_verdict("einstein", (s - c * g).renamed("S - (r/n) g"));
  if (v.status == Status::Holds) v.certificate.scalars.emplace_back("r/n", c);
  return v;
}

StructureVerdict detect_ricci_simple(const TensorField& s, const ChristoffelSymbols& gamma, const MetricSpec& m) {
  const std::string name = "ricci_simple";
  if (s.is_zero()) {
    StructureVerdict v = make_verdict(name, Status::Vacuous);
    v.notes.push_back(s.name() + " vanishes identically");
    return v;
  }
  if (auto minor = nonzero_minor(s)) {
    StructureVerdict v = make_verdict(name, Status::Fails);
    v.witness = Witness{"2x2 minor of " + s.name(), minor->first, minor->second};
    return v;
  }
  RankOne d = decompose(s);
  TensorField eta("eta", s.dim(), 1, d.eta);
  bool parallel = covariant_derivative(eta, gamma, m).is_zero();
  StructureVerdict v = make_verdict(name, Status::Holds);
  v.certificate.scalars.emplace_back("beta", d.beta);
  v.certificate.forms.push_back({"eta", d.eta});
  v.certificate.eta_parallel = parallel;
  detail::merge_regularity(v.regularity, {d.pivot});
  return v;
}

StructureVerdict detect_quasi_einstein(const TensorField& s, const TensorField& g) {
  const std::string name = "quasi_einstein";
  const int n = int(s.dim());
  // Each 2x2 minor of S - alpha g is a polynomial of degree <= 2 in alpha;
  // alpha must be a common root.
  APoly common;
  bool first = true;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = k + 1; l < n; ++l) {
          const Expr &s1 = s.at({i, k}), &s2 = s.at({j, l}), &s3 = s.at({i, l}), &s4 = s.at({j, k});
          const Expr &g1 = g.at({i, k}), &g2 = g.at({j, l}), &g3 = g.at({i, l}), &g4 = g.at({j, k});
          APoly p{s1 * s2 - s3 * s4, -(s1 * g2 + g1 * s2) + (s3 * g4 + g3 * s4), g1 * g2 - g3 * g4};
          trim(p);
          if (p.empty()) continue;
          common = first ? p : gcd(common, p);
          first = false;
          if (common.size() == 1) {
            StructureVerdict v = make_verdict(name, Status::Fails);
            v.notes.push_back("the 2x2 minors of S - alpha g have no common root alpha");
            return v;
          }
        }
  Expr alpha;
  if (common.size() == 2) {
    alpha = -common[0] / common[1];
  } else if (common.size() == 3) {
    Expr disc = common[1] * common[1] - Expr(4) * common[0] * common[2];
    if (!disc.is_zero()) {
      StructureVerdict v = make_verdict(name, Status::Holds);
      v.certificate.scalars = {{"q2", common[2]}, {"q1", common[1]}, {"q0", common[0]}};
      v.notes.push_back("alpha is a root of q2*alpha^2 + q1*alpha + q0; no rational root extracted");
      return v;
    }
    alpha = -common[1] / (Expr(2) * common[2]);
  } else {
    throw std::logic_error("quasi-Einstein minors vanish for every alpha");
  }
  TensorField rest = (s - alpha * g).renamed("S - alpha g");
  if (nonzero_minor(rest)) throw std::logic_error("quasi-Einstein root does not annihilate the minors");
  StructureVerdict v = make_verdict(name, Status::Holds);
  v.certificate.scalars.emplace_back("alpha", alpha);
  if (rest.is_zero()) {
    v.certificate.scalars.emplace_back("beta", Expr());
    v.notes.push_back("Einstein: S = alpha g");
  } else {
    RankOne d = decompose(rest);
    v.certificate.scalars.emplace_back("beta", d.beta);
    v.certificate.forms.push_back({"eta", d.eta});
    detail::merge_regularity(v.regularity, {d.pivot});
  }
  return v;
}

StructureVerdict detect_constant_scalar_curvature(const Expr& r, const MetricSpec& m) {
  StructureVerdict c = make_verdict("constant_scalar_curvature", Status::Holds);
  for (std::size_t l = 0; l < m.dim(); ++l) {
    Expr d = differentiate(r, m.coordinate(l));
    if (d.is_zero()) continue;
    c.status = Status::Fails;
    c.witness = Witness{"d r", {int(l)}, d};
    return c;
  }
  c.certificate.scalars.emplace_back("r", r);
  return c;
}

std::vector<StructureVerdict> detect_einstein_family(Geometry& geo) {
  const auto& s = geo.tensor(TensorKind::Ricci);
  const auto& g = geo.tensor(TensorKind::Metric);
  const Expr& r = geo.scalar();
  std::vector<StructureVerdict> out;
  out.push_back(detect_einstein(s, g, r));
  out.push_back(detect_ricci_simple(s, geo.christoffel(), geo.metric()));
  out.push_back(detect_quasi_einstein(s, g));

  out.push_back(detect_constant_scalar_curvature(r, geo.metric()));
  return out;
}

}  // namespace curvkit
