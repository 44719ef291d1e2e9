#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <random>

#include "curvkit/classify/classify.hpp"
#include "curvkit/corpus/corpus.hpp"
#include "numeric_geometry.hpp"

using namespace curvkit;

namespace {

using K = TensorKind;

Geometry& lorentzian() {
  static Geometry g(builtin_metric("paper31"));
  return g;
}

Expr E(const MetricSpec& m, const std::string& s) {
  ParseContext ctx = m.parse_context();
  for (const char* a : {"a1", "a2", "a3", "a4"}) ctx.add_parameter(a);
  return parse_expr(s, ctx);
}

ExprVector V(const MetricSpec& m, std::initializer_list<const char*> parts) {
  ExprVector v;
  for (const char* p : parts) v.push_back(E(m, p));
  return v;
}

const NamedForm& form(const StructureVerdict& v, const std::string& label) {
  for (const auto& f : v.certificate.forms)
    if (f.label == label) return f;
  throw std::out_of_range("no form " + label);
}

const Expr& scalar(const StructureVerdict& v, const std::string& name) {
  for (const auto& [k, e] : v.certificate.scalars)
    if (k == name) return e;
  throw std::out_of_range("no scalar " + name);
}

// nabla T - sum_b F_b (x) basis_b, computed directly from the tensors.
bool recurrence_residual_zero(const TensorField& nabla_t, const std::vector<TensorField>& basis,
                              const std::vector<NamedForm>& forms, bool homogeneous) {
  const std::size_t n = nabla_t.dim();
  for (std::size_t f = 0; f < basis[0].size(); ++f)
    for (std::size_t l = 0; l < n; ++l) {
      Expr r = homogeneous ? Expr() : nabla_t[f * n + l];
      for (std::size_t b = 0; b < basis.size(); ++b) r -= forms[b].components[l] * basis[b][f];
      if (!r.is_zero()) return false;
    }
  return true;
}

void expect_sound_recurrence(const StructureVerdict& v, const TensorField& nabla_t,
                             const std::vector<TensorField>& basis) {
  ASSERT_EQ(v.status, Status::Holds) << v.name;
  EXPECT_TRUE(recurrence_residual_zero(nabla_t, basis, v.certificate.forms, false)) << v.name;
  for (const auto& dir : v.certificate.family) EXPECT_TRUE(recurrence_residual_zero(nabla_t, basis, dir, true));
}

// Chaki identity on rank 2 or 4 tensors by explicit loops.
bool chaki_residual_zero(const TensorField& t, const TensorField& nabla_t, const ExprVector& a) {
  const std::size_t n = t.dim();
  for (std::size_t f = 0; f < t.size(); ++f) {
    Index idx = t.unflatten(f);
    for (std::size_t l = 0; l < n; ++l) {
      Expr r = nabla_t[f * n + l] - Expr(2) * a[l] * t[f];
      for (int j = 0; j < t.rank(); ++j) {
        Index s = idx;
        s[j] = int(l);
        r -= a[idx[j]] * t.at(s);
      }
      if (!r.is_zero()) return false;
    }
  }
  return true;
}

std::vector<std::string> corpus_names() {
  std::vector<std::string> out;
  for (const auto& b : builtin_metrics()) out.push_back(b.name);
  return out;
}

}  // namespace

TEST(Symmetry, Examples) {
  Geometry flat(builtin_metric("flat4"));
  EXPECT_EQ(detect_symmetry("s", flat.nabla(K::Riemann)).status, Status::Holds);
  auto& geo = lorentzian();
  auto v = detect_symmetry("s", geo.nabla(K::Riemann));
  ASSERT_EQ(v.status, Status::Fails);
  ASSERT_TRUE(v.witness);
  EXPECT_EQ(v.witness->index, (Index{0, 2, 0, 2, 0}));
  EXPECT_FALSE(v.witness->value.is_zero());
  EXPECT_EQ(detect_symmetry("s", geo.nabla(K::Metric)).status, Status::Holds);
}

TEST(Recurrence, HyperGeneralizedCertificate) {
  auto& geo = lorentzian();
  const auto& m = geo.metric();
  auto v = detect_linear_recurrence("hgk", geo.nabla(K::Riemann), {geo.tensor(K::Riemann), geo.gs()});
  ASSERT_EQ(v.status, Status::Holds);
  EXPECT_TRUE(v.certificate.family.empty());
  Expr a = E(m, "-2*exp(x1+x3)/(1-2*exp(x1+x3))");
  Expr b = E(m, "2*exp(x1+x3)/(1-4*exp(2*x1+2*x3))");
  EXPECT_EQ(form(v, "A").components, (ExprVector{a, 0, a, 0}));
  EXPECT_EQ(form(v, "B").components, (ExprVector{b, 0, b, 0}));
  expect_sound_recurrence(v, geo.nabla(K::Riemann), {geo.tensor(K::Riemann), geo.gs()});
  EXPECT_FALSE(v.regularity.empty());
}

TEST(Recurrence, LorentzianExampleOneForms) {
  auto& geo = lorentzian();
  const auto& m = geo.metric();
  auto rec = detect_linear_recurrence("r", geo.nabla(K::Riemann), {geo.tensor(K::Riemann)});
  EXPECT_EQ(rec.status, Status::Fails);
  ASSERT_TRUE(rec.witness);
  EXPECT_FALSE(rec.witness->value.is_zero());

  auto ricci = detect_linear_recurrence("rr", geo.nabla(K::Ricci), {geo.tensor(K::Ricci)});
  Expr a = E(m, "2*exp(x1+x3)/(1+2*exp(x1+x3))");
  ASSERT_EQ(ricci.status, Status::Holds);
  EXPECT_EQ(form(ricci, "A").components, (ExprVector{a, 0, a, 0}));

  auto conh = detect_linear_recurrence("kr", geo.nabla(K::Conharmonic), {geo.tensor(K::Conharmonic)});
  Expr k = E(m, "-2*exp(x1+x3)/(1-2*exp(x1+x3))");
  ASSERT_EQ(conh.status, Status::Holds);
  EXPECT_EQ(form(conh, "A").components, (ExprVector{k, 0, k, 0}));
}

TEST(Recurrence, VacuousAndValence) {
  Geometry flat(builtin_metric("flat4"));
  EXPECT_EQ(detect_linear_recurrence("r", flat.nabla(K::Riemann), {flat.tensor(K::Riemann)}).status,
            Status::Vacuous);
  auto& geo = lorentzian();
  EXPECT_THROW(detect_linear_recurrence("r", geo.nabla(K::Riemann), {geo.tensor(K::Ricci)}), ValenceMismatch);
  EXPECT_THROW(detect_linear_recurrence("r", geo.nabla(K::Riemann), {}), std::invalid_argument);
}

TEST(Recurrence, ZeroBasisTensorGivesFamily) {
  // S^S vanishes for a Ricci simple metric, so its one-form is free.
  auto& geo = lorentzian();
  EXPECT_TRUE(geo.ss().is_zero());
  std::vector<TensorField> basis{geo.tensor(K::Riemann), geo.ss(), geo.gs(), geo.gg()};
  auto v = detect_linear_recurrence("sgk", geo.nabla(K::Riemann), basis);
  ASSERT_EQ(v.status, Status::Holds);
  EXPECT_EQ(v.certificate.family.size(), 4u);
  expect_sound_recurrence(v, geo.nabla(K::Riemann), basis);
}

TEST(Proportional, Examples) {
  auto& geo = lorentzian();
  auto pp = detect_proportional("pp", geo.action(K::Projective, K::Projective), geo.tachibana(K::Ricci, K::Projective));
  ASSERT_EQ(pp.status, Status::Holds);
  EXPECT_EQ(scalar(pp, "L"), Expr::rational(-1, 3));
  auto rr = detect_proportional("rr", geo.action(K::Riemann, K::Riemann), geo.tachibana(K::Metric, K::Riemann));
  ASSERT_EQ(rr.status, Status::Holds);
  EXPECT_TRUE(scalar(rr, "L").is_zero());
  const auto& r = geo.tensor(K::Riemann);
  auto same = detect_proportional("xx", r, r);
  ASSERT_EQ(same.status, Status::Holds);
  EXPECT_EQ(scalar(same, "L"), Expr(1));
  EXPECT_EQ(detect_proportional("z", r, TensorField::zero("0", 4, 4)).status, Status::Vacuous);
  EXPECT_THROW(detect_proportional("v", r, geo.tensor(K::Ricci)), ValenceMismatch);
  auto fails = detect_proportional("pg", geo.action(K::Projective, K::Projective),
                                   geo.tachibana(K::Metric, K::Projective));
  ASSERT_EQ(fails.status, Status::Fails);
  EXPECT_FALSE(fails.witness->value.is_zero());
}

TEST(Semisymmetry, Suite) {
  auto& geo = lorentzian();
  auto suite = detect_semisymmetry_suite(geo);
  ASSERT_EQ(suite.size(), 30u);
  for (const auto& v : suite) {
    Status expected = v.name == "semisymmetric_P_P" ? Status::Fails : Status::Holds;
    EXPECT_EQ(v.status, expected) << v.name;
  }
  Geometry flat(builtin_metric("flat4"));
  for (const auto& v : detect_semisymmetry_suite(flat)) EXPECT_EQ(v.status, Status::Holds) << v.name;
}

TEST(Chaki, Examples) {
  auto& geo = lorentzian();
  for (K k : {K::Riemann, K::Conformal, K::Projective, K::Concircular, K::Conharmonic, K::Ricci})
    EXPECT_EQ(detect_chaki_pseudosymmetry("c", geo.tensor(k), geo.nabla(k)).status, Status::Fails) << symbol_of(k);
  Geometry sym(builtin_metric("lsym4"));
  auto trivial = detect_chaki_pseudosymmetry("c", sym.tensor(K::Riemann), sym.nabla(K::Riemann));
  EXPECT_EQ(trivial.status, Status::Fails);
  EXPECT_FALSE(trivial.witness);
  EXPECT_FALSE(trivial.notes.empty());
}

TEST(Chaki, RecurrentControlIsPseudosymmetric) {
  Geometry geo(builtin_metric("rec4"));
  auto v = detect_chaki_pseudosymmetry("c", geo.tensor(K::Riemann), geo.nabla(K::Riemann));
  ASSERT_EQ(v.status, Status::Holds);
  EXPECT_TRUE(chaki_residual_zero(geo.tensor(K::Riemann), geo.nabla(K::Riemann), form(v, "A").components));
}

TEST(WeakSymmetry, Examples) {
  auto& geo = lorentzian();
  EXPECT_EQ(detect_weak_symmetry("w", geo.tensor(K::Riemann), geo.nabla(K::Riemann)).status, Status::Fails);
  EXPECT_EQ(detect_weak_symmetry("w", geo.tensor(K::Concircular), geo.nabla(K::Concircular)).status, Status::Fails);
  auto s = detect_weak_symmetry("w", geo.tensor(K::Ricci), geo.nabla(K::Ricci));
  ASSERT_EQ(s.status, Status::Holds);
  EXPECT_FALSE(s.certificate.family.empty());
  EXPECT_EQ(s.certificate.forms.size(), 3u);
  for (K k : {K::Conformal, K::Conharmonic}) {
    auto v = detect_weak_symmetry("w", geo.tensor(k), geo.nabla(k));
    EXPECT_EQ(v.status, Status::Holds) << symbol_of(k);
    EXPECT_EQ(v.certificate.forms.size(), 5u);
  }
}

TEST(Einstein, LorentzianExample) {
  auto& geo = lorentzian();
  const auto& m = geo.metric();
  auto family = detect_einstein_family(geo);
  ASSERT_EQ(family.size(), 4u);
  EXPECT_EQ(family[0].status, Status::Fails);
  ASSERT_EQ(family[1].status, Status::Holds);
  EXPECT_EQ(scalar(family[1], "beta"), E(m, "(1+2*exp(x1+x3))/4"));
  EXPECT_EQ(form(family[1], "eta").components, (ExprVector{1, 0, 0, 0}));
  EXPECT_EQ(family[1].certificate.eta_parallel, true);
  EXPECT_EQ(family[2].status, Status::Holds);
  EXPECT_EQ(family[3].status, Status::Holds);
  EXPECT_TRUE(scalar(family[3], "r").is_zero());
}

TEST(Einstein, FlatAndConstantCurvature) {
  Geometry flat(builtin_metric("flat4"));
  EXPECT_EQ(detect_einstein_family(flat)[0].status, Status::Holds);

  // R = c/2 g^g for a symbolic c, built directly rather than from a metric.
  auto& geo = lorentzian();
  const auto& g = geo.tensor(K::Metric);
  Expr c = E(geo.metric(), "x2+3");
  TensorField r = (c * Expr::rational(1, 2) * geo.gg()).renamed("R");
  TensorField s = ricci(r, geo.inverse());
  Expr scal = scalar_curvature(s, geo.inverse());
  EXPECT_EQ(detect_einstein(s, g, scal).status, Status::Holds);
  auto q = detect_quasi_einstein(s, g);
  ASSERT_EQ(q.status, Status::Holds);
  EXPECT_EQ(scalar(q, "alpha"), scal / Expr(4));
}

TEST(Einstein, QuasiEinsteinRejectsGenericRicci) {
  Geometry sym(builtin_metric("lsym4"));
  EXPECT_EQ(detect_quasi_einstein(sym.tensor(K::Ricci), sym.tensor(K::Metric)).status, Status::Fails);
  EXPECT_EQ(detect_ricci_simple(sym.tensor(K::Ricci), sym.christoffel(), sym.metric()).status, Status::Fails);
}

TEST(ClassAB, Examples) {
  auto [a, b] = detect_class_AB(lorentzian().nabla(K::Ricci));
  EXPECT_EQ(a.status, Status::Fails);
  EXPECT_EQ(b.status, Status::Fails);
  for (const char* name : {"flat4", "lsym4"}) {
    Geometry geo(builtin_metric(name));
    auto [x, y] = detect_class_AB(geo.nabla(K::Ricci));
    EXPECT_EQ(x.status, Status::Holds) << name;
    EXPECT_EQ(y.status, Status::Holds) << name;
  }
}

TEST(ClassAB, FamilyMetricWithCodazziRicci) {
  // S = S11(x1) dx1 (x) dx1 and the only Christoffel symbol with upper index
  // 1 is Gamma^1_11, so nabla S has the single component (1,1,1).
  Geometry geo(builtin_metric("m313"));
  const auto& ns = geo.nabla(K::Ricci);
  EXPECT_EQ(ns.nonzero().size(), 1u);
  EXPECT_EQ(ns.unflatten(ns.nonzero()[0]), (Index{0, 0, 0}));
  auto [a, b] = detect_class_AB(ns);
  EXPECT_EQ(a.status, Status::Fails);
  EXPECT_EQ(b.status, Status::Holds);
}

TEST(FormRecurrence, Examples) {
  auto& geo = lorentzian();
  const auto& m = geo.metric();
  auto v = detect_curvature_form_recurrence("k2", geo.tensor(K::Riemann), geo.nabla(K::Riemann));
  ASSERT_EQ(v.status, Status::Holds);
  // The left side vanishes by the second Bianchi identity, so the one-form
  // is only fixed up to scale; the displayed form must be a member.
  ExprVector pi{E(m, "2*exp(x1+x3)/(1+2*exp(x1+x3))"), 0, 0, 0};
  ASSERT_EQ(v.certificate.family.size(), 1u);
  const ExprVector& dir = v.certificate.family[0][0].components;
  const ExprVector& base = v.certificate.forms[0].components;
  Expr t = (pi[0] - base[0]) / dir[0];
  for (int i = 0; i < 4; ++i) EXPECT_EQ(base[i] + t * dir[i], pi[i]);

  EXPECT_EQ(detect_ricci_form_recurrence("r1", geo.tensor(K::Ricci), geo.nabla(K::Ricci)).status, Status::Holds);
  for (K k : {K::Conformal, K::Conharmonic})
    EXPECT_EQ(detect_curvature_form_recurrence("c2", geo.tensor(k), geo.nabla(k)).status, Status::Holds);

  Geometry flat(builtin_metric("flat4"));
  EXPECT_EQ(detect_curvature_form_recurrence("k2", flat.tensor(K::Riemann), flat.nabla(K::Riemann)).status,
            Status::Vacuous);
}

TEST(Compatibility, MetricIsRiemannCompatibleAcrossCorpus) {
  for (const auto& name : corpus_names()) {
    Geometry geo(builtin_metric(name));
    auto v = compatible_tensor_space("rc", geo.tensor(K::Riemann), geo.inverse(), false);
    if (v.status == Status::Vacuous) continue;
    ASSERT_EQ(v.status, Status::Holds) << name;
    const std::size_t n = geo.dim();
    ExprMatrix with_g(v.certificate.basis.size() + 1, n * n);
    for (std::size_t i = 0; i < v.certificate.basis.size(); ++i)
      for (std::size_t j = 0; j < n * n; ++j) with_g(i, j) = v.certificate.basis[i][j];
    for (std::size_t j = 0; j < n * n; ++j) with_g(v.certificate.basis.size(), j) = geo.metric().g()(j / n, j % n);
    EXPECT_EQ(rank(with_g), v.certificate.basis.size()) << name;
  }
}

TEST(Compatibility, LorentzianExampleTensorSpaces) {
  auto& geo = lorentzian();
  const auto& m = geo.metric();
  // General members with free parameters a1..a4 standing in for the
  // arbitrary entries; the remaining entries are spanned by unit vectors.
  auto member = [&](const char* e34, const char* e43) {
    ExprMatrix e(4, 4);
    e(0, 0) = E(m, "a1");
    e(0, 1) = E(m, "a2");
    e(1, 0) = E(m, "a3");
    e(2, 2) = E(m, "a4");
    e(2, 3) = E(m, e34);
    e(3, 2) = E(m, e43);
    return e;
  };
  struct Case {
    K kind;
    ExprMatrix e;
  };
  for (const Case& c : {Case{K::Riemann, member("2*exp(x1+x3)*a1", "a1")},
                        Case{K::Concircular, member("2*exp(x1+x3)*a1", "a1")},
                        Case{K::Conformal, member("a1", "-a1")}, Case{K::Conharmonic, member("a1", "-a1")}}) {
    auto v = compatible_tensor_space("c", geo.tensor(c.kind), geo.inverse(), false);
    ASSERT_EQ(v.status, Status::Holds);
    ASSERT_EQ(v.certificate.basis.size(), 10u) << symbol_of(c.kind);
    ExprMatrix span(11, 16);
    for (int i = 0; i < 10; ++i)
      for (int j = 0; j < 16; ++j) span(i, j) = v.certificate.basis[i][j];
    for (int j = 0; j < 16; ++j) span(10, j) = c.e(j / 4, j % 4);
    EXPECT_EQ(rank(span), 10u) << symbol_of(c.kind);
    for (const auto& b : v.certificate.basis) {
      // E22, E23, E24, E32, E42 vanish on the whole space.
      for (int j : {5, 6, 7, 9, 13}) EXPECT_TRUE(b[j].is_zero()) << symbol_of(c.kind) << " entry " << j;
    }
  }
  auto sym = compatible_tensor_space("c", geo.tensor(K::Riemann), geo.inverse(), true);
  ASSERT_EQ(sym.status, Status::Holds);
  for (const auto& b : sym.certificate.basis)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) EXPECT_EQ(b[i * 4 + j], b[j * 4 + i]);
}

TEST(Compatibility, DimensionMatchesNumericRank) {
  auto& geo = lorentzian();
  const auto& m = geo.metric();
  auto v = compatible_tensor_space("c", geo.tensor(K::Riemann), geo.inverse(), false);
  std::mt19937_64 rng(7);
  oracle::NumericGeometry num(m, oracle::random_instantiation(m, rng));
  const int n = 4;
  for (int trial = 0; trial < 5; ++trial) {
    auto x = oracle::random_point(m, rng);
    auto r = num.riemann(x);
    auto gi = num.inverse(x);
    auto R = [&](int a, int b, int c, int d) { return r[((a * n + b) * n + c) * n + d]; };
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n * n * n * n, n * n);
    int row = 0;
    for (int h = 0; h < n; ++h)
      for (int p = 0; p < n; ++p)
        for (int b = 0; b < n; ++b)
          for (int c = 0; c < n; ++c, ++row)
            for (int w = 0; w < n; ++w)
              for (int mm = 0; mm < n; ++mm) {
                double g = gi[mm * n + w];
                a(row, p * n + w) += g * R(mm, h, b, c);
                a(row, b * n + w) += g * R(mm, h, c, p);
                a(row, c * n + w) += g * R(mm, h, p, b);
              }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    lu.setThreshold(1e-7);
    EXPECT_EQ(n * n - lu.rank(), int(v.certificate.basis.size()));
  }
}

TEST(Compatibility, VectorChecks) {
  auto& geo = lorentzian();
  const auto& m = geo.metric();
  const ExprMatrix& g = m.g();
  for (K k : {K::Riemann, K::Conformal, K::Concircular, K::Conharmonic}) {
    const auto& h = geo.tensor(k);
    EXPECT_EQ(compatible_vector_check("y", h, g, V(m, {"0", "a1", "0", "a4*exp(-x1)"})).status, Status::Holds);
    EXPECT_EQ(compatible_vector_check("y", h, g, V(m, {"0", "a2", "a3", "0"})).status, Status::Holds);
    auto bad = compatible_vector_check("y", h, g, V(m, {"1", "0", "0", "0"}));
    ASSERT_EQ(bad.status, Status::Fails);
    EXPECT_FALSE(bad.witness->value.is_zero());
  }
  // The second displayed family is an index-raised image of (0, a2, a3, 0)
  // and is not compatible.
  EXPECT_EQ(compatible_vector_check("y", geo.tensor(K::Riemann), g,
                                    V(m, {"a2", "-a2*exp(x1+x3)", "a3", "0"}))
                .status,
            Status::Fails);
  EXPECT_THROW(compatible_vector_check("y", geo.tensor(K::Riemann), g, V(m, {"1"})), ValenceMismatch);
}

TEST(Implications, SymmetricImpliesRecurrentImpliesChaki) {
  for (const char* name : {"lsym4", "rec4", "flat4"}) {
    Geometry geo(builtin_metric(name));
    auto sym = detect_symmetry("s", geo.nabla(K::Riemann));
    auto rec = detect_linear_recurrence("r", geo.nabla(K::Riemann), {geo.tensor(K::Riemann)});
    auto chaki = detect_chaki_pseudosymmetry("c", geo.tensor(K::Riemann), geo.nabla(K::Riemann));
    if (sym.status == Status::Holds) EXPECT_NE(rec.status, Status::Fails) << name;
    if (rec.status == Status::Holds) {
      bool zero_form = true;
      for (const auto& e : rec.certificate.forms[0].components) zero_form = zero_form && e.is_zero();
      EXPECT_TRUE(chaki.status == Status::Holds || zero_form) << name;
    }
  }
}

TEST(Implications, ParallelRicciSimpleIsRicciRecurrent) {
  for (const auto& name : corpus_names()) {
    Geometry geo(builtin_metric(name));
    auto simple = detect_ricci_simple(geo.tensor(K::Ricci), geo.christoffel(), geo.metric());
    if (simple.status != Status::Holds || !*simple.certificate.eta_parallel) continue;
    auto v = detect_linear_recurrence("rr", geo.nabla(K::Ricci), {geo.tensor(K::Ricci)});
    expect_sound_recurrence(v, geo.nabla(K::Ricci), {geo.tensor(K::Ricci)});
  }
}

TEST(Implications, SyntheticRecurrentCurvature) {
  // R = alpha g ^ (eta (x) eta) with eta = dx1 parallel for the plane wave
  // control; the recurrence form must be d(log alpha).
  Geometry geo(builtin_metric("rec4"));
  const auto& m = geo.metric();
  const auto& g = geo.tensor(K::Metric);
  std::vector<Expr> ee(16);
  ee[0] = Expr(1);
  TensorField eta2("eta eta", 4, 2, ee, kSymmetric);
  TensorField eta("eta", 4, 1, {Expr(1), Expr(), Expr(), Expr()});
  ASSERT_TRUE(covariant_derivative(eta, geo.christoffel(), m).is_zero());
  Expr alpha = E(m, "x3*exp(2*x1)");
  TensorField r = (alpha * kulkarni_nomizu(g, eta2)).renamed("R").with_symmetries(kRiemannSymmetries);
  TensorField nr = covariant_derivative(r, geo.christoffel(), m);
  auto v = detect_linear_recurrence("r", nr, {r});
  ASSERT_EQ(v.status, Status::Holds);
  ExprVector expected(4);
  for (int l = 0; l < 4; ++l) expected[l] = differentiate(alpha, m.coordinate(l)) / alpha;
  EXPECT_EQ(form(v, "A").components, expected);
}

TEST(Implications, HyperGeneralizedImpliesGeneralizedRicci) {
  auto& geo = lorentzian();
  EXPECT_EQ(classify_one(geo, "hyper_generalized_recurrent").status, Status::Holds);
  auto v = classify_one(geo, "generalized_ricci_recurrent");
  expect_sound_recurrence(v, geo.nabla(K::Ricci), {geo.tensor(K::Ricci), geo.tensor(K::Metric)});
}

TEST(Classify, RegistryAndLookup) {
  auto names = structure_names();
  EXPECT_EQ(names.size(), structure_registry().size());
  std::sort(names.begin(), names.end());
  EXPECT_EQ(std::unique(names.begin(), names.end()), names.end());
  EXPECT_THROW(classify_one(lorentzian(), "no_such_structure"), std::out_of_range);
}

TEST(Classify, ReportIsCompleteAndDeterministic) {
  auto& geo = lorentzian();
  ClassifyConfig serial;
  serial.threads = 1;
  ClassifyConfig parallel;
  parallel.threads = 4;
  auto a = classify_all(geo, serial);
  auto b = classify_all(builtin_metric("paper31"), parallel);
  ASSERT_EQ(a.verdicts.size(), structure_registry().size());
  EXPECT_EQ(a.positive, 3);
  EXPECT_EQ(a.negative, 1);
  for (std::size_t i = 0; i < a.verdicts.size(); ++i) {
    EXPECT_EQ(a.verdicts[i].name, structure_registry()[i].name);
    EXPECT_EQ(a.verdicts[i].status, b.verdicts[i].status);
    EXPECT_EQ(a.verdicts[i].certificate.summary(), b.verdicts[i].certificate.summary());
    EXPECT_NE(a.verdicts[i].status, Status::Error) << a.verdicts[i].name;
    if (a.verdicts[i].status == Status::Fails && a.verdicts[i].witness)
      EXPECT_FALSE(a.verdicts[i].witness->value.is_zero());
  }
}

TEST(Classify, SoundCertificatesAcrossCorpus) {
  struct Rec {
    const char* name;
    K t;
    std::vector<TensorField> (*basis)(Geometry&);
  };
  const Rec recs[] = {
      {"recurrent", K::Riemann, [](Geometry& g) { return std::vector<TensorField>{g.tensor(K::Riemann)}; }},
      {"ricci_recurrent", K::Ricci, [](Geometry& g) { return std::vector<TensorField>{g.tensor(K::Ricci)}; }},
      {"hyper_generalized_recurrent", K::Riemann,
       [](Geometry& g) { return std::vector<TensorField>{g.tensor(K::Riemann), g.gs()}; }},
      {"generalized_ricci_recurrent", K::Ricci,
       [](Geometry& g) { return std::vector<TensorField>{g.tensor(K::Ricci), g.tensor(K::Metric)}; }},
      {"super_generalized_recurrent", K::Riemann,
       [](Geometry& g) { return std::vector<TensorField>{g.tensor(K::Riemann), g.ss(), g.gs(), g.gg()}; }},
  };
  for (const auto& name : corpus_names()) {
    if (name.back() == '6') continue;  // covered by the dimension 5 builds
    Geometry geo(builtin_metric(name));
    for (const auto& rec : recs) {
      auto v = classify_one(geo, rec.name);
      if (v.status == Status::Holds) expect_sound_recurrence(v, geo.nabla(rec.t), rec.basis(geo));
    }
    for (K k : {K::Riemann, K::Ricci}) {
      std::string chaki = k == K::Riemann ? "chaki_pseudosymmetric_R" : "pseudo_ricci_symmetric";
      auto v = classify_one(geo, chaki);
      if (v.status != Status::Holds) continue;
      EXPECT_TRUE(chaki_residual_zero(geo.tensor(k), geo.nabla(k), form(v, "A").components)) << name;
      for (const auto& dir : v.certificate.family) EXPECT_FALSE(dir[0].components.empty());
    }
    auto prop = classify_one(geo, "projectively_ricci_generalized_pseudosymmetric");
    if (prop.status == Status::Holds) {
      TensorField r = geo.action(K::Projective, K::Projective) -
                      scalar(prop, "L") * geo.tachibana(K::Ricci, K::Projective);
      EXPECT_TRUE(r.is_zero()) << name;
    }
  }
}

TEST(Classify, SignatureVariantsAgree) {
  auto base = classify_all(builtin_metric("paper31"));
  for (int i = 1; i <= 7; ++i) {
    std::string name = "sv" + std::to_string(i);
    auto rep = classify_all(builtin_metric(name));
    ASSERT_EQ(rep.verdicts.size(), base.verdicts.size());
    for (std::size_t j = 0; j < rep.verdicts.size(); ++j) {
      const auto& a = base.verdicts[j];
      const auto& b = rep.verdicts[j];
      EXPECT_EQ(a.status, b.status) << name << " " << a.name;
      EXPECT_EQ(a.certificate.forms.size(), b.certificate.forms.size()) << name << " " << a.name;
      EXPECT_EQ(a.certificate.family.size(), b.certificate.family.size()) << name << " " << a.name;
      EXPECT_EQ(a.certificate.basis.size(), b.certificate.basis.size()) << name << " " << a.name;
    }
  }
}

TEST(Classify, DimensionThreeMarksConformalVacuous) {
  ExprMatrix g = ExprMatrix::identity(3);
  g(0, 0) = Expr::exponential({{coordinate_symbol("x2"), Fraction(1)}});
  MetricSpec m("warped3", {coordinate_symbol("x1"), coordinate_symbol("x2"), coordinate_symbol("x3")}, g);
  auto rep = classify_all(m);
  const auto* c = rep.find("conformally_recurrent");
  ASSERT_NE(c, nullptr);
  EXPECT_EQ(c->status, Status::Vacuous);
  for (const auto& v : rep.verdicts) EXPECT_NE(v.status, Status::Error) << v.name;
}
