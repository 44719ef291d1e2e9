#include "curvkit/classify/classify.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <stdexcept>
#include <thread>

#include "identity_system.hpp"

namespace curvkit {

namespace {

using K = TensorKind;
using Run = std::function<StructureVerdict(Geometry&, const ClassifyConfig&)>;

const char* adjective(K k) {
  switch (k) {
    case K::Conformal: return "conformally";
    case K::Projective: return "projectively";
    case K::Concircular: return "concircularly";
    case K::Conharmonic: return "conharmonically";
    default: return "";
  }
}

const char* noun(K k) {
  switch (k) {
    case K::Riemann: return "riemann";
    case K::Conformal: return "conformal";
    case K::Projective: return "projective";
    case K::Concircular: return "concircular";
    case K::Conharmonic: return "conharmonic";
    default: return "";
  }
}

// Wraps run so tensors missing in dimension 3 give a Vacuous verdict.
Run needs(std::vector<K> kinds, std::string name, Run run) {
  return [kinds = std::move(kinds), name = std::move(name), run = std::move(run)](Geometry& geo,
                                                                                  const ClassifyConfig& c) {
    for (K k : kinds)
      if (!geo.defined(k)) {
        StructureVerdict v = detail::make_verdict(name, Status::Vacuous);
        v.notes.push_back(symbol_of(k) + " is undefined in dimension " + std::to_string(geo.dim()));
        return v;
      }
    return run(geo, c);
  };
}

void add(std::vector<StructureEntry>& reg, std::string name, std::string description, std::vector<K> kinds,
         Run run) {
  reg.push_back({name, std::move(description), needs(std::move(kinds), name, std::move(run))});
}

std::vector<StructureEntry> build_registry() {
  std::vector<StructureEntry> reg;
  const K curvature[] = {K::Riemann, K::Conformal, K::Projective, K::Concircular, K::Conharmonic};

  add(reg, "locally_symmetric", "nabla R = 0", {}, [](Geometry& geo, const ClassifyConfig&) {
    return detect_symmetry("locally_symmetric", geo.nabla(K::Riemann));
  });
  add(reg, "ricci_symmetric", "nabla S = 0", {}, [](Geometry& geo, const ClassifyConfig&) {
    return detect_symmetry("ricci_symmetric", geo.nabla(K::Ricci));
  });
  for (K k : {K::Conformal, K::Projective, K::Concircular, K::Conharmonic}) {
    std::string name = std::string(adjective(k)) + "_symmetric";
    add(reg, name, "nabla " + symbol_of(k) + " = 0", {k}, [k, name](Geometry& geo, const ClassifyConfig&) {
      return detect_symmetry(name, geo.nabla(k));
    });
  }

  add(reg, "recurrent", "nabla R = A (x) R", {}, [](Geometry& geo, const ClassifyConfig&) {
    return detect_linear_recurrence("recurrent", geo.nabla(K::Riemann), {geo.tensor(K::Riemann)});
  });
  add(reg, "ricci_recurrent", "nabla S = A (x) S", {}, [](Geometry& geo, const ClassifyConfig&) {
    return detect_linear_recurrence("ricci_recurrent", geo.nabla(K::Ricci), {geo.tensor(K::Ricci)});
  });
  for (K k : {K::Conformal, K::Projective, K::Concircular, K::Conharmonic}) {
    std::string name = std::string(adjective(k)) + "_recurrent";
    add(reg, name, "nabla " + symbol_of(k) + " = A (x) " + symbol_of(k), {k},
        [k, name](Geometry& geo, const ClassifyConfig&) {
          return detect_linear_recurrence(name, geo.nabla(k), {geo.tensor(k)});
        });
  }
  add(reg, "generalized_recurrent", "nabla R = A (x) R + B (x) g^g", {}, [](Geometry& geo, const ClassifyConfig&) {
    return detect_linear_recurrence("generalized_recurrent", geo.nabla(K::Riemann),
                                    {geo.tensor(K::Riemann), geo.gg()});
  });
  add(reg, "generalized_ricci_recurrent", "nabla S = A (x) S + B (x) g", {},
      [](Geometry& geo, const ClassifyConfig&) {
        return detect_linear_recurrence("generalized_ricci_recurrent", geo.nabla(K::Ricci),
                                        {geo.tensor(K::Ricci), geo.tensor(K::Metric)});
      });
  add(reg, "hyper_generalized_recurrent", "nabla R = A (x) R + B (x) g^S", {},
      [](Geometry& geo, const ClassifyConfig&) {
        return detect_linear_recurrence("hyper_generalized_recurrent", geo.nabla(K::Riemann),
                                        {geo.tensor(K::Riemann), geo.gs()});
      });
  add(reg, "quasi_generalized_recurrent", "nabla R = A (x) R + B (x) g^(g + eta (x) eta)", {},
      [](Geometry& geo, const ClassifyConfig&) {
        const std::string name = "quasi_generalized_recurrent";
        StructureVerdict simple = detect_ricci_simple(geo.tensor(K::Ricci), geo.christoffel(), geo.metric());
        if (simple.status != Status::Holds) {
          StructureVerdict v = detail::make_verdict(name, Status::Vacuous);
          v.notes.push_back("skipped: no canonical eta (S is not Ricci simple)");
          return v;
        }
        const ExprVector& eta = simple.certificate.forms.front().components;
        const std::size_t n = geo.dim();
        const TensorField& g = geo.tensor(K::Metric);
        std::vector<Expr> c(n * n);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) c[i * n + j] = g[i * n + j] + eta[i] * eta[j];
        TensorField h("g + eta (x) eta", n, 2, std::move(c), kSymmetric);
        StructureVerdict v = detect_linear_recurrence(
            name, geo.nabla(K::Riemann), {geo.tensor(K::Riemann), kulkarni_nomizu(g, h).renamed("g^(g+eta eta)")});
        v.certificate.forms.push_back({"eta", eta});
        return v;
      });
  add(reg, "weakly_generalized_recurrent", "nabla R = A (x) R + B (x) 1/2 S^S", {},
      [](Geometry& geo, const ClassifyConfig&) {
        return detect_linear_recurrence("weakly_generalized_recurrent", geo.nabla(K::Riemann),
                                        {geo.tensor(K::Riemann), (Expr::rational(1, 2) * geo.ss()).renamed("S^S/2")});
      });
  add(reg, "super_generalized_recurrent", "nabla R = A (x) R + B (x) S^S + D (x) g^S + E (x) g^g", {},
      [](Geometry& geo, const ClassifyConfig&) {
        return detect_linear_recurrence("super_generalized_recurrent", geo.nabla(K::Riemann),
                                        {geo.tensor(K::Riemann), geo.ss(), geo.gs(), geo.gg()});
      });

  for (K h : curvature)
    for (K t : {K::Riemann, K::Ricci, K::Conformal, K::Projective, K::Concircular, K::Conharmonic}) {
      std::string name = "semisymmetric_" + symbol_of(h) + "_" + symbol_of(t);
      add(reg, name, symbol_of(h) + "." + symbol_of(t) + " = 0", {h, t},
          [h, t, name](Geometry& geo, const ClassifyConfig&) {
            StructureVerdict v = detail::zero_verdict(name, geo.action(h, t));
            if (t == K::Concircular) v.notes.push_back("Z is read as the concircular tensor W");
            return v;
          });
    }

  struct Pseudo {
    const char* name;
    K h, t, e;
  };
  for (const Pseudo& p : {Pseudo{"pseudosymmetric", K::Riemann, K::Riemann, K::Metric},
                          Pseudo{"ricci_pseudosymmetric", K::Riemann, K::Ricci, K::Metric},
                          Pseudo{"weyl_pseudosymmetric", K::Conformal, K::Conformal, K::Metric},
                          Pseudo{"projectively_pseudosymmetric", K::Projective, K::Projective, K::Metric},
                          Pseudo{"ricci_generalized_pseudosymmetric", K::Riemann, K::Riemann, K::Ricci},
                          Pseudo{"weyl_ricci_generalized_pseudosymmetric", K::Conformal, K::Conformal, K::Ricci},
                          Pseudo{"projectively_ricci_generalized_pseudosymmetric", K::Projective, K::Projective,
                                 K::Ricci}}) {
    std::string name = p.name;
    add(reg, name,
        symbol_of(p.h) + "." + symbol_of(p.t) + " = L Q(" + symbol_of(p.e) + "," + symbol_of(p.t) + ")", {p.h, p.t},
        [p, name](Geometry& geo, const ClassifyConfig&) {
          return detect_proportional(name, geo.action(p.h, p.t), geo.tachibana(p.e, p.t));
        });
  }

  for (K k : curvature) {
    std::string name = "chaki_pseudosymmetric_" + symbol_of(k);
    add(reg, name, "Chaki pseudosymmetry of " + symbol_of(k), {k}, [k, name](Geometry& geo, const ClassifyConfig&) {
      StructureVerdict v = detect_chaki_pseudosymmetry(name, geo.tensor(k), geo.nabla(k));
      if (k == K::Concircular) v.notes.push_back("Z is read as the concircular tensor W");
      return v;
    });
  }
  add(reg, "pseudo_ricci_symmetric", "Chaki pseudosymmetry of S", {}, [](Geometry& geo, const ClassifyConfig&) {
    return detect_chaki_pseudosymmetry("pseudo_ricci_symmetric", geo.tensor(K::Ricci), geo.nabla(K::Ricci));
  });

  add(reg, "weakly_symmetric", "weak symmetry of R", {}, [](Geometry& geo, const ClassifyConfig&) {
    return detect_weak_symmetry("weakly_symmetric", geo.tensor(K::Riemann), geo.nabla(K::Riemann));
  });
  add(reg, "weakly_ricci_symmetric", "weak symmetry of S", {}, [](Geometry& geo, const ClassifyConfig&) {
    return detect_weak_symmetry("weakly_ricci_symmetric", geo.tensor(K::Ricci), geo.nabla(K::Ricci));
  });
  for (K k : {K::Conformal, K::Projective, K::Concircular, K::Conharmonic}) {
    std::string name = std::string(adjective(k)) + "_weakly_symmetric";
    add(reg, name, "weak symmetry of " + symbol_of(k), {k}, [k, name](Geometry& geo, const ClassifyConfig&) {
      StructureVerdict v = detect_weak_symmetry(name, geo.tensor(k), geo.nabla(k));
      if (k == K::Concircular) v.notes.push_back("Z is read as the concircular tensor W");
      return v;
    });
  }

  const char* einstein_names[] = {"einstein", "ricci_simple", "quasi_einstein", "constant_scalar_curvature"};
  const char* einstein_text[] = {"S = (r/n) g", "S = beta eta (x) eta", "S = alpha g + beta eta (x) eta",
                                 "dr = 0"};
  for (int i = 0; i < 4; ++i) {
    std::string name = einstein_names[i];
    add(reg, name, einstein_text[i], {}, [i](Geometry& geo, const ClassifyConfig&) {
      const auto& s = geo.tensor(K::Ricci);
      const auto& g = geo.tensor(K::Metric);
      switch (i) {
        case 0: return detect_einstein(s, g, geo.scalar());
        case 1: return detect_ricci_simple(s, geo.christoffel(), geo.metric());
        case 2: return detect_quasi_einstein(s, g);
        default: return detect_constant_scalar_curvature(geo.scalar(), geo.metric());
      }
    });
  }

  add(reg, "cyclic_ricci_parallel", "class A: S_ij,k + S_jk,i + S_ki,j = 0", {},
      [](Geometry& geo, const ClassifyConfig&) { return detect_class_AB(geo.nabla(K::Ricci)).first; });
  add(reg, "codazzi_type_ricci", "class B: S_ij,k = S_kj,i", {},
      [](Geometry& geo, const ClassifyConfig&) { return detect_class_AB(geo.nabla(K::Ricci)).second; });

  for (K k : {K::Riemann, K::Conformal, K::Conharmonic}) {
    std::string name = std::string("recurrent_") + (k == K::Riemann ? "curvature" : noun(k)) + "_2forms";
    add(reg, name, "curvature 2-forms of " + symbol_of(k) + " are recurrent", {k},
        [k, name](Geometry& geo, const ClassifyConfig&) {
          return detect_curvature_form_recurrence(name, geo.tensor(k), geo.nabla(k));
        });
  }
  add(reg, "recurrent_ricci_1forms", "Ricci 1-forms are recurrent", {}, [](Geometry& geo, const ClassifyConfig&) {
    return detect_ricci_form_recurrence("recurrent_ricci_1forms", geo.tensor(K::Ricci), geo.nabla(K::Ricci));
  });

  for (K k : {K::Riemann, K::Conformal, K::Concircular, K::Conharmonic}) {
    std::string name = std::string(noun(k)) + "_compatible_tensors";
    add(reg, name, symbol_of(k) + "-compatible (0,2) tensors", {k}, [k, name](Geometry& geo, const ClassifyConfig& c) {
      return compatible_tensor_space(name, geo.tensor(k), geo.inverse(), c.symmetric_only);
    });
  }
  return reg;
}

}  // namespace

const std::vector<StructureEntry>& structure_registry() {
  static const std::vector<StructureEntry> reg = build_registry();
  return reg;
}

std::vector<std::string> structure_names() {
  std::vector<std::string> out;
  for (const auto& e : structure_registry()) out.push_back(e.name);
  return out;
}

StructureVerdict classify_one(Geometry& geo, const std::string& name, const ClassifyConfig& config) {
  for (const auto& e : structure_registry())
    if (e.name == name) return e.run(geo, config);
  throw std::out_of_range("unknown structure '" + name + "'");
}

std::pair<int, int> sample_signature(const MetricSpec& m, std::uint64_t seed) {
  std::vector<Var> atoms;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j)
      for (Var v : atoms_of(m.g(i, j)))
        if (std::find(atoms.begin(), atoms.end(), v) == atoms.end()) atoms.push_back(v);
  EqualityConfig config = m.equality_config(seed);
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 64; ++attempt) {
    try {
      return signature_at(m, sample_assignment(atoms, config, rng));
    } catch (const std::domain_error&) {
    }
  }
  throw std::domain_error("no nondegenerate sample point found");
}

ClassificationReport classify_all(Geometry& geo, const ClassifyConfig& config) {
  ClassificationReport report;
  report.metric = geo.metric().name();
  report.version = kEngineVersion;
  report.seed = config.seed;
  std::tie(report.positive, report.negative) = sample_signature(geo.metric(), config.seed);

  const auto& reg = structure_registry();
  std::vector<StructureVerdict> out(reg.size());
  auto run = [&](std::size_t i) {
    try {
      out[i] = reg[i].run(geo, config);
    } catch (const std::exception& e) {
      out[i] = detail::make_verdict(reg[i].name, Status::Error);
      out[i].notes.push_back(e.what());
    }
  };
  unsigned threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, unsigned(reg.size()));
  if (threads <= 1) {
    for (std::size_t i = 0; i < reg.size(); ++i) run(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < reg.size(); i = next++) run(i);
      });
    for (auto& th : pool) th.join();
  }
  report.verdicts = std::move(out);
  return report;
}

ClassificationReport classify_all(const MetricSpec& m, const ClassifyConfig& config) {
  Geometry geo(m);
  return classify_all(geo, config);
}

}  // namespace curvkit
