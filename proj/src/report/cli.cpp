#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "curvkit/corpus/corpus.hpp"
#include "curvkit/report/report.hpp"
#include "json.hpp"

namespace curvkit {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string builtin;
  std::string file;
  std::uint64_t seed = 0;
  int num_points = 8;
  std::string format = "text";
  std::string tensor;
  std::string structure;
  bool symmetric_only = false;
  unsigned threads = 0;
};

const std::map<std::string, TensorKind>& tensor_names() {
  static const std::map<std::string, TensorKind> names{
      {"metric", TensorKind::Metric},           {"riemann", TensorKind::Riemann},
      {"ricci", TensorKind::Ricci},             {"conformal", TensorKind::Conformal},
      {"projective", TensorKind::Projective},   {"concircular", TensorKind::Concircular},
      {"conharmonic", TensorKind::Conharmonic},
  };
  return names;
}

TensorKind kind_named(const std::string& s) {
  auto it = tensor_names().find(s);
  if (it != tensor_names().end()) return it->second;
  if (auto k = tensor_kind_from(s)) return *k;
  throw UsageError("unknown tensor '" + s + "'");
}

MetricSpec load_source(const Options& o) {
  if (o.builtin.empty() == o.file.empty()) throw UsageError("exactly one of --builtin and --file is required");
  if (!o.builtin.empty()) {
    try {
      return builtin_metric(o.builtin);
    } catch (const std::out_of_range&) {
      throw UsageError("unknown builtin metric '" + o.builtin + "'");
    }
  }
  std::ifstream in(o.file);
  if (!in) throw std::runtime_error("cannot read '" + o.file + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return load_metric_file(buf.str());
}

Format format_of(const Options& o) {
  auto f = format_from_string(o.format);
  if (!f) throw UsageError("unknown format '" + o.format + "'");
  return *f;
}

ClassifyConfig config_of(const Options& o) {
  ClassifyConfig c;
  c.seed = o.seed;
  c.num_points = o.num_points;
  c.symmetric_only = o.symmetric_only;
  c.threads = o.threads;
  return c;
}

// riemann, ricci, ..., scalar, christoffel, nabla-<tensor>, pp, qsp,
// gg, gs, ss, H.T and Q(E,T) with one-letter symbols.
std::string tensor_dump(Geometry& geo, const std::string& name, Format f) {
  auto as_json = [&](const std::string& dump) {
    nlohmann::json j;
    j["metric"] = geo.metric().name();
    j["tensor"] = name;
    std::vector<std::string> lines;
    std::istringstream in(dump);
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    j["components"] = lines;
    return j.dump(2) + "\n";
  };
  auto emit = [&](const std::string& dump) { return f == Format::Json ? as_json(dump) : dump; };

  if (name == "scalar") return emit(geo.scalar().is_zero() ? "" : "r = " + geo.scalar().to_string() + "\n");
  if (name == "christoffel") return emit(geo.christoffel().dump());
  if (name == "gg") return emit(geo.gg().dump("g^g"));
  if (name == "gs") return emit(geo.gs().dump("g^S"));
  if (name == "ss") return emit(geo.ss().dump("S^S"));
  if (name == "pp") return emit(geo.action(TensorKind::Projective, TensorKind::Projective).dump("P.P"));
  if (name == "qsp") return emit(geo.tachibana(TensorKind::Ricci, TensorKind::Projective).dump("Q(S,P)"));
  if (name.rfind("nabla-", 0) == 0) {
    TensorKind k = kind_named(name.substr(6));
    return emit(geo.nabla(k).dump("nabla" + symbol_of(k)));
  }
  if (name.size() == 3 && name[1] == '.') {
    TensorKind h = kind_named(name.substr(0, 1));
    TensorKind t = kind_named(name.substr(2, 1));
    return emit(geo.action(h, t).dump(name));
  }
  if (name.size() == 6 && name.rfind("Q(", 0) == 0 && name[3] == ',' && name[5] == ')') {
    TensorKind e = kind_named(name.substr(2, 1));
    TensorKind t = kind_named(name.substr(4, 1));
    return emit(geo.tachibana(e, t).dump(name));
  }
  TensorKind k = kind_named(name);
  return emit(geo.tensor(k).dump(symbol_of(k)));
}

void add_source(CLI::App* cmd, Options& o) {
  cmd->add_option("--builtin", o.builtin, "Registered metric name");
  cmd->add_option("--file", o.file, "Metric file path");
  cmd->add_option("--seed", o.seed, "Seed for sampling")->capture_default_str();
  cmd->add_option("--num-points", o.num_points, "Sample points for probabilistic checks")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--format", o.format, "text or json")->capture_default_str();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Curvature structure classifier for semi-Riemannian metrics", "curvkit"};
  app.require_subcommand(1);
  Options o;

  auto* classify = app.add_subcommand("classify", "Classify a metric against every registered structure");
  add_source(classify, o);
  classify->add_flag("--symmetric-only", o.symmetric_only, "Only symmetric compatible tensors");
  classify->add_option("--threads", o.threads, "Worker threads, 0 for all cores");

  auto* tensor = app.add_subcommand("tensor", "Print the nonzero components of one tensor");
  add_source(tensor, o);
  tensor->add_option("--tensor", o.tensor, "riemann, ricci, scalar, nabla-<tensor>, pp, qsp, ...")->required();

  auto* check = app.add_subcommand("check", "Run one structure detector");
  add_source(check, o);
  check->add_option("--structure", o.structure, "Structure name")->required();
  check->add_flag("--symmetric-only", o.symmetric_only, "Only symmetric compatible tensors");

  auto* list = app.add_subcommand("corpus-list", "List the registered metrics");
  list->add_option("--format", o.format, "text or json")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    Format f = format_of(o);
    if (list->parsed()) {
      nlohmann::json names = nlohmann::json::array();
      for (const auto& b : builtin_metrics()) names.push_back(b.name);
      if (f == Format::Json) {
        out << names.dump(2) << '\n';
      } else {
        for (const auto& b : builtin_metrics()) out << b.name << '\n';
      }
      return 0;
    }
    MetricSpec m = load_source(o);
    Geometry geo(m);
    ClassifyConfig config = config_of(o);
    if (classify->parsed()) {
      out << render_report(classify_all(geo, config), f);
    } else if (tensor->parsed()) {
      out << tensor_dump(geo, o.tensor, f);
    } else {
      const auto& reg = structure_registry();
      bool known = std::any_of(reg.begin(), reg.end(), [&](const auto& e) { return e.name == o.structure; });
      if (!known) throw UsageError("unknown structure '" + o.structure + "'");
      ClassificationReport r;
      r.metric = m.name();
      r.version = kEngineVersion;
      r.seed = config.seed;
      std::tie(r.positive, r.negative) = sample_signature(m, config.seed);
      r.verdicts.push_back(classify_one(geo, o.structure, config));
      out << render_report(r, f);
    }
    return 0;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace curvkit
