#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "curvkit/corpus/corpus.hpp"
#include "curvkit/report/report.hpp"

using namespace curvkit;

namespace {

const ClassificationReport& lorentzian_report() {
  static const ClassificationReport r = classify_all(builtin_metric("paper31"));
  return r;
}

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  args.insert(args.begin(), "curvkit");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_cli(int(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

// Status column of every table row, keyed by structure name.
std::map<std::string, std::string> text_statuses(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  for (int i = 0; i < 5; ++i) std::getline(in, line);
  while (std::getline(in, line)) {
    if (line.rfind("    ", 0) == 0) continue;
    auto a = line.find(" | ");
    auto b = line.find(" | ", a + 3);
    std::string status = line.substr(a + 3, b - a - 3);
    status.erase(status.find_last_not_of(' ') + 1);
    out[line.substr(0, a)] = status;
  }
  return out;
}

}  // namespace

TEST(Report, TextTable) {
  std::string text = render_report(lorentzian_report(), Format::Text);
  EXPECT_NE(text.find("\nhyper_generalized_recurrent | HOLDS"), std::string::npos);
  EXPECT_NE(text.find("structure | verdict | certificate | regularity\n"), std::string::npos);
  EXPECT_EQ(text, render_report(lorentzian_report(), Format::Text));
  auto statuses = text_statuses(text);
  ASSERT_EQ(statuses.size(), lorentzian_report().verdicts.size());
  for (const auto& v : lorentzian_report().verdicts) EXPECT_EQ(statuses[v.name], to_string(v.status)) << v.name;
}

TEST(Report, JsonDocumentRoundTrips) {
  const auto& r = lorentzian_report();
  std::string doc = render_report(r, Format::Json);
  RenderedReport back = parse_report_json(doc);
  EXPECT_EQ(back, rendered(r));
  EXPECT_EQ(back.positive, 3);
  EXPECT_EQ(back.negative, 1);
  bool found = false;
  for (const auto& v : back.verdicts)
    if (v.name == "einstein") {
      found = true;
      EXPECT_EQ(v.status, Status::Fails);
      EXPECT_TRUE(v.witness);
    }
  EXPECT_TRUE(found);
  EXPECT_THROW(parse_report_json("{\"metric\": 1}"), std::invalid_argument);
  EXPECT_THROW(parse_report_json("not json"), std::invalid_argument);
}

TEST(Report, CertificatesUseExpressionGrammar) {
  const auto* v = lorentzian_report().find("ricci_simple");
  ASSERT_NE(v, nullptr);
  std::string text = rendered(*v).certificate;
  auto at = text.find("beta = ");
  ASSERT_NE(at, std::string::npos);
  std::string beta = text.substr(at + 7, text.find(';', at) - at - 7);
  MetricSpec m = builtin_metric("paper31");
  EXPECT_EQ(parse_expr(beta, m.parse_context()), parse_expr("(1+2*exp(x1+x3))/4", m.parse_context()));
}

TEST(Report, EmptyReportIsHeaderOnly) {
  ClassificationReport r;
  r.metric = "none";
  r.version = kEngineVersion;
  std::string text = render_report(r, Format::Text);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 5);
  EXPECT_TRUE(parse_report_json(render_report(r, Format::Json)).verdicts.empty());
}

TEST(Cli, RicciComponents) {
  CliRun r = cli({"tensor", "--builtin", "paper31", "--tensor", "ricci"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "S[1,1] = (1+2*exp(x1+x3))/4\n");
}

TEST(Cli, CheckReportsFailureWithExitZero) {
  CliRun r = cli({"check", "--builtin", "paper31", "--structure", "recurrent"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("recurrent | FAILS"), std::string::npos);
  CliRun j = cli({"check", "--builtin", "paper31", "--structure", "einstein", "--format", "json"});
  EXPECT_EQ(j.code, 0);
  EXPECT_EQ(parse_report_json(j.out).verdicts.at(0).status, Status::Fails);
}

TEST(Cli, TensorNames) {
  for (const char* t : {"riemann", "scalar", "christoffel", "nabla-ricci", "nabla-R", "pp", "qsp", "P.P", "Q(S,P)",
                        "conformal", "gs"}) {
    CliRun r = cli({"tensor", "--builtin", "paper31", "--tensor", t});
    EXPECT_EQ(r.code, 0) << t << r.err;
  }
  EXPECT_EQ(cli({"tensor", "--builtin", "paper31", "--tensor", "scalar"}).out, "");
  CliRun pp = cli({"tensor", "--builtin", "paper31", "--tensor", "pp"});
  EXPECT_NE(pp.out.find("P.P[1,3,1,1,1,3] = "), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli({}).code, 1);
  EXPECT_EQ(cli({"frobnicate"}).code, 1);
  EXPECT_EQ(cli({"classify"}).code, 1);
  EXPECT_EQ(cli({"classify", "--builtin", "paper31", "--file", "x"}).code, 1);
  EXPECT_EQ(cli({"classify", "--builtin", "nope"}).code, 1);
  EXPECT_EQ(cli({"check", "--builtin", "paper31", "--structure", "nope"}).code, 1);
  EXPECT_EQ(cli({"tensor", "--builtin", "paper31", "--tensor", "nope"}).code, 1);
  EXPECT_EQ(cli({"tensor", "--builtin", "paper31", "--tensor", "ricci", "--format", "xml"}).code, 1);
  EXPECT_EQ(cli({"tensor", "--file", "/nonexistent/metric.txt", "--tensor", "ricci"}).code, 2);
  EXPECT_EQ(cli({"--help"}).code, 0);
}

TEST(Cli, MetricFiles) {
  auto dir = std::filesystem::temp_directory_path();
  auto good = dir / "curvkit_cli_good.metric";
  auto bad = dir / "curvkit_cli_bad.metric";
  std::ofstream(good) << builtin_source("paper31");
  std::ofstream(bad) << "metric \"a\"\ndim 3\ncoords x1 x2 x3\ng 1 1 = 1\ng 2 2 = 1\n";
  CliRun r = cli({"tensor", "--file", good.string(), "--tensor", "ricci"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "S[1,1] = (1+2*exp(x1+x3))/4\n");
  CliRun b = cli({"classify", "--file", bad.string()});
  EXPECT_EQ(b.code, 2);
  EXPECT_NE(b.err.find("degenerate"), std::string::npos);
  std::filesystem::remove(good);
  std::filesystem::remove(bad);
}

TEST(Cli, ClassifyIsDeterministic) {
  CliRun a = cli({"classify", "--builtin", "paper31", "--seed", "5", "--threads", "1"});
  CliRun b = cli({"classify", "--builtin", "paper31", "--seed", "5", "--threads", "3"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("seed: 5"), std::string::npos);
  CliRun j = cli({"classify", "--builtin", "paper31", "--format", "json-doc"});
  EXPECT_EQ(text_statuses(a.out).size(), parse_report_json(j.out).verdicts.size());
}

TEST(Cli, CorpusList) {
  CliRun r = cli({"corpus-list"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("paper31\n", 0), 0u);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), long(builtin_metrics().size()));
}
