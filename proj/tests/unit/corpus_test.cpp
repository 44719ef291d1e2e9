#include <gtest/gtest.h>

#include "curvkit/corpus/corpus.hpp"

using namespace curvkit;

namespace {

const char* kLorentzianFile = R"(metric "paper31"
dim 4
coords x1 x2 x3 x4
assume x1 > 0
assume x3 > 0
g 1 1 = exp(x1+x3)
g 1 2 = 1
g 3 3 = 1
g 4 4 = exp(x1)
)";

std::string load_error(const std::string& text) {
  try {
    load_metric_file(text);
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Corpus, LorentzianFileEqualsBuiltin) {
  MetricSpec m = load_metric_file(kLorentzianFile);
  EXPECT_TRUE(same_metric(m, builtin_metric("paper31")));
  EXPECT_EQ(m.dim(), 4u);
  EXPECT_EQ(m.g(0, 1), Expr(1));
  EXPECT_EQ(m.g(1, 0), Expr(1));
  EXPECT_TRUE(m.g(1, 1).is_zero());
}

TEST(Corpus, FamilyMetricEntries) {
  MetricSpec m = builtin_metric("m313");
  ParseContext ctx = m.parse_context();
  EXPECT_EQ(m.g(0, 0), parse_expr("x1*x3", ctx));
  EXPECT_EQ(m.g(1, 1), parse_expr("x1", ctx));
  EXPECT_EQ(m.g(0, 2), Expr(1));
  EXPECT_EQ(m.g(3, 3), parse_expr("f(x1)", ctx));
  ASSERT_EQ(m.opaque().size(), 1u);

  MetricSpec sv = builtin_metric("sv1");
  EXPECT_EQ(sv.g(0, 0), -builtin_metric("paper31").g(0, 0));
  EXPECT_EQ(builtin_metric("m314_6").dim(), 6u);
  EXPECT_EQ(builtin_metric("m315_5").dim(), 5u);
}

TEST(Corpus, FileErrors) {
  EXPECT_NE(load_error("metric \"a\"\ncoords x1 x2\ng 1 1 = 1\ng 2 2 = 1\n").find("missing dim"), std::string::npos);
  EXPECT_NE(load_error("metric \"a\"\ndim 3\ncoords x1 x2 x3\ng 1 2 = 1\ng 2 1 = 2\n")
                .find("conflicting symmetric entries"),
            std::string::npos);
  EXPECT_THROW(load_metric_file("metric \"a\"\ndim 3\ncoords x1 x2 x3\ng 1 1 = 1\ng 2 2 = 1\n"), DegenerateMetric);
  EXPECT_THROW(load_metric_file("metric \"a\"\ndim 3\ncoords x1 x2 x3\ng 1 1 = y\ng 2 2 = 1\ng 3 3 = 1\n"), MetricFileError);
  EXPECT_THROW(load_metric_file("metric \"a\"\ndim 3\ncoords x1 x2\ng 1 1 = 1\ng 2 2 = 1\n"), MetricFileError);
  EXPECT_THROW(load_metric_file("metric \"a\"\ndim 3\ncoords x1 x2 x3\ng 1 4 = 1\n"), MetricFileError);
  try {
    load_metric_file("metric \"a\"\ndim 3\ncoords x1 x2 x3\nbogus\n");
    FAIL();
  } catch (const MetricFileError& e) {
    EXPECT_EQ(e.line(), 4u);
  }
}

TEST(Corpus, CommentsAndSymmetricRepeats) {
  MetricSpec m = load_metric_file(
      "# header\nmetric \"b\"  # trailing\ndim 3\ncoords x1 x2 x3\nparam c\ng 1 1 = c + 1\ng 1 2 = x1\ng 2 1 = x1\ng 3 3 = 1\n");
  EXPECT_EQ(m.parameters().size(), 1u);
  EXPECT_EQ(m.g(1, 0), m.g(0, 1));
}

TEST(Corpus, BuiltinsRoundTripAndValidate) {
  auto list = builtin_metrics();
  EXPECT_GE(list.size(), 17u);
  for (const auto& info : list) {
    MetricSpec m = builtin_metric(info.name);
    EXPECT_EQ(m.name(), info.name);
    std::string text = print_metric_file(m);
    MetricSpec back = load_metric_file(text);
    EXPECT_TRUE(same_metric(m, back)) << info.name;
    EXPECT_EQ(print_metric_file(back), text) << info.name;
    EXPECT_TRUE(same_metric(load_metric_file(builtin_source(info.name)), m)) << info.name;
  }
  EXPECT_THROW(builtin_metric("nope"), std::out_of_range);
}
