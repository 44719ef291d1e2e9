#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "curvkit/tensor/metric.hpp"

namespace curvkit {

class MetricFileError : public std::runtime_error {
 public:
  MetricFileError(std::size_t line, const std::string& message)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}
  /// 1-based line of the offending statement, 0 for whole-file errors.
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Parse the line-oriented metric format:
///
///   metric "<name>"
///   dim <n>
///   coords <ident> ...
///   assume <coord> > 0          (or < 0, != 0, in (a, b))
///   param <ident> ...
///   opaque <ident>(<coord>) [positive]
///   g <i> <j> = <expression>    (1-based; g j i defaults to g i j)
///
/// '#' starts a comment. Throws MetricFileError, or DegenerateMetric.
MetricSpec load_metric_file(const std::string& text);

/// Inverse of load_metric_file: printing and re-reading is the identity.
std::string print_metric_file(const MetricSpec& m);

/// Same name, coordinates, parameters, opaque declarations, assumptions
/// and metric entries.
bool same_metric(const MetricSpec& a, const MetricSpec& b);

struct BuiltinInfo {
  std::string name;
  std::string description;
};

std::vector<BuiltinInfo> builtin_metrics();
/// Throws std::out_of_range for an unknown name.
MetricSpec builtin_metric(const std::string& name);
std::string builtin_source(const std::string& name);

}  // namespace curvkit
