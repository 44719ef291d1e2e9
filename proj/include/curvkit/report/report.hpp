#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "curvkit/classify/classify.hpp"

namespace curvkit {

enum class Format { Text, Json };

/// "text", or "json" / "json-doc".
std::optional<Format> format_from_string(std::string_view s);

/// Text: header lines, then one "name | STATUS | certificate | regularity"
/// row per verdict. Json: one document with metric, signature_sample,
/// verdicts, seed and version.
std::string render_report(const ClassificationReport& r, Format f);
std::string render_verdict(const StructureVerdict& v, Format f);

/// A verdict as it appears in a rendered document: every field is text.
struct RenderedVerdict {
  std::string name;
  Status status = Status::Fails;
  std::string certificate;
  std::vector<std::string> regularity;
  std::optional<std::string> witness;
  std::vector<std::string> notes;

  bool operator==(const RenderedVerdict&) const = default;
};

struct RenderedReport {
  std::string metric;
  int positive = 0;
  int negative = 0;
  std::vector<RenderedVerdict> verdicts;
  std::uint64_t seed = 0;
  std::string version;

  bool operator==(const RenderedReport&) const = default;
};

RenderedVerdict rendered(const StructureVerdict& v);
RenderedReport rendered(const ClassificationReport& r);

/// Inverse of render_report(r, Format::Json). Throws std::invalid_argument
/// on malformed input.
RenderedReport parse_report_json(const std::string& text);

/// Command-line entry point. Returns 0 on success, 1 on usage errors and 2
/// on computation or metric file errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace curvkit
