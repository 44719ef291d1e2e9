#pragma once

#include <string>

#include "curvkit/expr/parse.hpp"

namespace curvkit::testing {

inline ParseContext standard_context() {
  ParseContext ctx;
  for (const char* n : {"x1", "x2", "x3", "x4"}) ctx.add_coordinate(n);
  ctx.add_parameter("c");
  ctx.add_opaque("f", ctx.coordinates[0]);
  return ctx;
}

inline Expr P(const std::string& s) {
  static const ParseContext ctx = standard_context();
  return parse_expr(s, ctx);
}

inline Var X(int i) { return coordinate_symbol("x" + std::to_string(i)); }

}  // namespace curvkit::testing
