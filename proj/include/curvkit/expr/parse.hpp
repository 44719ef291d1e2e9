#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "curvkit/expr/expr.hpp"

namespace curvkit {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::runtime_error(message + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Names visible to the parser. Opaque functions take exactly one declared
/// coordinate; f'(x) and f''(x) denote its derivatives.
struct ParseContext {
  std::vector<Var> coordinates;
  std::vector<Var> parameters;
  std::map<std::string, Var> opaque;  // function name -> argument coordinate

  Var add_coordinate(const std::string& name);
  Var add_parameter(const std::string& name);
  void add_opaque(const std::string& name, Var argument);
  Var find(std::string_view name) const;
};

/// Grammar:
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := '-' factor | base ('^' '-'? integer)?
///   base   := integer | identifier | identifier '(' expr ')' | '(' expr ')'
/// The argument of exp() must be a linear form in coordinates without a
/// constant term.
Expr parse_expr(std::string_view text, const ParseContext& ctx);

}  // namespace curvkit
