#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace curvkit {

/// Kinds of polynomial indeterminates. Exponentials are not variables: they
/// live in the exponent part of a monomial as a linear form over coordinates.
enum class VarKind : std::uint8_t {
  Coordinate,  ///< a chart coordinate, differentiable
  Opaque,      ///< f^(k)(x) for a declared opaque function f
  Parameter,   ///< a free constant (a1, a4, ...); derivative is always 0
};

/// Interned, immutable description of one indeterminate. Instances are owned
/// by the global symbol table and never freed, so `const Symbol*` is a
/// stable handle that may be shared across threads.
struct Symbol {
  std::uint32_t id;     ///< interning sequence number (storage order only)
  VarKind kind;
  std::string name;     ///< coordinate/parameter name or opaque function name
  int order = 0;        ///< derivative order for opaque atoms
  const Symbol* arg = nullptr;  ///< argument coordinate for opaque atoms

  /// Printed form: "x1", "f(x1)", "f''(x1)".
  std::string to_string() const;
};

using Var = const Symbol*;

Var coordinate_symbol(std::string_view name);
Var parameter_symbol(std::string_view name);
Var opaque_symbol(std::string_view name, int order, Var arg);

/// Canonical (interning-independent) variable order: coordinates, then
/// parameters, then opaque atoms by (name, order, argument). Names compare
/// naturally, so x2 < x10.
int canonical_compare(Var a, Var b);

/// Natural string order with embedded digit runs compared numerically.
int natural_compare(std::string_view a, std::string_view b);

}  // namespace curvkit
