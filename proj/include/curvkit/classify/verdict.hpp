#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "curvkit/linalg/matrix.hpp"
#include "curvkit/tensor/tensor.hpp"

namespace curvkit {

/// Error marks a detector that threw; the message is in notes.
enum class Status { Holds, Fails, Vacuous, Error };

/// "HOLDS", "FAILS", "VACUOUS", "ERROR".
std::string to_string(Status s);
std::optional<Status> status_from_string(std::string_view s);

struct NamedForm {
  std::string label;
  ExprVector components;
};

struct Certificate {
  /// One-forms, or the particular member of a family.
  std::vector<NamedForm> forms;
  /// Homogeneous directions; every forms + sum t_i * family[i] satisfies
  /// the identity.
  std::vector<std::vector<NamedForm>> family;
  std::vector<std::pair<std::string, Expr>> scalars;
  /// Null-space basis of a compatibility system.
  std::vector<ExprVector> basis;
  /// Set by the Ricci simple detector: whether eta is parallel.
  std::optional<bool> eta_parallel;

  bool empty() const;
  /// One-line printable form, e.g. "A = [a, 0, a, 0]; L = -1/3".
  std::string summary() const;
};

struct Witness {
  std::string tensor;
  Index index;  ///< 0-based
  Expr value;
  /// "tensor[i,j,..] = value" with 1-based indices.
  std::string to_string() const;
};

struct StructureVerdict {
  std::string name;
  Status status = Status::Fails;
  Certificate certificate;
  std::optional<Witness> witness;
  /// Expressions assumed nonvanishing by the derivation.
  ExprVector regularity;
  std::vector<std::string> notes;
};

struct ClassificationReport {
  std::string metric;
  int positive = 0;  ///< signature sample
  int negative = 0;
  std::vector<StructureVerdict> verdicts;
  std::string version;
  std::uint64_t seed = 0;

  const StructureVerdict* find(std::string_view name) const;
};

}  // namespace curvkit
