#include "curvkit/classify/verdict.hpp"

#include "identity_system.hpp"

namespace curvkit {

std::string to_string(Status s) {
  switch (s) {
    case Status::Holds: return "HOLDS";
    case Status::Fails: return "FAILS";
    case Status::Vacuous: return "VACUOUS";
    case Status::Error: return "ERROR";
  }
  return "?";
}

std::optional<Status> status_from_string(std::string_view s) {
  for (auto st : {Status::Holds, Status::Fails, Status::Vacuous, Status::Error})
    if (to_string(st) == s) return st;
  return std::nullopt;
}

bool Certificate::empty() const {
  return forms.empty() && family.empty() && scalars.empty() && basis.empty() && !eta_parallel;
}

namespace {

std::string vector_string(const ExprVector& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].to_string();
  }
  return s + "]";
}

std::string forms_string(const std::vector<NamedForm>& forms) {
  std::string s;
  for (const auto& f : forms) {
    if (!s.empty()) s += "; ";
    s += f.label + " = " + vector_string(f.components);
  }
  return s;
}

}  // namespace

std::string Certificate::summary() const {
  std::string s;
  auto add = [&](const std::string& part) {
    if (!s.empty()) s += "; ";
    s += part;
  };
  for (const auto& [name, value] : scalars) add(name + " = " + value.to_string());
  if (!forms.empty()) add(forms_string(forms));
  for (std::size_t i = 0; i < family.size(); ++i)
    add("+ t" + std::to_string(i + 1) + " * (" + forms_string(family[i]) + ")");
  if (eta_parallel) add(*eta_parallel ? "eta parallel" : "eta not parallel");
  if (!basis.empty()) {
    add("basis dimension " + std::to_string(basis.size()));
    for (const auto& b : basis) add(vector_string(b));
  }
  return s;
}

std::string Witness::to_string() const {
  return tensor + "[" + detail::index_label(index) + "] = " + value.to_string();
}

const StructureVerdict* ClassificationReport::find(std::string_view name) const {
  for (const auto& v : verdicts)
    if (v.name == name) return &v;
  return nullptr;
}

}  // namespace curvkit
