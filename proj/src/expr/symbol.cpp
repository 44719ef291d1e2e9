#include "curvkit/expr/symbol.hpp"

#include <deque>
#include <map>
#include <mutex>
#include <tuple>

namespace curvkit {

namespace {

using Key = std::tuple<VarKind, std::string, int, const Symbol*>;

class SymbolTable {
 public:
  Var intern(VarKind kind, std::string_view name, int order, Var arg) {
    std::lock_guard<std::mutex> lock(mutex_);
    Key key{kind, std::string(name), order, arg};
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    auto& sym = storage_.emplace_back();
    sym.id = static_cast<std::uint32_t>(storage_.size() - 1);
    sym.kind = kind;
    sym.name = std::string(name);
    sym.order = order;
    sym.arg = arg;
    index_.emplace(std::move(key), &sym);
    return &sym;
  }

 private:
  std::mutex mutex_;
  std::deque<Symbol> storage_;
  std::map<Key, const Symbol*> index_;
};

SymbolTable& table() {
  static SymbolTable t;
  return t;
}

int kind_rank(VarKind k) {
  switch (k) {
    case VarKind::Coordinate: return 0;
    case VarKind::Parameter: return 1;
    case VarKind::Opaque: return 2;
  }
  return 3;
}

}  // namespace

std::string Symbol::to_string() const {
  if (kind != VarKind::Opaque) return name;
  std::string s = name;
  s.append(static_cast<std::size_t>(order), '\'');
  s += '(';
  s += arg->name;
  s += ')';
  return s;
}

Var coordinate_symbol(std::string_view name) {
  return table().intern(VarKind::Coordinate, name, 0, nullptr);
}

Var parameter_symbol(std::string_view name) {
  return table().intern(VarKind::Parameter, name, 0, nullptr);
}

Var opaque_symbol(std::string_view name, int order, Var arg) {
  return table().intern(VarKind::Opaque, name, order, arg);
}

int natural_compare(std::string_view a, std::string_view b) {
  std::size_t i = 0, j = 0;
  auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
  while (i < a.size() && j < b.size()) {
    if (is_digit(a[i]) && is_digit(b[j])) {
      std::size_t i0 = i, j0 = j;
      while (i < a.size() && is_digit(a[i])) ++i;
      while (j < b.size() && is_digit(b[j])) ++j;
      auto da = a.substr(i0, i - i0);
      auto db = b.substr(j0, j - j0);
      while (da.size() > 1 && da.front() == '0') da.remove_prefix(1);
      while (db.size() > 1 && db.front() == '0') db.remove_prefix(1);
      if (da.size() != db.size()) return da.size() < db.size() ? -1 : 1;
      if (int c = da.compare(db); c != 0) return c < 0 ? -1 : 1;
      continue;
    }
    if (a[i] != b[j]) return a[i] < b[j] ? -1 : 1;
    ++i;
    ++j;
  }
  if (i == a.size() && j == b.size()) return 0;
  return i == a.size() ? -1 : 1;
}

int canonical_compare(Var a, Var b) {
  if (a == b) return 0;
  if (a->kind != b->kind) return kind_rank(a->kind) < kind_rank(b->kind) ? -1 : 1;
  if (int c = natural_compare(a->name, b->name); c != 0) return c;
  if (a->order != b->order) return a->order < b->order ? -1 : 1;
  if (a->arg && b->arg) return canonical_compare(a->arg, b->arg);
  return 0;
}

}  // namespace curvkit
