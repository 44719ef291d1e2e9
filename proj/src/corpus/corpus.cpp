#include "curvkit/corpus/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>

namespace curvkit {

namespace {

std::string strip_comment(const std::string& line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

std::optional<mpq_class> parse_rational(std::string s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  auto slash = s.find('/');
  auto digits = [](const std::string& t) {
    return !t.empty() && std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  };
  std::string num = s.substr(i, slash == std::string::npos ? std::string::npos : slash - i);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!digits(num) || !digits(den)) return std::nullopt;
  if (mpz_class(den) == 0) return std::nullopt;
  mpq_class q{mpz_class(num), mpz_class(den)};
  q.canonicalize();
  if (s[0] == '-') q = -q;
  return q;
}

struct FileState {
  std::optional<std::string> name;
  std::optional<std::size_t> dim;
  std::optional<std::size_t> dim_line;
  std::vector<Var> coords;
  std::vector<Var> params;
  std::vector<OpaqueDecl> opaque;
  std::vector<Assumption> assumptions;
  std::map<std::pair<std::size_t, std::size_t>, std::pair<Expr, std::size_t>> entries;  // value, line

  ParseContext context() const {
    ParseContext ctx;
    ctx.coordinates = coords;
    ctx.parameters = params;
    for (const auto& o : opaque) ctx.add_opaque(o.name, o.argument);
    return ctx;
  }
  Var coordinate(const std::string& n) const {
    for (Var v : coords)
      if (v->name == n) return v;
    return nullptr;
  }
  bool name_taken(const std::string& n) const {
    if (coordinate(n)) return true;
    for (Var v : params)
      if (v->name == n) return true;
    for (const auto& o : opaque)
      if (o.name == n) return true;
    return n == "exp";
  }
};

void parse_line(FileState& st, const std::string& raw, std::size_t ln) {
  std::string line = trim(strip_comment(raw));
  if (line.empty()) return;
  std::istringstream in(line);
  std::string kw;
  in >> kw;
  std::string rest = trim(line.substr(kw.size()));
  auto fail = [&](const std::string& msg) { throw MetricFileError(ln, msg); };

  if (kw == "metric") {
    if (st.name) fail("duplicate metric name");
    if (rest.size() < 2 || rest.front() != '"' || rest.back() != '"') fail("expected metric \"<name>\"");
    st.name = rest.substr(1, rest.size() - 2);
    if (st.name->find('"') != std::string::npos) fail("metric name must not contain '\"'");
  } else if (kw == "dim") {
    if (st.dim) fail("duplicate dim");
    auto q = parse_rational(rest);
    if (!q || q->get_den() != 1 || *q < 1 || *q > 64) fail("dim must be a positive integer");
    st.dim = q->get_num().get_ui();
    st.dim_line = ln;
  } else if (kw == "coords") {
    if (!st.coords.empty()) fail("duplicate coords");
    std::string c;
    while (in >> c) {
      if (!is_identifier(c)) fail("invalid coordinate name '" + c + "'");
      if (st.name_taken(c)) fail("duplicate name '" + c + "'");
      st.coords.push_back(coordinate_symbol(c));
    }
    if (st.coords.empty()) fail("coords needs at least one name");
    if (st.dim && st.coords.size() != *st.dim)
      fail("dimension mismatch: dim " + std::to_string(*st.dim) + " but " + std::to_string(st.coords.size()) +
           " coordinates");
  } else if (kw == "param") {
    std::string c;
    bool any = false;
    while (in >> c) {
      if (!is_identifier(c)) fail("invalid parameter name '" + c + "'");
      if (st.name_taken(c)) fail("duplicate name '" + c + "'");
      st.params.push_back(parameter_symbol(c));
      any = true;
    }
    if (!any) fail("param needs at least one name");
  } else if (kw == "assume") {
    std::string c, op;
    in >> c >> op;
    Var v = st.coordinate(c);
    if (!v) fail("assumption on undeclared coordinate '" + c + "'");
    Assumption a;
    a.coord = v;
    std::string tail;
    std::getline(in, tail);
    tail = trim(tail);
    if (op == ">" || op == "<" || op == "!=") {
      if (tail != "0") fail("expected '" + op + " 0'");
      a.kind = op == ">" ? Assumption::Kind::Positive : op == "<" ? Assumption::Kind::Negative : Assumption::Kind::NonZero;
    } else if (op == "in") {
      if (tail.size() < 2 || tail.front() != '(' || tail.back() != ')') fail("expected 'in (a, b)'");
      std::string body = tail.substr(1, tail.size() - 2);
      auto comma = body.find(',');
      if (comma == std::string::npos) fail("expected 'in (a, b)'");
      auto lo = parse_rational(body.substr(0, comma)), hi = parse_rational(body.substr(comma + 1));
      if (!lo || !hi) fail("interval bounds must be rational numbers");
      if (!(*lo < *hi)) fail("empty interval");
      a.kind = Assumption::Kind::Interval;
      a.lower = *lo;
      a.upper = *hi;
    } else {
      fail("unknown assumption operator '" + op + "'");
    }
    for (const auto& other : st.assumptions)
      if (other.coord == v) fail("duplicate assumption on '" + c + "'");
    st.assumptions.push_back(a);
  } else if (kw == "opaque") {
    auto open = rest.find('('), close = rest.find(')');
    if (open == std::string::npos || close == std::string::npos || close < open) fail("expected opaque f(x) [positive]");
    std::string fname = trim(rest.substr(0, open));
    std::string arg = trim(rest.substr(open + 1, close - open - 1));
    std::string flag = trim(rest.substr(close + 1));
    if (!is_identifier(fname)) fail("invalid function name '" + fname + "'");
    if (st.name_taken(fname)) fail("duplicate name '" + fname + "'");
    Var v = st.coordinate(arg);
    if (!v) fail("opaque function argument '" + arg + "' is not a declared coordinate");
    if (!flag.empty() && flag != "positive") fail("unknown opaque flag '" + flag + "'");
    st.opaque.push_back({fname, v, flag == "positive"});
  } else if (kw == "g") {
    std::string si, sj;
    in >> si >> sj;
    auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected g <i> <j> = <expression>");
    if (st.coords.empty()) fail("coords must be declared before metric entries");
    auto i = parse_rational(si), j = parse_rational(sj);
    if (!i || !j || i->get_den() != 1 || j->get_den() != 1) fail("metric indices must be integers");
    long li = i->get_num().get_si(), lj = j->get_num().get_si();
    long n = static_cast<long>(st.coords.size());
    if (li < 1 || lj < 1 || li > n || lj > n) fail("metric index out of range 1.." + std::to_string(n));
    Expr value;
    try {
      value = parse_expr(line.substr(eq + 1), st.context());
    } catch (const ParseError& e) {
      fail(std::string("expression: ") + e.what());
    }
    std::pair<std::size_t, std::size_t> key(li - 1, lj - 1), mirror(lj - 1, li - 1);
    if (st.entries.count(key)) fail("duplicate entry g " + si + " " + sj);
    auto other = st.entries.find(mirror);
    if (other != st.entries.end() && other->second.first != value)
      fail("conflicting symmetric entries g " + si + " " + sj + " and g " + sj + " " + si);
    st.entries[key] = {value, ln};
  } else {
    fail("unknown statement '" + kw + "'");
  }
}

std::string assumption_line(const Assumption& a) {
  switch (a.kind) {
    case Assumption::Kind::Positive: return "assume " + a.coord->name + " > 0";
    case Assumption::Kind::Negative: return "assume " + a.coord->name + " < 0";
    case Assumption::Kind::NonZero: return "assume " + a.coord->name + " != 0";
    case Assumption::Kind::Interval:
      return "assume " + a.coord->name + " in (" + a.lower.get_str() + ", " + a.upper.get_str() + ")";
  }
  return "";
}

}  // namespace

MetricSpec load_metric_file(const std::string& text) {
  FileState st;
  std::istringstream in(text);
  std::string raw;
  std::size_t ln = 0;
  while (std::getline(in, raw)) parse_line(st, raw, ++ln);
  if (!st.dim) throw MetricFileError(0, "missing dim");
  if (st.coords.empty()) throw MetricFileError(0, "missing coords");
  if (st.coords.size() != *st.dim)
    throw MetricFileError(*st.dim_line, "dimension mismatch: dim " + std::to_string(*st.dim) + " but " +
                                            std::to_string(st.coords.size()) + " coordinates");
  const std::size_t n = *st.dim;
  ExprMatrix g(n, n);
  for (const auto& [key, val] : st.entries) {
    g(key.first, key.second) = val.first;
    g(key.second, key.first) = val.first;
  }
  try {
    return MetricSpec(st.name.value_or("metric"), st.coords, g, st.params, st.opaque, st.assumptions);
  } catch (const DegenerateMetric&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw MetricFileError(0, e.what());
  }
}

std::string print_metric_file(const MetricSpec& m) {
  std::ostringstream out;
  out << "metric \"" << m.name() << "\"\n";
  out << "dim " << m.dim() << "\n";
  out << "coords";
  for (Var v : m.coordinates()) out << " " << v->name;
  out << "\n";
  if (!m.parameters().empty()) {
    out << "param";
    for (Var v : m.parameters()) out << " " << v->name;
    out << "\n";
  }
  for (const auto& a : m.assumptions()) out << assumption_line(a) << "\n";
  for (const auto& o : m.opaque())
    out << "opaque " << o.name << "(" << o.argument->name << ")" << (o.positive ? " positive" : "") << "\n";
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = i; j < m.dim(); ++j)
      if (!m.g(i, j).is_zero()) out << "g " << i + 1 << " " << j + 1 << " = " << m.g(i, j).to_string() << "\n";
  return out.str();
}

bool same_metric(const MetricSpec& a, const MetricSpec& b) {
  if (a.name() != b.name() || a.coordinates() != b.coordinates() || a.parameters() != b.parameters()) return false;
  if (a.opaque().size() != b.opaque().size() || a.assumptions().size() != b.assumptions().size()) return false;
  for (std::size_t i = 0; i < a.opaque().size(); ++i) {
    const auto &x = a.opaque()[i], &y = b.opaque()[i];
    if (x.name != y.name || x.argument != y.argument || x.positive != y.positive) return false;
  }
  for (std::size_t i = 0; i < a.assumptions().size(); ++i) {
    const auto &x = a.assumptions()[i], &y = b.assumptions()[i];
    if (x.coord != y.coord || x.kind != y.kind || x.lower != y.lower || x.upper != y.upper) return false;
  }
  return a.g() == b.g();
}

namespace {

struct Builtin {
  std::string name;
  std::string description;
  std::string source;
};

std::string header(const std::string& name, int n) {
  std::string s = "metric \"" + name + "\"\ndim " + std::to_string(n) + "\ncoords";
  for (int i = 1; i <= n; ++i) s += " x" + std::to_string(i);
  return s + "\n";
}

std::string lorentz_family(const std::string& name, const char* s11, const char* s33, const char* s44) {
  return header(name, 4) + "assume x1 > 0\nassume x3 > 0\n" + "g 1 1 = " + s11 + "exp(x1+x3)\ng 1 2 = 1\ng 3 3 = " +
         s33 + "1\ng 4 4 = " + s44 + "exp(x1)\n";
}

std::string warped_extension(const std::string& name, int n, bool second) {
  std::string s = header(name, n) + "assume x1 > 0\nassume x3 > 0\nopaque f(x1) positive\n";
  s += second ? "g 1 1 = x1*x3\ng 2 2 = x1\ng 1 3 = 1\n" : "g 1 1 = exp(x1+x3)\ng 1 2 = 1\ng 3 3 = 1\n";
  for (int a = 4; a <= n; ++a) s += "g " + std::to_string(a) + " " + std::to_string(a) + " = f(x1)\n";
  return s;
}

const std::vector<Builtin>& registry() {
  static const std::vector<Builtin> r = [] {
    std::vector<Builtin> v;
    v.push_back({"paper31", "Lorentzian metric e^(x1+x3) dx1^2 + 2 dx1 dx2 + dx3^2 + e^x1 dx4^2",
                 lorentz_family("paper31", "", "", "")});
    const char* signs[7][3] = {{"-", "", ""},  {"", "-", "-"}, {"-", "-", "-"}, {"", "-", ""},
                               {"-", "-", ""}, {"-", "", "-"}, {"", "", "-"}};
    for (int i = 0; i < 7; ++i) {
      std::string name = "sv" + std::to_string(i + 1);
      std::string desc = std::string("sign variant: ") + (signs[i][0][0] ? "-" : "+") + "e^(x1+x3) dx1^2 + 2 dx1 dx2 " +
                         (signs[i][1][0] ? "-" : "+") + " dx3^2 " + (signs[i][2][0] ? "-" : "+") + " e^x1 dx4^2";
      v.push_back({name, desc, lorentz_family(name, signs[i][0], signs[i][1], signs[i][2])});
    }
    v.push_back({"m312", "e^(x1+x3) dx1^2 + 2 dx1 dx2 + dx3^2 + f(x1) dx4^2", warped_extension("m312", 4, false)});
    v.push_back({"m313", "x1 x3 dx1^2 + x1 dx2^2 + 2 dx1 dx3 + f(x1) dx4^2", warped_extension("m313", 4, true)});
    for (int n : {5, 6}) {
      std::string s = std::to_string(n);
      v.push_back({"m314_" + s, "m312 extended by f(x1) delta_ab dx^a dx^b, dim " + s,
                   warped_extension("m314_" + s, n, false)});
      v.push_back({"m315_" + s, "m313 extended by f(x1) delta_ab dx^a dx^b, dim " + s,
                   warped_extension("m315_" + s, n, true)});
    }
    v.push_back({"flat4", "Euclidean metric dx1^2 + dx2^2 + dx3^2 + dx4^2",
                 header("flat4", 4) + "g 1 1 = 1\ng 2 2 = 1\ng 3 3 = 1\ng 4 4 = 1\n"});
    v.push_back({"lsym4", "control, locally symmetric: hyperbolic plane times a flat plane, (dx1^2 + dx2^2)/x2^2 + dx3^2 + dx4^2",
                 header("lsym4", 4) + "assume x2 > 0\ng 1 1 = 1/x2^2\ng 2 2 = 1/x2^2\ng 3 3 = 1\ng 4 4 = 1\n"});
    v.push_back({"rec4",
                 "control, recurrent: plane wave (x3^2+x4^2) e^x1 dx1^2 + 2 dx1 dx2 + dx3^2 + dx4^2 with parallel "
                 "null dx1, R = alpha g^(dx1 dx1)",
                 header("rec4", 4) + "g 1 1 = (x3^2+x4^2)*exp(x1)\ng 1 2 = 1\ng 3 3 = 1\ng 4 4 = 1\n"});
    return v;
  }();
  return r;
}

const Builtin& find_builtin(const std::string& name) {
  for (const auto& b : registry())
    if (b.name == name) return b;
  throw std::out_of_range("unknown metric '" + name + "'");
}

}  // namespace

std::vector<BuiltinInfo> builtin_metrics() {
  std::vector<BuiltinInfo> out;
  for (const auto& b : registry()) out.push_back({b.name, b.description});
  return out;
}

std::string builtin_source(const std::string& name) { return find_builtin(name).source; }

MetricSpec builtin_metric(const std::string& name) { return load_metric_file(find_builtin(name).source); }

}  // namespace curvkit
