#include <iomanip>
#include <sstream>

#include "curvkit/report/report.hpp"
#include "json.hpp"

namespace curvkit {

using nlohmann::json;

namespace {

constexpr int kStatusWidth = 7;

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::string text_row(const RenderedVerdict& v) {
  std::ostringstream os;
  std::string cert = v.certificate;
  if (v.witness) cert += (cert.empty() ? "" : "; ") + std::string("witness ") + *v.witness;
  os << v.name << " | " << std::left << std::setw(kStatusWidth) << to_string(v.status) << " | "
     << (cert.empty() ? "-" : cert) << " | " << (v.regularity.empty() ? "none" : join(v.regularity, ", ")) << '\n';
  for (const auto& n : v.notes) os << "    note: " << n << '\n';
  return os.str();
}

json verdict_json(const RenderedVerdict& v) {
  json j;
  j["name"] = v.name;
  j["status"] = to_string(v.status);
  j["certificate"] = v.certificate;
  j["regularity"] = v.regularity;
  j["witness"] = v.witness ? json(*v.witness) : json(nullptr);
  j["notes"] = v.notes;
  return j;
}

RenderedVerdict verdict_from_json(const json& j) {
  RenderedVerdict v;
  v.name = j.at("name").get<std::string>();
  auto status = status_from_string(j.at("status").get<std::string>());
  if (!status) throw std::invalid_argument("unknown status '" + j.at("status").get<std::string>() + "'");
  v.status = *status;
  v.certificate = j.at("certificate").get<std::string>();
  v.regularity = j.at("regularity").get<std::vector<std::string>>();
  if (!j.at("witness").is_null()) v.witness = j.at("witness").get<std::string>();
  v.notes = j.at("notes").get<std::vector<std::string>>();
  return v;
}

}  // namespace

std::optional<Format> format_from_string(std::string_view s) {
  if (s == "text") return Format::Text;
  if (s == "json" || s == "json-doc") return Format::Json;
  return std::nullopt;
}

RenderedVerdict rendered(const StructureVerdict& v) {
  RenderedVerdict out;
  out.name = v.name;
  out.status = v.status;
  out.certificate = v.certificate.summary();
  for (const auto& e : v.regularity) out.regularity.push_back(e.to_string());
  if (v.witness) out.witness = v.witness->to_string();
  out.notes = v.notes;
  return out;
}

RenderedReport rendered(const ClassificationReport& r) {
  RenderedReport out{r.metric, r.positive, r.negative, {}, r.seed, r.version};
  for (const auto& v : r.verdicts) out.verdicts.push_back(rendered(v));
  return out;
}

std::string render_verdict(const StructureVerdict& v, Format f) {
  if (f == Format::Json) return verdict_json(rendered(v)).dump(2) + "\n";
  return text_row(rendered(v));
}

std::string render_report(const ClassificationReport& r, Format f) {
  RenderedReport doc = rendered(r);
  if (f == Format::Json) {
    json j;
    j["metric"] = doc.metric;
    j["signature_sample"] = {doc.positive, doc.negative};
    j["verdicts"] = json::array();
    for (const auto& v : doc.verdicts) j["verdicts"].push_back(verdict_json(v));
    j["seed"] = doc.seed;
    j["version"] = doc.version;
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "metric: " << doc.metric << '\n'
     << "signature sample: (" << doc.positive << "," << doc.negative << ")\n"
     << "seed: " << doc.seed << '\n'
     << "version: " << doc.version << '\n'
     << "structure | verdict | certificate | regularity\n";
  for (const auto& v : doc.verdicts) os << text_row(v);
  return os.str();
}

RenderedReport parse_report_json(const std::string& text) {
  try {
    json j = json::parse(text);
    RenderedReport r;
    r.metric = j.at("metric").get<std::string>();
    const json& sig = j.at("signature_sample");
    r.positive = sig.at(0).get<int>();
    r.negative = sig.at(1).get<int>();
    for (const auto& v : j.at("verdicts")) r.verdicts.push_back(verdict_from_json(v));
    r.seed = j.at("seed").get<std::uint64_t>();
    r.version = j.at("version").get<std::string>();
    return r;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed report: ") + e.what());
  }
}

}  // namespace curvkit
