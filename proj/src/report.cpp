#include "omni/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace omni {

using nlohmann::json;

namespace {

json witness_json(const Witness& w, const std::vector<std::string>& names) {
  json j{{"kind", w.kind}, {"point", w.point}, {"indices", w.indices}, {"value", w.value}};
  if (!w.point.empty() && w.point.size() == names.size()) {
    json c = json::object();
    for (std::size_t i = 0; i < names.size(); ++i) c[names[i]] = w.point[i];
    j["coordinates"] = c;
  }
  return j;
}

std::string format_double(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string s(buf);
  // Keep a float marker so readers do not reinterpret it as an integer.
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

void emit(std::ostringstream& out, const json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' '), inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {  // std::map order: sorted keys
        if (!first) out << ",\n";
        first = false;
        out << inner << json(it.key()).dump() << ": ";
        emit(out, it.value(), indent + 1);
      }
      out << "\n" << pad << "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out << "[]";
        return;
      }
      out << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out << ",\n";
        out << inner;
        emit(out, j[i], indent + 1);
      }
      out << "\n" << pad << "]";
      return;
    }
    case json::value_t::number_float:
      out << format_double(j.get<double>());
      return;
    default:
      out << j.dump();
  }
}

std::string point_text(const std::vector<double>& p, const std::vector<std::string>& names) {
  std::ostringstream s;
  s << "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s << ", ";
    if (p.size() == names.size()) s << names[i] << "=";
    s << p[i];
  }
  s << ")";
  return s.str();
}

}  // namespace

json report_to_json(const RunReport& r, bool timing) {
  json checks = json::array();
  for (const auto& c : r.results) {
    json w = json::array();
    for (const auto& x : c.witnesses) w.push_back(witness_json(x, c.coordinates));
    json j{{"label", c.label},
           {"verb", c.verb},
           {"target", c.target},
           {"holds", c.holds},
           {"expected", c.expected ? "pass" : "fail"},
           {"pass", c.pass},
           {"error", c.error.empty() ? json(nullptr) : json(c.error)},
           {"details", c.details},
           {"witnesses", w}};
    if (timing) j["seconds"] = c.seconds;
    checks.push_back(j);
  }
  const std::size_t passed = r.passed();
  return json{{"schema", kReportSchema},
              {"source", r.source},
              {"oracle",
               {{"seed", r.oracle.seed}, {"samples", r.oracle.samples}, {"atol", r.oracle.atol}, {"rtol", r.oracle.rtol}}},
              {"summary",
               {{"checks", r.results.size()}, {"passed", passed}, {"failed", r.results.size() - passed}, {"ok", r.ok()}}},
              {"checks", checks}};
}

std::string dump_json(const json& j) {
  std::ostringstream out;
  emit(out, j, 0);
  out << "\n";
  return out.str();
}

std::string emit_report(const RunReport& r, const EmitOptions& opts) {
  if (opts.format == ReportFormat::Json) return dump_json(report_to_json(r, opts.timing));
  std::ostringstream s;
  s << "report for " << (r.source.empty() ? "<none>" : r.source) << " (seed " << r.oracle.seed << ", samples "
    << r.oracle.samples << ", atol " << r.oracle.atol << ", rtol " << r.oracle.rtol << ")\n";
  for (const auto& c : r.results) {
    char t[32];
    std::snprintf(t, sizeof t, "%.3fs", c.seconds);
    s << (c.pass ? "PASS" : "FAIL") << "  " << c.label << "  [" << c.verb << (c.target.empty() ? "" : " " + c.target)
      << "]  holds=" << (c.holds ? "yes" : "no") << " expected=" << (c.expected ? "pass" : "fail") << "  " << t << "\n";
    if (!c.error.empty()) s << "      error: " << c.error << "\n";
    const std::size_t shown = std::min<std::size_t>(c.witnesses.size(), 5);
    for (std::size_t i = 0; i < shown; ++i) {
      const auto& w = c.witnesses[i];
      s << "      witness: " << w.kind;
      if (!w.point.empty()) s << " at " << point_text(w.point, c.coordinates);
      if (!w.indices.empty()) {
        s << " indices";
        for (int k : w.indices) s << " " << k;
      }
      s << " value " << w.value << "\n";
    }
    if (c.witnesses.size() > shown) s << "      (" << c.witnesses.size() - shown << " more witnesses)\n";
  }
  const std::size_t passed = r.passed();
  s << passed << "/" << r.results.size() << " checks passed\n";
  return s.str();
}

}  // namespace omni
