#include "wexp/report.hpp"

#include <cstdio>
#include <ctime>

namespace wexp {

std::string format_real(Real v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string iso8601_utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Json report_skeleton(const std::string& command, Json config_echo) {
  Json doc;
  doc["schema_version"] = report_schema_version;
  doc["command"] = command;
  doc["config"] = std::move(config_echo);
  doc["results"] = Json::object();
  doc["provenance"] = {
      {"tool", tool_name}, {"version", tool_version}, {"timestamp", iso8601_utc_now()}};
  return doc;
}

Json verdict_json(const ClassifierVerdict& v) {
  return Json{{"regime", regime_name(v.regime)},
              {"window", {{"lo", v.window_lo}, {"hi", v.window_hi}, {"lo_included", true},
                          {"hi_included", false}}}};
}

namespace {
const char* probe_kind_name(ProbeKind k) {
  switch (k) {
    case ProbeKind::minimality_divergence: return "minimality_divergence";
    case ProbeKind::completeness_witness_norm: return "completeness_witness_norm";
    case ProbeKind::frame_lower_bound: return "frame_lower_bound";
    case ProbeKind::schauder_obstruction: return "schauder_obstruction";
  }
  return "?";
}
}  // namespace

Json probe_series_json(const ProbeSeries& s) {
  Json out;
  out["kind"] = probe_kind_name(s.kind);
  out["abscissae"] = s.abscissae;
  out["values"] = s.values;
  if (s.fitted_exponent)
    out["fitted_exponent"] = *s.fitted_exponent;
  else
    out["fitted_exponent"] = nullptr;
  if (!s.note.empty()) out["note"] = s.note;
  return out;
}

Json growth_fit_json(const GrowthFit& f) {
  Json out;
  out["j"] = f.j;
  out["fitted_slope"] = f.fitted_slope;
  out["delta_estimate"] = f.delta_estimate;
  out["samples"] = f.samples.size();
  out["flagged"] = f.flagged;
  return out;
}

void write_csv_row(std::ostream& os, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) os << ',';
    const std::string& f = fields[i];
    if (f.find_first_of(",\"\r\n") != std::string::npos) {
      os << '"';
      for (char c : f) {
        if (c == '"') os << '"';
        os << c;
      }
      os << '"';
    } else {
      os << f;
    }
  }
  os << "\r\n";
}

void probe_series_csv(std::ostream& os, const ProbeSeries& s) {
  write_csv_row(os, {"abscissa", "value"});
  for (std::size_t i = 0; i < s.abscissae.size(); ++i)
    write_csv_row(os, {format_real(s.abscissae[i]), format_real(s.values[i])});
}

void growth_fit_csv(std::ostream& os, const GrowthFit& f) {
  write_csv_row(os, {"abs_lambda", "abs_a"});
  for (const auto& [lam, a] : f.samples) write_csv_row(os, {format_real(lam), format_real(a)});
}

bool validate_report(const Json& report, std::string* why) {
  const auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (!report.is_object()) return fail("report must be an object");
  for (const char* key : {"schema_version", "command", "config", "results", "provenance"})
    if (!report.contains(key)) return fail(std::string("missing key: ") + key);
  if (!report["schema_version"].is_string() ||
      report["schema_version"].get<std::string>() != report_schema_version)
    return fail("unsupported schema_version");
  if (!report["command"].is_string()) return fail("command must be a string");
  static const std::vector<std::string> known = {"classify", "coeffs", "verify",
                                                 "scan",     "growth", "report"};
  const auto cmd = report["command"].get<std::string>();
  if (std::find(known.begin(), known.end(), cmd) == known.end())
    return fail("unknown command: " + cmd);
  if (!report["config"].is_object()) return fail("config must be an object");
  if (!report["results"].is_object()) return fail("results must be an object");
  const auto& prov = report["provenance"];
  if (!prov.is_object()) return fail("provenance must be an object");
  for (const char* key : {"tool", "version", "timestamp"})
    if (!prov.contains(key) || !prov[key].is_string())
      return fail(std::string("provenance needs string field: ") + key);
  return true;
}

}  // namespace wexp
