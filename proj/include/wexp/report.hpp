// Versioned JSON report documents and RFC-4180 CSV emission for the CLI.

#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "wexp/diagnostics.hpp"

namespace wexp {

using Json = nlohmann::ordered_json;

inline constexpr const char* report_schema_version = "1.0";
inline constexpr const char* tool_name = "wexp";
inline constexpr const char* tool_version = "1.0.0";

/// %.17g — round-trips doubles and is byte-stable across runs.
std::string format_real(Real v);

std::string iso8601_utc_now();

/// Top-level document: schema_version, command, config echo, empty results,
/// provenance (tool, version, timestamp).
Json report_skeleton(const std::string& command, Json config_echo);

Json verdict_json(const ClassifierVerdict& v);
Json probe_series_json(const ProbeSeries& s);
Json growth_fit_json(const GrowthFit& f);

/// One CSV row; fields containing separators or quotes get quoted.
void write_csv_row(std::ostream& os, const std::vector<std::string>& fields);

void probe_series_csv(std::ostream& os, const ProbeSeries& s);  // abscissa,value
void growth_fit_csv(std::ostream& os, const GrowthFit& f);      // abs_lambda,abs_a

/// Structural check against the published schema for schema_version 1.0
/// (docs/report-schema-1.0.json). Returns false and fills `why` on failure.
bool validate_report(const Json& report, std::string* why = nullptr);

}  // namespace wexp
