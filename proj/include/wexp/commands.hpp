// Batch commands behind the CLI: each takes a validated RunConfig, runs the
// library, and returns a report document plus any CSV tables. Exit codes:
// 0 success, 1 verification/consistency failure, 2 usage error, 3 I/O error.

#pragma once

#include <cstdint>
#include <optional>

#include "wexp/report.hpp"

namespace wexp {

struct RunConfig {
  std::string command;
  std::optional<Real> alpha;
  std::optional<int> m;
  std::vector<Index> exclude;
  std::optional<Index> window;
  std::optional<Index> n_max;
  bool exact = false;
  std::optional<std::string> alpha_grid;  // "lo:hi:step"
  std::vector<std::string> probes;        // subset of {minimality, witness, frame}
  std::uint64_t seed = 1;
  std::string out;            // output path stem; empty writes JSON to stdout
  std::string format = "json";  // json | csv | both
  ToleranceConfig tol;

  Json echo() const;
};

struct CommandOutcome {
  Json report;
  // (suffix, content): written to <out>.<suffix>.csv when CSV output is on
  std::vector<std::pair<std::string, std::string>> csv_tables;
  int exit_code = 0;
};

CommandOutcome cmd_classify(const RunConfig& cfg);
CommandOutcome cmd_coeffs(const RunConfig& cfg);
CommandOutcome cmd_verify(const RunConfig& cfg);
CommandOutcome cmd_scan(const RunConfig& cfg);
CommandOutcome cmd_growth(const RunConfig& cfg);
CommandOutcome cmd_report(const RunConfig& cfg);

/// Dispatch by cfg.command; throws std::invalid_argument for unknown names.
CommandOutcome run_command(const RunConfig& cfg);

std::vector<Real> parse_alpha_grid(const std::string& spec);

}  // namespace wexp
