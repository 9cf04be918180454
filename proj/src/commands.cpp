#include "wexp/commands.hpp"

#include <cmath>
#include <sstream>

#include "wexp/acceptance.hpp"

namespace wexp {
namespace {

constexpr Real biorthogonality_tolerance = 1e-10;

ExclusionSet exclusion_from(const RunConfig& cfg) {
  if (cfg.exclude.empty())
    throw std::invalid_argument(cfg.command + ": --exclude must list at least one index");
  return ExclusionSet(cfg.exclude);
}

Index max_abs_exclude(const std::vector<Index>& ex) {
  Index m = 0;
  for (Index i : ex) m = std::max(m, std::abs(i));
  return m;
}

/// Smallest-|n| index outside A (ties resolved toward positive n).
Index first_free_index(const ExclusionSet& ex) {
  for (Index a = 0;; ++a) {
    if (!ex.contains(a)) return a;
    if (a > 0 && !ex.contains(-a)) return -a;
  }
}

}  // namespace

Json RunConfig::echo() const {
  Json j;
  j["command"] = command;
  if (alpha) j["alpha"] = *alpha;
  if (m) j["m"] = *m;
  if (!exclude.empty()) j["exclude"] = exclude;
  if (window) j["window"] = *window;
  if (n_max) j["n_max"] = *n_max;
  j["exact"] = exact;
  if (alpha_grid) j["alpha_grid"] = *alpha_grid;
  if (!probes.empty()) j["probes"] = probes;
  j["seed"] = seed;
  j["format"] = format;
  j["tolerances"] = {{"abs_tol", tol.abs_tol},
                     {"rel_tol", tol.rel_tol},
                     {"series_terms_max", tol.series_terms_max},
                     {"quadrature_subdivision_max", tol.quadrature_subdivision_max}};
  return j;
}

std::vector<Real> parse_alpha_grid(const std::string& spec) {
  std::istringstream ss(spec);
  Real lo, hi, step;
  char c1, c2;
  if (!(ss >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || !ss.eof())
    throw std::invalid_argument("alpha grid: expected lo:hi:step");
  if (!(step > 0) || hi < lo) throw std::invalid_argument("alpha grid: need step > 0 and hi >= lo");
  std::vector<Real> grid;
  for (Real a = lo; a <= hi + 1e-12; a += step) grid.push_back(a);
  if (grid.empty() || !(grid.front() > 0))
    throw std::invalid_argument("alpha grid: values must be positive");
  return grid;
}

// ---------------------------------------------------------------------------

CommandOutcome cmd_classify(const RunConfig& cfg) {
  if (!cfg.alpha) throw std::invalid_argument("classify: --alpha is required");
  int m = 0;
  if (cfg.m)
    m = *cfg.m;
  else if (!cfg.exclude.empty())
    m = ExclusionSet(cfg.exclude).cardinality();
  else
    throw std::invalid_argument("classify: give --m or --exclude");

  CommandOutcome out;
  out.report = report_skeleton("classify", cfg.echo());
  const auto verdict = classify(*cfg.alpha, m);
  out.report["results"] = {{"alpha", *cfg.alpha}, {"m", m}, {"verdict", verdict_json(verdict)}};
  return out;
}

CommandOutcome cmd_coeffs(const RunConfig& cfg) {
  const auto excl = exclusion_from(cfg);
  if (!cfg.window) throw std::invalid_argument("coeffs: --window is required");
  const Index w = *cfg.window;
  if (w < max_abs_exclude(cfg.exclude))
    throw std::invalid_argument("coeffs: window must reach max|exclude|");
  if (2 * w + 1 <= static_cast<Index>(cfg.exclude.size()) && w <= max_abs_exclude(cfg.exclude))
    throw std::invalid_argument("coeffs: window is empty after exclusion");

  const auto table = dual_coefficients(excl, IndexWindow::symmetric(w),
                                       cfg.exact ? Arithmetic::exact : Arithmetic::floating);
  if (table.row_indices().empty())
    throw std::invalid_argument("coeffs: window is empty after exclusion");

  Real max_residual = 0;
  int warnings = 0;
  for (Index n : table.row_indices()) {
    max_residual = std::max(max_residual, table.residual(n));
    warnings += table.conditioning_warning(n) ? 1 : 0;
  }

  CommandOutcome out;
  out.report = report_skeleton("coeffs", cfg.echo());
  out.report["results"] = {{"m", excl.cardinality()},
                           {"rows", table.row_indices().size()},
                           {"arithmetic", cfg.exact ? "exact" : "float"},
                           {"max_residual", max_residual},
                           {"conditioning_warnings", warnings}};
  std::ostringstream csv;
  table.write_csv(csv);
  out.csv_tables.emplace_back("coeffs", csv.str());
  return out;
}

CommandOutcome cmd_verify(const RunConfig& cfg) {
  const auto excl = exclusion_from(cfg);
  if (!cfg.window) throw std::invalid_argument("verify: --window is required");
  const Index w = *cfg.window;
  if (w < max_abs_exclude(cfg.exclude))
    throw std::invalid_argument("verify: window must reach max|exclude|");
  const int m = excl.cardinality();

  const auto table = dual_coefficients(excl, IndexWindow::symmetric(w),
                                       cfg.exact ? Arithmetic::exact : Arithmetic::floating);
  std::vector<Index> order_failures;
  for (Index n : table.row_indices()) {
    const int order = cfg.exact ? vanishing_order(build_f_n_exact(table, n), m + 1)
                                : vanishing_order(build_f_n(table, n), m + 1);
    if (order != m) order_failures.push_back(n);
  }

  // biorthogonality sweep over the same window (closed-form Kronecker path)
  Real max_dev = 0;
  const Index bw = cfg.n_max ? std::min<Index>(*cfg.n_max, w) : w;
  for (Index n = -bw; n <= bw; ++n) {
    if (excl.contains(n)) continue;
    for (Index mm = -bw; mm <= bw; ++mm) {
      if (excl.contains(mm)) continue;
      const Complex ip = biorthogonality_inner_product(excl, n, mm);
      const Real expect = (n == mm) ? 1.0 : 0.0;
      max_dev = std::max(max_dev, std::abs(ip - Complex(expect, 0)));
    }
  }

  const bool pass = order_failures.empty() && max_dev <= biorthogonality_tolerance;
  CommandOutcome out;
  out.report = report_skeleton("verify", cfg.echo());
  out.report["results"] = {{"m", m},
                           {"expected_vanishing_order", m},
                           {"rows_checked", table.row_indices().size()},
                           {"order_failures", order_failures},
                           {"max_biorthogonality_deviation", max_dev},
                           {"biorthogonality_tolerance", biorthogonality_tolerance},
                           {"pass", pass}};
  out.exit_code = pass ? 0 : 1;
  return out;
}

CommandOutcome cmd_scan(const RunConfig& cfg) {
  const auto excl = exclusion_from(cfg);
  const int m = excl.cardinality();
  std::vector<Real> grid;
  if (cfg.alpha_grid)
    grid = parse_alpha_grid(*cfg.alpha_grid);
  else
    for (Real a = m - 1.5; a <= m + 1.5 + 1e-12; a += 0.25)
      if (a > 0) grid.push_back(a);

  std::vector<std::string> probes = cfg.probes;
  if (probes.empty()) probes = {"minimality", "witness"};
  for (const auto& p : probes)
    if (p != "minimality" && p != "witness" && p != "frame")
      throw std::invalid_argument("scan: unknown probe '" + p + "'");

  const auto eps = default_eps_grid();
  const Index probe_n = first_free_index(excl);
  bool all_consistent = true;

  Json rows = Json::array();
  std::ostringstream csv;
  write_csv_row(csv, {"alpha", "probe", "abscissa", "value"});

  for (Real a : grid) {
    const auto verdict = classify(a, m);
    Json row;
    row["alpha"] = a;
    row["verdict"] = verdict_json(verdict);
    WeightedSystemSpec spec(a, excl);

    std::optional<bool> minimal_probe, complete_probe;
    for (const auto& p : probes) {
      ProbeSeries series{};
      if (p == "minimality") {
        series = minimality_divergence_probe(spec, probe_n, eps, cfg.tol);
        minimal_probe = probe_has_finite_limit(series);
      } else if (p == "witness") {
        series = completeness_witness_probe(spec, eps, cfg.tol);
        complete_probe = !probe_has_finite_limit(series);
      } else {
        series = frame_lower_bound_probe(spec, {16, 32, 64, 128}, cfg.tol);
      }
      row["probes"][p] = probe_series_json(series);
      for (std::size_t i = 0; i < series.abscissae.size(); ++i)
        write_csv_row(csv, {format_real(a), p, format_real(series.abscissae[i]),
                            format_real(series.values[i])});
    }

    // probe-implied regime must match the classifier wherever probes ran
    bool consistent = true;
    if (minimal_probe)
      consistent &= (*minimal_probe == (verdict.regime != Regime::CompleteNotMinimal));
    if (complete_probe)
      consistent &= (*complete_probe == (verdict.regime != Regime::MinimalNotComplete));
    row["consistent_with_classifier"] = consistent;
    all_consistent &= consistent;
    rows.push_back(std::move(row));
  }

  CommandOutcome out;
  out.report = report_skeleton("scan", cfg.echo());
  out.report["results"] = {{"m", m}, {"probe_index", probe_n}, {"rows", rows},
                           {"all_consistent", all_consistent}};
  out.csv_tables.emplace_back("scan", csv.str());
  out.exit_code = all_consistent ? 0 : 1;
  return out;
}

CommandOutcome cmd_growth(const RunConfig& cfg) {
  const auto excl = exclusion_from(cfg);
  const int m = excl.cardinality();
  if (!cfg.n_max) throw std::invalid_argument("growth: --n-max is required");
  const Index n_max = *cfg.n_max;
  if (n_max < 64) throw std::invalid_argument("growth: --n-max must be at least 64");
  const Real alpha = cfg.alpha ? *cfg.alpha : static_cast<Real>(m) - 0.5;

  const auto table = dual_coefficients(excl, IndexWindow::symmetric(n_max));
  const Index tail_lo = std::max<Index>(64, 2 * max_abs_exclude(cfg.exclude));
  const IndexWindow tail(tail_lo, n_max);

  bool pass = true;
  Json fits = Json::array();
  std::ostringstream growth_csv;
  write_csv_row(growth_csv, {"j", "abs_lambda", "abs_a"});
  for (int j = 1; j <= m; ++j) {
    const GrowthFit fit = growth_fit(table, j, tail);
    fits.push_back(growth_fit_json(fit));
    for (const auto& [lam, a] : fit.samples)
      write_csv_row(growth_csv, {std::to_string(j), format_real(lam), format_real(a)});
    if (fit.flagged.size() * 2 > fit.samples.size()) {
      pass = false;
      fits.back()["error"] = "more than half of the tail was flagged";
    }
  }

  WeightedSystemSpec spec(alpha, excl);
  const IndexWindow obs_window(4, std::min<Index>(512, n_max));
  Json obstructions = Json::array();
  std::ostringstream obs_csv;
  write_csv_row(obs_csv, {"m", "abs_n", "value"});
  for (Index mm : excl.indices()) {
    const ProbeSeries s = schauder_obstruction_report(spec, mm, obs_window, cfg.tol);
    // non-decay check: the outer half of the window must not dip below the
    // inner half
    Real inner = std::numeric_limits<Real>::infinity();
    Real outer = std::numeric_limits<Real>::infinity();
    const Real mid = 0.5 * static_cast<Real>(obs_window.hi);
    for (std::size_t i = 0; i < s.abscissae.size(); ++i) {
      if (s.abscissae[i] <= mid) inner = std::min(inner, s.values[i]);
      if (s.abscissae[i] >= mid) outer = std::min(outer, s.values[i]);
    }
    const bool non_decay = outer >= inner * (1.0 - 1e-9);
    Json entry;
    entry["m"] = mm;
    entry["weighted_norm"] = weighted_norm(alpha, mm);
    entry["inner_half_min"] = inner;
    entry["outer_half_min"] = outer;
    entry["non_decay"] = non_decay;
    if (!s.note.empty()) entry["note"] = s.note;
    obstructions.push_back(std::move(entry));
    for (std::size_t i = 0; i < s.abscissae.size(); ++i)
      write_csv_row(obs_csv, {std::to_string(mm), format_real(s.abscissae[i]),
                              format_real(s.values[i])});
  }

  CommandOutcome out;
  out.report = report_skeleton("growth", cfg.echo());
  out.report["results"] = {{"m", m},
                           {"alpha", alpha},
                           {"tail", {{"lo", tail.lo}, {"hi", tail.hi}}},
                           {"fits", fits},
                           {"obstruction", obstructions}};
  out.csv_tables.emplace_back("growth", growth_csv.str());
  out.csv_tables.emplace_back("obstruction", obs_csv.str());
  out.exit_code = pass ? 0 : 1;
  return out;
}

CommandOutcome cmd_report(const RunConfig& cfg) {
  std::ostringstream log;
  const auto results = run_acceptance_suite(cfg.seed, log);
  CommandOutcome out;
  out.report = report_skeleton("report", cfg.echo());
  out.report["results"] = acceptance_json(results);
  out.report["results"]["log"] = log.str();
  out.exit_code = all_passed(results) ? 0 : 1;
  return out;
}

CommandOutcome run_command(const RunConfig& cfg) {
  if (cfg.command == "classify") return cmd_classify(cfg);
  if (cfg.command == "coeffs") return cmd_coeffs(cfg);
  if (cfg.command == "verify") return cmd_verify(cfg);
  if (cfg.command == "scan") return cmd_scan(cfg);
  if (cfg.command == "growth") return cmd_growth(cfg);
  if (cfg.command == "report") return cmd_report(cfg);
  throw std::invalid_argument("unknown command: " + cfg.command);
}

}  // namespace wexp
