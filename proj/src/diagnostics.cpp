#include "wexp/diagnostics.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace wexp {
namespace {

Real least_squares_slope(const std::vector<Real>& xs, const std::vector<Real>& ys) {
  const std::size_t n = xs.size();
  Real sx = 0, sy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const Real mx = sx / static_cast<Real>(n), my = sy / static_cast<Real>(n);
  Real num = 0, den = 0;
  for (std::size_t i = 0; i < n; ++i) {
    num += (xs[i] - mx) * (ys[i] - my);
    den += (xs[i] - mx) * (xs[i] - mx);
  }
  return num / den;
}

void require_eps_grid(const std::vector<Real>& grid) {
  if (grid.size() < 6) throw std::invalid_argument("eps grid: need at least 6 points");
  for (std::size_t i = 0; i < grid.size(); ++i)
    if (!(grid[i] > 0) || !(grid[i] < 1))
      throw std::invalid_argument("eps grid: points must lie in (0,1)");
  const Real rified = grid[1] / grid[0];
  if (!(rified < 1)) throw std::invalid_argument("eps grid: must decrease geometrically");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const Real r = grid[i] / grid[i - 1];
    if (std::abs(r - rified) > 1e-9)
      throw std::invalid_argument("eps grid: must be geometric");
  }
}

// Shared ε-probe core: cumulative ∫_ε¹ |P|² t^{−2α} dt over the grid, built
// from per-interval increments; the exponent is fitted on the last 8 of them.
ProbeSeries weighted_square_probe(const std::function<Real(Real, Real)>& segment,
                                  const std::vector<Real>& grid, ProbeKind kind) {
  require_eps_grid(grid);
  ProbeSeries out;
  out.kind = kind;
  out.abscissae = grid;
  out.values.resize(grid.size());

  Real acc = segment(grid[0], 1.0);
  out.values[0] = acc;
  std::vector<Real> diffs;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const Real inc = segment(grid[i], grid[i - 1]);
    acc += inc;
    out.values[i] = acc;
    diffs.push_back(inc);
  }

  // log-log fit of the increments against ε (each increment attributed to its
  // smaller endpoint); nonpositive increments are skipped
  std::vector<Real> xs, ys;
  const std::size_t take = std::min<std::size_t>(8, diffs.size());
  for (std::size_t i = diffs.size() - take; i < diffs.size(); ++i) {
    if (diffs[i] > 0) {
      xs.push_back(std::log(grid[i + 1]));
      ys.push_back(std::log(diffs[i]));
    }
  }
  if (xs.size() >= 3)
    out.fitted_exponent = least_squares_slope(xs, ys);
  else
    out.note = "increments vanished before a slope could be fitted";
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

ClassifierVerdict classify(Real alpha, int m) {
  if (!(alpha > 0)) throw std::domain_error("classify: alpha must be positive");
  if (m < 1) throw std::domain_error("classify: M must be a positive integer");
  ClassifierVerdict v;
  v.window_lo = static_cast<Real>(m) - 0.5;
  v.window_hi = static_cast<Real>(m) + 0.5;
  if (alpha < v.window_lo)
    v.regime = Regime::MinimalNotComplete;
  else if (alpha < v.window_hi)
    v.regime = Regime::Exact;
  else
    v.regime = Regime::CompleteNotMinimal;
  return v;
}

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::Exact: return "Exact";
    case Regime::MinimalNotComplete: return "MinimalNotComplete";
    case Regime::CompleteNotMinimal: return "CompleteNotMinimal";
  }
  return "?";
}

std::vector<Real> default_eps_grid() {
  std::vector<Real> grid;
  for (int k = 4; k <= 20; ++k) grid.push_back(std::exp2(-k));
  return grid;
}

bool probe_has_finite_limit(const ProbeSeries& series) {
  return series.fitted_exponent.has_value() && *series.fitted_exponent > 0.1;
}

Real probe_limit_estimate(const ProbeSeries& series) {
  if (!probe_has_finite_limit(series))
    throw std::domain_error("probe_limit_estimate: series has no finite limit");
  const std::size_t n = series.values.size();
  const Real d_last = series.values[n - 1] - series.values[n - 2];
  const Real ratio = std::exp2(-*series.fitted_exponent);
  return series.values[n - 1] + std::max(0.0, d_last) * ratio / (1.0 - ratio);
}

ProbeSeries minimality_divergence_probe(const WeightedSystemSpec& spec, Index n,
                                        const std::vector<Real>& eps_grid,
                                        const ToleranceConfig& cfg) {
  if (spec.exclusion.contains(n))
    throw std::invalid_argument("minimality_divergence_probe: n must lie outside A");
  const Index w = std::max({std::abs(n), std::abs(spec.exclusion.indices().front()),
                            std::abs(spec.exclusion.indices().back())}) +
                  1;
  const Real alpha = spec.alpha;
  if (spec.exclusion.frequency_map().is_trigonometric()) {
    // exact coefficients keep the expansion of f_n at 0 clean below order M
    const auto table = dual_coefficients(spec.exclusion, IndexWindow(-w, w), Arithmetic::exact);
    const RationalTrigPolynomial f = build_f_n_exact(table, n);
    return weighted_square_probe(
        [&](Real lo, Real hi) { return weighted_square_segment(f, alpha, lo, hi, cfg); },
        eps_grid, ProbeKind::minimality_divergence);
  }
  const auto table = dual_coefficients(spec.exclusion, IndexWindow(-w, w));
  const TrigPolynomial f = build_f_n(table, n);
  return weighted_square_probe(
      [&](Real lo, Real hi) { return weighted_square_segment(f, alpha, lo, hi, cfg); },
      eps_grid, ProbeKind::minimality_divergence);
}

ProbeSeries completeness_witness_probe(const WeightedSystemSpec& spec,
                                       const std::vector<Real>& eps_grid,
                                       const ToleranceConfig& cfg) {
  const Real alpha = spec.alpha;
  if (const auto h = annihilator_polynomial_exact(spec.exclusion)) {
    return weighted_square_probe(
        [&](Real lo, Real hi) { return weighted_square_segment(*h, alpha, lo, hi, cfg); },
        eps_grid, ProbeKind::completeness_witness_norm);
  }
  const TrigPolynomial h = annihilator_polynomial(spec.exclusion);
  return weighted_square_probe(
      [&](Real lo, Real hi) { return weighted_square_segment(h, alpha, lo, hi, cfg); },
      eps_grid, ProbeKind::completeness_witness_norm);
}

// ---------------------------------------------------------------------------

GramMatrix build_gram(const WeightedSystemSpec& spec, int truncation,
                      const ToleranceConfig& cfg) {
  if (truncation < 1) throw std::invalid_argument("build_gram: truncation must be >= 1");
  if (!spec.exclusion.frequency_map().is_trigonometric())
    throw UnsupportedRealization("build_gram: trigonometric realization only");
  GramMatrix g;
  g.truncation = truncation;
  for (Index n = -truncation; n <= truncation; ++n)
    if (!spec.exclusion.contains(n)) g.index.push_back(n);

  // Toeplitz reduction: one kernel value per index difference
  std::vector<Complex> kernel(static_cast<std::size_t>(2 * truncation) + 1);
  for (int d = 0; d <= 2 * truncation; ++d)
    kernel[static_cast<std::size_t>(d)] =
        moment_integral(2.0 * spec.alpha, two_pi * d, cfg).value;

  const auto sz = static_cast<Eigen::Index>(g.index.size());
  g.entries.resize(sz, sz);
  for (Eigen::Index r = 0; r < sz; ++r) {
    for (Eigen::Index c = r; c < sz; ++c) {
      // entry ⟨col, row⟩ = I(2α, 2π(n_c − n_r)); fill the conjugate mirror too
      const Index d = g.index[static_cast<std::size_t>(c)] - g.index[static_cast<std::size_t>(r)];
      const Complex v = kernel[static_cast<std::size_t>(d)];
      g.entries(r, c) = v;
      g.entries(c, r) = std::conj(v);
    }
  }
  return g;
}

Real smallest_eigenvalue(const GramMatrix& gram) {
  Eigen::SelfAdjointEigenSolver<MatrixXc> solver(gram.entries, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("smallest_eigenvalue: eigensolver failed");
  return solver.eigenvalues()(0);
}

ProbeSeries frame_lower_bound_probe(const WeightedSystemSpec& spec,
                                    const std::vector<int>& n_grid,
                                    const ToleranceConfig& cfg) {
  if (n_grid.empty()) throw std::invalid_argument("frame_lower_bound_probe: empty grid");
  for (std::size_t i = 1; i < n_grid.size(); ++i)
    if (n_grid[i] <= n_grid[i - 1])
      throw std::invalid_argument("frame_lower_bound_probe: grid must increase");

  ProbeSeries out;
  out.kind = ProbeKind::frame_lower_bound;
  const auto verdict = classify(spec.alpha, spec.exclusion.cardinality());
  if (verdict.regime != Regime::Exact)
    out.note = std::string("alpha outside the exactness window (") + regime_name(verdict.regime) +
               "); sigma_min trend is not frame evidence there";
  for (int n : n_grid) {
    out.abscissae.push_back(static_cast<Real>(n));
    out.values.push_back(smallest_eigenvalue(build_gram(spec, n, cfg)));
  }
  std::vector<Real> xs, ys;
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    if (out.values[i] > 0) {
      xs.push_back(std::log(out.abscissae[i]));
      ys.push_back(std::log(out.values[i]));
    }
  }
  if (xs.size() >= 2) out.fitted_exponent = least_squares_slope(xs, ys);
  return out;
}

// ---------------------------------------------------------------------------

GrowthFit growth_fit(const DualCoefficientTable& table, int j, IndexWindow tail) {
  const int m = table.exclusion().cardinality();
  if (j < 1 || j > m) throw std::invalid_argument("growth_fit: column out of range");
  Index max_abs_a = 0;
  for (Index i : table.exclusion().indices()) max_abs_a = std::max(max_abs_a, std::abs(i));
  if (tail.lo < std::max<Index>(1, 2 * max_abs_a))
    throw std::invalid_argument("growth_fit: tail must start at |n| >= max(1, 2·max|A|)");
  if (!table.window().contains(tail.hi) || !table.window().contains(-tail.hi))
    throw std::invalid_argument("growth_fit: tail exceeds the table window");

  GrowthFit fit;
  fit.j = j;
  std::vector<Real> xs, ys;
  Real delta = std::numeric_limits<Real>::infinity();
  for (Index n : table.row_indices()) {
    const Index a = std::abs(n);
    if (a < tail.lo || a > tail.hi) continue;
    const Real lam = std::abs(table.exclusion().lambda(n));
    const Real anj = std::abs(table.row(n)[j - 1]);
    fit.samples.emplace_back(lam, anj);
    if (anj == 0) {
      fit.flagged.push_back(n);
      continue;
    }
    xs.push_back(std::log(lam));
    ys.push_back(std::log(anj));
    const Real ratio = anj / std::pow(lam, static_cast<Real>(m - 1));
    delta = std::min(delta, ratio);
  }
  if (xs.size() < 2) throw std::invalid_argument("growth_fit: not enough usable tail samples");
  fit.fitted_slope = least_squares_slope(xs, ys);
  fit.delta_estimate = delta;
  return fit;
}

Real weighted_norm(Real alpha, Index) {
  if (!(alpha > 0)) throw std::domain_error("weighted_norm: alpha must be positive");
  return 1.0 / std::sqrt(2.0 * alpha + 1.0);
}

ProbeSeries schauder_obstruction_report(const WeightedSystemSpec& spec, Index m,
                                        IndexWindow abs_window, const ToleranceConfig&) {
  if (!spec.exclusion.frequency_map().is_trigonometric())
    throw UnsupportedRealization("schauder_obstruction_report: trigonometric realization only");
  if (!spec.exclusion.contains(m))
    throw std::invalid_argument("schauder_obstruction_report: m must lie in A");
  if (abs_window.lo < 0)
    throw std::invalid_argument("schauder_obstruction_report: window is over |n| >= 0");

  const int j = spec.exclusion.sorted_position(m);
  const auto table =
      dual_coefficients(spec.exclusion, IndexWindow(-abs_window.hi, abs_window.hi));
  const Real norm = weighted_norm(spec.alpha, m);

  ProbeSeries out;
  out.kind = ProbeKind::schauder_obstruction;
  std::ostringstream flags;
  for (Index a = abs_window.lo; a <= abs_window.hi; ++a) {
    Real best = std::numeric_limits<Real>::infinity();
    // ⟨t^α r_m, f_n/t^α⟩ = conj(a_{n,j(m)}); take the smaller magnitude of ±n
    for (const Index n : {a, -a}) {
      if (spec.exclusion.contains(n) || !table.has_row(n)) continue;
      best = std::min(best, std::abs(table.row(n)[j]) * norm);
      if (n == 0) break;
    }
    if (!std::isfinite(best)) continue;  // both signs excluded
    if (best == 0) {
      flags << (flags.tellp() > 0 ? " " : "") << a;
      continue;
    }
    out.abscissae.push_back(static_cast<Real>(a));
    out.values.push_back(best);
  }
  if (flags.tellp() > 0) out.note = "flagged zero coefficients at |n|: " + flags.str();
  return out;
}

}  // namespace wexp
