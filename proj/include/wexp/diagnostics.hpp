// Quantitative verdicts for weighted systems {t^α e^{iλ_n t}}_{n∈Z\A}: the
// exactness-window classifier, ε-divergence probes for minimality and
// completeness, Gram-matrix lower-bound trends, coefficient growth fits, and
// the expansion-coefficient obstruction for the trigonometric case.

#pragma once

#include "wexp/dual_system.hpp"

namespace wexp {

struct WeightedSystemSpec {
  Real alpha;
  ExclusionSet exclusion;

  WeightedSystemSpec(Real a, ExclusionSet e) : alpha(a), exclusion(std::move(e)) {
    if (!(alpha > 0)) throw std::domain_error("WeightedSystemSpec: alpha must be positive");
  }
};

enum class Regime { Exact, MinimalNotComplete, CompleteNotMinimal };

/// Exact on [M−1/2, M+1/2): the left endpoint belongs to the window, the
/// right one does not.
struct ClassifierVerdict {
  Regime regime;
  Real window_lo;
  Real window_hi;
};

ClassifierVerdict classify(Real alpha, int m);

const char* regime_name(Regime r);

// ---------------------------------------------------------------------------

enum class ProbeKind {
  minimality_divergence,
  completeness_witness_norm,
  frame_lower_bound,
  schauder_obstruction
};

/// A diagnostic series over an ε grid, a truncation grid, or an |n| grid.
/// For the ε probes, fitted_exponent is the log-log slope of the increments
/// ∫_{ε/r}^{ε}: the series has a finite limit iff that slope is positive.
struct ProbeSeries {
  ProbeKind kind;
  std::vector<Real> abscissae;
  std::vector<Real> values;
  std::optional<Real> fitted_exponent;
  std::string note;
};

/// Geometric grid 2^{-4}, 2^{-5}, …, 2^{-20} (ratio 1/2, 17 points).
std::vector<Real> default_eps_grid();

/// Increment-ratio test: slope > 0.1 counts as a finite limit (the
/// logarithmic boundary cases sit at slope 0 and are classified divergent).
bool probe_has_finite_limit(const ProbeSeries& series);

/// Limit estimate for a convergent ε probe (last value + geometric tail).
Real probe_limit_estimate(const ProbeSeries& series);

/// ∫_ε¹ |f_n(t)|² t^{−2α} dt over the ε grid; converges iff 2M−2α > −1, and
/// diverges with ε-exponent 2M−2α+1 otherwise.
ProbeSeries minimality_divergence_probe(const WeightedSystemSpec& spec, Index n,
                                        const std::vector<Real>& eps_grid,
                                        const ToleranceConfig& cfg = {});

/// ∫_ε¹ |H(t)|² t^{−2α} dt for the annihilator combination H; converges iff
/// α < M−1/2, diverges with exponent 2(M−1)−2α+1 otherwise.
ProbeSeries completeness_witness_probe(const WeightedSystemSpec& spec,
                                       const std::vector<Real>& eps_grid,
                                       const ToleranceConfig& cfg = {});

/// Smallest eigenvalue of the weighted Gram matrix at each truncation N.
ProbeSeries frame_lower_bound_probe(const WeightedSystemSpec& spec,
                                    const std::vector<int>& n_grid,
                                    const ToleranceConfig& cfg = {});

/// |⟨t^α r_m, f_n/t^α⟩|·‖t^α r_n‖ = |a_{n,j(m)}|·(2α+1)^{−1/2} over |n| in
/// the window (trigonometric case, m ∈ A); the series does not decay, which
/// obstructs basis expansions of t^α r_m. Values below the flag threshold are
/// excluded and listed in the note.
ProbeSeries schauder_obstruction_report(const WeightedSystemSpec& spec, Index m,
                                        IndexWindow abs_window,
                                        const ToleranceConfig& cfg = {});

// ---------------------------------------------------------------------------

/// Hermitian Gram matrix G_{nm} = I(2α, 2π(n−m)) over {|n| ≤ N} \ A.
struct GramMatrix {
  int truncation = 0;
  std::vector<Index> index;
  MatrixXc entries;
  std::string structure_tag = "Hermitian-Toeplitz-with-deletions";
};

GramMatrix build_gram(const WeightedSystemSpec& spec, int truncation,
                      const ToleranceConfig& cfg = {});
Real smallest_eigenvalue(const GramMatrix& gram);

// ---------------------------------------------------------------------------

/// Least-squares slope of log|a_{n,j}| against log|λ_n| over a tail of the
/// table, plus the largest δ with δ·|λ_n|^{M−1} ≤ |a_{n,j}| there.
struct GrowthFit {
  int j = 1;  // column, 1-based
  std::vector<std::pair<Real, Real>> samples;  // (|λ_n|, |a_{n,j}|)
  Real fitted_slope = 0;
  Real delta_estimate = 0;
  std::vector<Index> flagged;  // rows excluded for |a| = 0
};

/// tail is a window on |n|; requires tail.lo ≥ max(1, 2·max|A|).
GrowthFit growth_fit(const DualCoefficientTable& table, int j, IndexWindow tail);

/// ‖t^α e^{2πint}‖_{L²(0,1)} = (2α+1)^{−1/2}, independent of n.
Real weighted_norm(Real alpha, Index n);

}  // namespace wexp
