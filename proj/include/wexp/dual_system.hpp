// Excluded index sets A ⊂ Z with their frequency map n ↦ λ_n, the dual
// coefficient tables a_{n,j} solving the power-moment systems, the functions
// f_n built from them, the polynomial form of a_{n,j} in λ_n, annihilator
// witnesses, and closed-form biorthogonality checks for the trigonometric
// realization λ_n = 2πn.

#pragma once

#include <functional>
#include <map>
#include <optional>
#include <ostream>

#include "wexp/moment.hpp"
#include "wexp/trig_polynomial.hpp"
#include "wexp/vandermonde.hpp"

namespace wexp {

/// n ↦ λ_n. The built-in trigonometric map is λ_n = 2πn; custom maps must be
/// strictly increasing over Z (hence injective), which is the caller's
/// responsibility to guarantee.
class FrequencyMap {
 public:
  static FrequencyMap trigonometric() {
    return FrequencyMap([](Index n) { return two_pi * static_cast<Real>(n); }, true);
  }
  static FrequencyMap custom(std::function<Real(Index)> f) {
    if (!f) throw std::invalid_argument("FrequencyMap: null function");
    return FrequencyMap(std::move(f), false);
  }
  Real operator()(Index n) const { return fn_(n); }
  bool is_trigonometric() const { return trig_; }

 private:
  FrequencyMap(std::function<Real(Index)> f, bool trig) : fn_(std::move(f)), trig_(trig) {}
  std::function<Real(Index)> fn_;
  bool trig_;
};

/// The excluded set A (M = |A| ≥ 1 distinct integers) with its frequency map
/// and the sorted node set Λ₁ < … < Λ_M of excluded frequencies.
class ExclusionSet {
 public:
  explicit ExclusionSet(std::vector<Index> indices,
                        FrequencyMap map = FrequencyMap::trigonometric());

  int cardinality() const { return static_cast<int>(indices_.size()); }
  const std::vector<Index>& indices() const { return indices_; }
  bool contains(Index n) const {
    return std::binary_search(indices_.begin(), indices_.end(), n);
  }
  Real lambda(Index n) const { return map_(n); }
  const FrequencyMap& frequency_map() const { return map_; }
  const NodeSet& lambda_nodes() const { return nodes_; }
  /// 0-based position of λ_m within the sorted node list, for m ∈ A.
  int sorted_position(Index m) const;

 private:
  std::vector<Index> indices_;  // sorted ascending
  FrequencyMap map_;
  NodeSet nodes_;
};

enum class Arithmetic { floating, exact };

/// a_{n,j} for n across a finite window (rows with n ∈ A are skipped). Float
/// rows always present; exact rows additionally on the exact route, which
/// requires the trigonometric map (scaling rows of the system by (2π)^{-k}
/// turns it into the same system on the integer nodes A with x = n).
class DualCoefficientTable {
 public:
  const ExclusionSet& exclusion() const { return exclusion_; }
  IndexWindow window() const { return window_; }
  Arithmetic arithmetic() const { return arithmetic_; }

  bool has_row(Index n) const { return rows_.count(n) != 0; }
  const VectorXr& row(Index n) const { return at(n).a; }
  const VectorXq& exact_row(Index n) const;
  Real residual(Index n) const { return at(n).residual; }
  bool conditioning_warning(Index n) const { return at(n).warning; }
  std::vector<Index> row_indices() const;

  /// CSV: header n,j,re_a,im_a,arithmetic,exact; exact column holds "p/q" on
  /// the exact route and stays empty otherwise.
  void write_csv(std::ostream& os) const;

 private:
  friend DualCoefficientTable dual_coefficients(const ExclusionSet&, IndexWindow, Arithmetic);
  struct Row {
    VectorXr a;
    VectorXq a_exact;
    Real residual = 0;
    bool warning = false;
  };
  const Row& at(Index n) const;

  DualCoefficientTable(ExclusionSet e, IndexWindow w, Arithmetic ar)
      : exclusion_(std::move(e)), window_(w), arithmetic_(ar) {}
  ExclusionSet exclusion_;
  IndexWindow window_;
  Arithmetic arithmetic_;
  std::map<Index, Row> rows_;
};

DualCoefficientTable dual_coefficients(const ExclusionSet& exclusion, IndexWindow window,
                                       Arithmetic arithmetic = Arithmetic::floating);

/// f_n = e^{iλ_n t} + Σ_j a_{n,j} e^{iΛ_j t}; throws std::out_of_range for
/// n ∈ A or n outside the table window.
TrigPolynomial build_f_n(const DualCoefficientTable& table, Index n);
RationalTrigPolynomial build_f_n_exact(const DualCoefficientTable& table, Index n);

/// Coefficients of a_{n,j} as a polynomial in λ_n:
/// a_{n,j} = Σ_{k=1..M} c(j,k)·(−λ_n)^{k−1}, with c(j,M) ≠ 0 for every j.
struct PolynomialForm {
  MatrixXr c;  // (j−1, k−1) entry stores c_{j,k}
  bool leading_nonzero = false;
  /// Exact coefficients on the integer-node grid (trigonometric map only):
  /// a_{n,j} = Σ_k ĉ(j,k)·(−n)^{k−1}, so c_{j,k} = ĉ_{j,k}/(2π)^{k−1}.
  std::optional<MatrixXq> c_exact_scaled;
};

PolynomialForm polynomial_form(const ExclusionSet& exclusion);

/// A nonzero combination H on the excluded frequencies vanishing at 0 to
/// order exactly M−1 (coefficients h_j ∝ 1/Π_{i≠j}(Λ_j−Λ_i), normalized so
/// the first coefficient is 1), together with the L² norm of h = H/t^α,
/// which is finite exactly when α < M − 1/2.
struct AnnihilatorWitness {
  TrigPolynomial H;
  std::optional<RationalTrigPolynomial> H_exact;
  int vanish_order = 0;
  Real alpha = 0;
  Real l2_norm_of_h = 0;  // +inf when the norm diverges
};

AnnihilatorWitness annihilator_witness(const ExclusionSet& exclusion, Real alpha,
                                       const ToleranceConfig& cfg = {});

/// H alone (no norm probe); shared by the witness and the diagnostics probes.
TrigPolynomial annihilator_polynomial(const ExclusionSet& exclusion);
std::optional<RationalTrigPolynomial> annihilator_polynomial_exact(const ExclusionSet& exclusion);

/// ⟨f_n/t^α, t^α e^{2πimt}⟩ = ∫₀¹ f_n(t) e^{−2πimt} dt via the closed form
/// ∫₀¹ e^{iθt} dt = (e^{iθ}−1)/(iθ); equals δ_{nm} up to roundoff. Requires
/// the trigonometric map (general r_m has no closed form) and n, m ∉ A.
Complex biorthogonality_inner_product(const ExclusionSet& exclusion, Index n, Index m);

/// ∫_lo^hi |P(t)|² t^{−2α} dt for a finite exponential sum P; the workhorse
/// behind the divergence probes and witness norms. Deep segments (hi·max|μ| ≤
/// 1/2) are evaluated through the expansion of P at 0 — P vanishes there to
/// high order, which the term-pair kernel expansion cannot resolve in
/// floating point. The rational overload feeds that expansion exact
/// derivative sums and is the one the trigonometric probes use.
Real weighted_square_segment(const TrigPolynomial& p, Real alpha, Real lo, Real hi,
                             const ToleranceConfig& cfg = {});
Real weighted_square_segment(const RationalTrigPolynomial& p, Real alpha, Real lo, Real hi,
                             const ToleranceConfig& cfg = {});

}  // namespace wexp
