// Oscillatory moment integrals I(β,θ) = ∫₀¹ t^β e^{iθt} dt, the kernel of every
// weighted inner product in the library, plus the truncated-domain variant
// ∫_ε¹ t^β e^{iθt} dt used by the divergence probes.

#pragma once

#include "wexp/types.hpp"

namespace wexp {

enum class MomentMethod { series, recurrence, quadrature };

/// A computed value of I(β,θ) together with the route that produced it and an
/// absolute error estimate (series remainder bound, recurrence error
/// propagation, or quadrature estimate).
struct MomentIntegralValue {
  Real beta = 0;
  Real theta = 0;
  Complex value{0, 0};
  MomentMethod method = MomentMethod::series;
  Real abs_error_estimate = 0;
};

/// I(β,θ) for β > −1. Method selection: exact value at θ = 0, power series for
/// |θ| ≤ 30, integration-by-parts recurrence for larger |θ| while β/|θ| stays
/// below 1, oscillation-aware quadrature otherwise.
MomentIntegralValue moment_integral(Real beta, Real theta, const ToleranceConfig& cfg = {});

// The three evaluation routes, each usable over the whole domain β > −1.
// moment_integral dispatches among them; the test suites cross-validate them
// against one another (quadrature shares no machinery with the other two).
MomentIntegralValue moment_integral_series(Real beta, Real theta, const ToleranceConfig& cfg = {});
MomentIntegralValue moment_integral_recurrence(Real beta, Real theta,
                                               const ToleranceConfig& cfg = {});
MomentIntegralValue moment_integral_quadrature(Real beta, Real theta,
                                               const ToleranceConfig& cfg = {});

/// ∫_ε¹ t^β e^{iθt} dt for 0 < ε < 1. Any real β is admissible since the
/// origin is excluded. Accuracy target: abs_tol + rel_tol·|value|.
Complex moment_integral_tail(Real beta, Real theta, Real eps, const ToleranceConfig& cfg = {});

/// ∫_lo^hi t^β e^{iθt} dt for 0 < lo ≤ hi ≤ 1, by the same panel quadrature.
Complex moment_integral_segment(Real beta, Real theta, Real lo, Real hi,
                                const ToleranceConfig& cfg = {});

}  // namespace wexp
