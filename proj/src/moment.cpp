// Evaluation routes for I(β,θ) = ∫₀¹ t^β e^{iθt} dt.
//
// series:     Taylor sum Σ_k (iθ)^k/(k!(β+k+1)) in 128-bit floats for |θ| ≤ 40
//             (the sum cancels down from terms of size ~e^|θ|, which double
//             precision cannot survive past |θ| ≈ 6); for |θ| > 40 the
//             incomplete-gamma form Γ(β₀+1)/(−iθ)^{β₀+1} − ∫₁^∞, with the
//             infinite tail expanded asymptotically, unrolled up to β by exact
//             integration-by-parts coefficients.
// recurrence: I(β,θ) = e^{iθ}/(iθ) − (β/(iθ))·I(β−1,θ) stepped upward from
//             I(frac(β),θ); steps switch to 128-bit floats when the predicted
//             amplification Π max(1, β_k/|θ|) exceeds 1e3.
// quadrature: dyadic panels graded toward t = 0 (head interval handled by a
//             short local expansion with |θ|·a ≤ 1/2), each panel split into
//             phase-≤π subpanels integrated by Gauss–Kronrod 7-15 with the
//             embedded-rule error estimate.

#include "wexp/moment.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace wexp {
namespace {

using Quad = boost::multiprecision::cpp_bin_float_quad;

constexpr Real series_switch = 30.0;  // production: series at or below this |θ|
constexpr Real taylor_limit = 40.0;   // Taylor sum stays below 1e-15 up to here
constexpr Real eps_d = 2.220446049250313e-16;
constexpr Real eps_q = 1.925929944387236e-34;

Complex cis(Real x) { return {std::cos(x), std::sin(x)}; }

void require_domain(Real beta, Real theta) {
  if (!(beta > -1.0)) throw std::domain_error("moment_integral: non-integrable weight (beta <= -1)");
  if (!std::isfinite(theta)) throw std::domain_error("moment_integral: theta must be finite");
}

// ---------------------------------------------------------------------------
// Taylor sum, |θ| ≤ taylor_limit. Real and imaginary parts are the even/odd
// subsequences of (iθ)^k, accumulated as two real alternating series in Quad.
struct QuadComplex {
  Quad re{0}, im{0};
};

QuadComplex taylor_sum_quad(Real beta, Real theta, const ToleranceConfig& cfg, Real* err_out) {
  const Quad b(beta);
  Quad term(1);  // θ^k / k!  (signed)
  Quad re(0), im(0), abs_sum(0);
  int k = 0;
  for (;;) {
    const Quad contrib = term / (b + (k + 1));
    switch (k & 3) {
      case 0: re += contrib; break;
      case 1: im += contrib; break;
      case 2: re -= contrib; break;
      case 3: im -= contrib; break;
    }
    abs_sum += abs(contrib);
    ++k;
    if (k > cfg.series_terms_max)
      throw AccuracyError("moment_integral_series: term budget exhausted",
                          Complex(static_cast<Real>(re), static_cast<Real>(im)), 1.0);
    term *= Quad(theta) / k;
    const Quad next = abs(term) / (b + (k + 1));
    if (k > std::abs(theta) && next < abs_sum * 1e-38 + Quad(1e-320)) {
      // geometric remainder bound: ratio |θ|/(k+1) ≤ 1/2 once k ≥ 2|θ|.
      // The estimate describes the 128-bit value itself; consumers add the
      // double-conversion epsilon after narrowing.
      const Real ratio = std::min(0.5, std::abs(theta) / (k + 1));
      const Real trunc = static_cast<Real>(next) / (1.0 - ratio);
      *err_out = trunc + static_cast<Real>(abs_sum) * (k * eps_q);
      break;
    }
  }
  return {re, im};
}

// ---------------------------------------------------------------------------
// Asymptotic route, θ > taylor_limit (strictly positive; caller conjugates).

// Γ(s)/(−iθ)^s with s = β₀+1 ∈ (0,1]; principal branch gives e^{iπs/2}.
Complex gamma_over_power(Real beta0, Real theta) {
  const Real s = beta0 + 1.0;
  const Real mag = std::exp(std::lgamma(s) - s * std::log(theta));
  return mag * cis(0.5 * M_PI * s);
}

// ∫₁^∞ t^c e^{iθt} dt for c ∈ (−1,0) by the by-parts expansion
// −(e^{iθ}/(iθ))·Σ_k u_k, u_0 = 1, u_k = u_{k−1}(k−1−c)/(iθ); the remainder
// after K terms is bounded by 2|u_K|/θ.
Complex tail_expansion(Real c, Real theta, Real* err_out) {
  const Complex inv_itheta(0.0, -1.0 / theta);
  Complex u(1.0, 0.0), s(0.0, 0.0);
  Real trunc = 2.0 / theta;
  for (int k = 1; k <= 2048; ++k) {
    s += u;
    const Complex next = u * ((k - 1 - c) * inv_itheta);
    trunc = 2.0 * std::abs(next) / theta;
    if (std::abs(next) >= std::abs(u) || std::abs(next) < 1e-22) break;
    u = next;
  }
  *err_out = trunc;
  return -(cis(theta) * inv_itheta) * s;
}

// One upward by-parts step I(c) = e^{iθ}/(iθ) − (c/(iθ))·I(c−1).
Complex up_step(Complex prev, Real c, Real theta) {
  const Complex inv_itheta(0.0, -1.0 / theta);
  return cis(theta) * inv_itheta - c * inv_itheta * prev;
}

Complex asymptotic_eval(Real beta, Real theta, Real* err_out) {
  Real err = 0;
  Complex val;
  Real c;
  int steps;
  if (beta == std::floor(beta)) {
    val = (cis(theta) - 1.0) / Complex(0.0, theta);  // I(0,θ), closed form
    c = 0.0;
    steps = static_cast<int>(beta);
    err = 4.0 * eps_d / theta;
  } else {
    const int m = static_cast<int>(std::floor(beta)) + 1;
    const Real beta0 = beta - m;  // in (−1, 0)
    Real tail_err = 0;
    val = gamma_over_power(beta0, theta) - tail_expansion(beta0, theta, &tail_err);
    c = beta0;
    steps = m;
    err = tail_err + 8.0 * eps_d * std::abs(val);
  }
  for (int k = 0; k < steps; ++k) {
    c += 1.0;
    val = up_step(val, c, theta);
    err = err * (c / theta) + 4.0 * eps_d * (1.0 / theta + std::abs(val));
  }
  *err_out = err;
  return val;
}

// ---------------------------------------------------------------------------
// Gauss–Kronrod 7-15 on one subpanel. Node/weight tables come from
// boost::math; Kronrod abscissae at even positions carry the embedded
// 7-point Gauss rule.
struct PanelSum {
  Complex value{0, 0};
  Real err = 0;      // |K15 − G7| · half-length
  Real abs_sum = 0;  // Σ w|f| · half-length, rounding floor
};

PanelSum gk_panel(Real beta, Real theta, Real lo, Real hi) {
  static const auto& kx = boost::math::quadrature::gauss_kronrod<Real, 15>::abscissa();
  static const auto& kw = boost::math::quadrature::gauss_kronrod<Real, 15>::weights();
  static const auto& gw = boost::math::quadrature::gauss<Real, 7>::weights();
  const Real c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
  const auto f = [beta, theta](Real t) { return std::pow(t, beta) * cis(theta * t); };

  const Complex fc = f(c);
  Complex k15 = kw[0] * fc;
  Complex g7 = gw[0] * fc;
  Real a15 = kw[0] * std::abs(fc);
  for (std::size_t i = 1; i < kx.size(); ++i) {
    const Complex fp = f(c + h * kx[i]);
    const Complex fm = f(c - h * kx[i]);
    k15 += kw[i] * (fp + fm);
    a15 += kw[i] * (std::abs(fp) + std::abs(fm));
    if ((i & 1) == 0) g7 += gw[i / 2] * (fp + fm);
  }
  return {k15 * h, std::abs(k15 - g7) * h, a15 * h};
}

// Panel walk over [lo, hi] ⊂ (0, 1]: dyadic boundaries at powers of two keep
// t^β well-behaved per panel, and each panel is split so the phase change
// |θ|·len stays ≤ π/refine.
PanelSum integrate_panels(Real beta, Real theta, Real lo, Real hi, int refine, int budget) {
  PanelSum total;
  int used = 0;
  Real cur = lo;
  while (cur < hi) {
    Real next = std::exp2(std::floor(std::log2(cur)) + 1.0);
    if (next <= cur) next = cur * 2.0;  // cur was an exact power of two
    next = std::min(next, hi);
    const Real len = next - cur;
    long m = std::max<long>(1, static_cast<long>(std::ceil(std::abs(theta) * len / M_PI)));
    m *= refine;
    used += static_cast<int>(m);
    if (used > budget)
      throw AccuracyError("moment quadrature: panel budget exhausted", total.value, total.err);
    for (long i = 0; i < m; ++i) {
      const PanelSum p =
          gk_panel(beta, theta, cur + len * static_cast<Real>(i) / static_cast<Real>(m),
                   cur + len * static_cast<Real>(i + 1) / static_cast<Real>(m));
      if (!std::isfinite(p.value.real()) || !std::isfinite(p.value.imag()))
        throw AccuracyError("moment quadrature: integrand overflow", total.value, total.err);
      total.value += p.value;
      total.err += p.err;
      total.abs_sum += p.abs_sum;
    }
    cur = next;
  }
  total.err += eps_d * total.abs_sum;
  return total;
}

// ∫₀^a t^β e^{iθt} dt with |θ|·a ≤ 1/2: local expansion a^{β+1} Σ (iθa)^k/(k!(β+k+1)).
Complex head_expansion(Real beta, Real theta, Real a, Real* err_out) {
  const Real scale = std::pow(a, beta + 1.0);
  Complex term(1.0, 0.0), sum(0.0, 0.0);
  const Complex z(0.0, theta * a);
  int k = 0;
  for (;;) {
    sum += term / (beta + k + 1.0);
    ++k;
    term *= z / static_cast<Real>(k);
    if (std::abs(term) / (beta + k + 1.0) < 1e-18 * std::abs(sum) + 1e-300) break;
    if (k > 200) break;
  }
  *err_out = scale * (2.0 * std::abs(term) + 4.0 * eps_d * std::abs(sum));
  return scale * sum;
}

}  // namespace

// ---------------------------------------------------------------------------

MomentIntegralValue moment_integral_series(Real beta, Real theta, const ToleranceConfig& cfg) {
  require_domain(beta, theta);
  cfg.validate();
  if (theta < 0) {
    MomentIntegralValue v = moment_integral_series(beta, -theta, cfg);
    v.theta = theta;
    v.value = std::conj(v.value);
    return v;
  }
  MomentIntegralValue out;
  out.beta = beta;
  out.theta = theta;
  out.method = MomentMethod::series;
  if (theta == 0) {
    out.value = Complex(1.0 / (beta + 1.0), 0.0);
    out.abs_error_estimate = eps_d * std::abs(out.value);
    return out;
  }
  Real err = 0;
  if (theta <= taylor_limit) {
    const QuadComplex s = taylor_sum_quad(beta, theta, cfg, &err);
    out.value = Complex(static_cast<Real>(s.re), static_cast<Real>(s.im));
    err += eps_d * std::abs(out.value);
  } else {
    out.value = asymptotic_eval(beta, theta, &err);
  }
  out.abs_error_estimate = err;
  if (err > cfg.abs_tol)
    throw AccuracyError("moment_integral_series: cannot meet abs_tol", out.value, err);
  return out;
}

MomentIntegralValue moment_integral_recurrence(Real beta, Real theta, const ToleranceConfig& cfg) {
  require_domain(beta, theta);
  cfg.validate();
  if (theta < 0) {
    MomentIntegralValue v = moment_integral_recurrence(beta, -theta, cfg);
    v.theta = theta;
    v.value = std::conj(v.value);
    return v;
  }
  MomentIntegralValue out;
  out.beta = beta;
  out.theta = theta;
  out.method = MomentMethod::recurrence;
  if (theta == 0) {
    out.value = Complex(1.0 / (beta + 1.0), 0.0);
    out.abs_error_estimate = eps_d * std::abs(out.value);
    return out;
  }

  const bool integral_exponent = (beta == std::floor(beta));
  const Real frac = integral_exponent ? 0.0 : beta - std::floor(beta);
  const int steps = integral_exponent ? static_cast<int>(beta)
                                      : static_cast<int>(std::floor(beta));
  // predicted double-precision error after all upward steps (|I| ≤ 1 bounds
  // the per-step rounding); steps run in 128-bit floats when it won't do
  Real predicted = 4.0 * eps_d * (1.0 + 1.0 / theta);
  for (int k = 1; k <= steps; ++k)
    predicted = predicted * std::max(1.0, (frac + k) / theta) + 4.0 * eps_d * (1.0 / theta + 1.0);

  Real err = 0;
  if (theta > taylor_limit) {
    // stable region (β_k/θ < 1 throughout on this branch): double steps
    Complex base;
    if (integral_exponent) {
      base = (cis(theta) - 1.0) / Complex(0.0, theta);
      err = 4.0 * eps_d / theta;
    } else {
      base = asymptotic_eval(frac, theta, &err);
    }
    Complex val = base;
    Real c = frac;
    for (int k = 0; k < steps; ++k) {
      c += 1.0;
      val = up_step(val, c, theta);
      err = err * (c / theta) + 4.0 * eps_d * (1.0 / theta + std::abs(val));
    }
    out.value = val;
  } else if (predicted <= 0.5 * cfg.abs_tol) {
    Complex base;
    Real base_err = 0;
    if (integral_exponent) {
      base = (cis(theta) - 1.0) / Complex(0.0, theta);
      base_err = 4.0 * eps_d / theta;
    } else {
      const QuadComplex s = taylor_sum_quad(frac, theta, cfg, &base_err);
      base = Complex(static_cast<Real>(s.re), static_cast<Real>(s.im));
      base_err += eps_d * std::abs(base);
    }
    Complex val = base;
    Real c = frac;
    err = base_err;
    for (int k = 0; k < steps; ++k) {
      c += 1.0;
      val = up_step(val, c, theta);
      err = err * std::max(1.0, c / theta) + 4.0 * eps_d * (1.0 / theta + std::abs(val));
    }
    out.value = val;
  } else {
    // amplified regime: base and every step in 128-bit floats; the Taylor
    // base at frac = 0 is just (e^{iθ}−1)/(iθ) summed termwise
    Real base_err = 0;
    QuadComplex val = taylor_sum_quad(frac, theta, cfg, &base_err);
    const Quad qth(theta);
    const Quad sn = sin(qth), cn = cos(qth);
    Quad c(frac);
    err = base_err;
    for (int k = 0; k < steps; ++k) {
      c += 1;
      // I ← (sinθ − i cosθ)/θ + (c/θ)(−I_im + i I_re)·(−1) rearranged below
      const Quad re = sn / qth - (c / qth) * val.im;
      const Quad im = -cn / qth + (c / qth) * val.re;
      val = {re, im};
      err = err * std::max(1.0, static_cast<Real>(c) / theta) + 4.0 * eps_q;
    }
    err += eps_d * static_cast<Real>(abs(val.re) + abs(val.im));
    out.value = Complex(static_cast<Real>(val.re), static_cast<Real>(val.im));
  }
  out.abs_error_estimate = err;
  if (err > cfg.abs_tol)
    throw AccuracyError("moment_integral_recurrence: cannot meet abs_tol", out.value, err);
  return out;
}

MomentIntegralValue moment_integral_quadrature(Real beta, Real theta, const ToleranceConfig& cfg) {
  require_domain(beta, theta);
  cfg.validate();
  if (theta < 0) {
    MomentIntegralValue v = moment_integral_quadrature(beta, -theta, cfg);
    v.theta = theta;
    v.value = std::conj(v.value);
    return v;
  }
  MomentIntegralValue out;
  out.beta = beta;
  out.theta = theta;
  out.method = MomentMethod::quadrature;

  const Real a = std::exp2(std::floor(std::log2(std::min(0.5, 0.5 / std::max(theta, 1.0)))));
  for (int refine = 1;; refine *= 2) {
    Real head_err = 0;
    const Complex head = head_expansion(beta, theta, a, &head_err);
    const PanelSum body = integrate_panels(beta, theta, a, 1.0, refine,
                                           cfg.quadrature_subdivision_max);
    out.value = head + body.value;
    out.abs_error_estimate = head_err + body.err;
    if (out.abs_error_estimate <= cfg.abs_tol) return out;
    if (refine >= 8)
      throw AccuracyError("moment_integral_quadrature: cannot meet abs_tol", out.value,
                          out.abs_error_estimate);
  }
}

MomentIntegralValue moment_integral(Real beta, Real theta, const ToleranceConfig& cfg) {
  require_domain(beta, theta);
  cfg.validate();
  if (theta == 0) {
    MomentIntegralValue out;
    out.beta = beta;
    out.theta = theta;
    out.method = MomentMethod::series;
    out.value = Complex(1.0 / (beta + 1.0), 0.0);
    out.abs_error_estimate = eps_d * std::abs(out.value);
    return out;
  }
  if (std::abs(theta) <= series_switch) return moment_integral_series(beta, theta, cfg);
  if (beta / std::abs(theta) <= 0.9) return moment_integral_recurrence(beta, theta, cfg);
  return moment_integral_quadrature(beta, theta, cfg);
}

Complex moment_integral_segment(Real beta, Real theta, Real lo, Real hi,
                                const ToleranceConfig& cfg) {
  cfg.validate();
  if (!(lo > 0) || !(lo <= hi) || !(hi <= 1.0))
    throw std::domain_error("moment_integral_segment: need 0 < lo <= hi <= 1");
  if (!std::isfinite(beta) || !std::isfinite(theta))
    throw std::domain_error("moment_integral_segment: non-finite argument");
  if (lo == hi) return {0.0, 0.0};
  if (theta == 0) {
    // closed form, stable near β = −1 via expm1
    if (beta == -1.0) return {std::log(hi) - std::log(lo), 0.0};
    const Real b1 = beta + 1.0;
    const Real v = (std::expm1(b1 * std::log(hi)) - std::expm1(b1 * std::log(lo))) / b1;
    return {v, 0.0};
  }
  Complex value;
  for (int refine = 1;; refine *= 2) {
    const PanelSum s = integrate_panels(beta, theta, lo, hi, refine,
                                        cfg.quadrature_subdivision_max);
    value = s.value;
    if (s.err <= cfg.abs_tol + cfg.rel_tol * std::abs(s.value)) return value;
    if (refine >= 8)
      throw AccuracyError("moment_integral_segment: cannot meet tolerance", s.value, s.err);
  }
}

Complex moment_integral_tail(Real beta, Real theta, Real eps, const ToleranceConfig& cfg) {
  if (!(eps > 0.0) || !(eps < 1.0))
    throw std::domain_error("moment_integral_tail: eps must lie in (0,1)");
  return moment_integral_segment(beta, theta, eps, 1.0, cfg);
}

}  // namespace wexp
