// Finite exponential sums Σ_j a_j e^{iμ_j t} with pairwise distinct
// frequencies, in a floating and an exact-rational flavor, plus their
// vanishing order at t = 0 (k-th derivative there is Σ_j a_j (iμ_j)^k).

#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "wexp/rational.hpp"
#include "wexp/types.hpp"

namespace wexp {

struct TrigTerm {
  Real frequency;
  Complex coefficient;
};

/// The zero polynomial is the empty term list; construction merges duplicate
/// frequencies and drops zero coefficients, then sorts by frequency.
class TrigPolynomial {
 public:
  TrigPolynomial() = default;
  explicit TrigPolynomial(std::vector<TrigTerm> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const TrigTerm& a, const TrigTerm& b) { return a.frequency < b.frequency; });
    for (const auto& t : terms) {
      if (!terms_.empty() && terms_.back().frequency == t.frequency)
        terms_.back().coefficient += t.coefficient;
      else
        terms_.push_back(t);
    }
    std::erase_if(terms_, [](const TrigTerm& t) { return t.coefficient == Complex(0, 0); });
  }

  const std::vector<TrigTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Complex evaluate(Real t) const {
    Complex s(0, 0);
    for (const auto& term : terms_)
      s += term.coefficient * Complex(std::cos(term.frequency * t), std::sin(term.frequency * t));
    return s;
  }

  /// Σ_j a_j (iμ_j)^k.
  Complex derivative_at_zero(int k) const {
    Complex s(0, 0);
    for (const auto& term : terms_)
      s += term.coefficient * std::pow(Complex(0, term.frequency), k);
    return s;
  }

 private:
  std::vector<TrigTerm> terms_;
};

struct RationalTrigTerm {
  Index harmonic;  // frequency is 2π · harmonic
  Rational coefficient;
};

/// Exact flavor on the integer-harmonic grid μ = 2π m; derivative tests reduce
/// to rational sums Σ a_j m_j^k after factoring out (2πi)^k.
class RationalTrigPolynomial {
 public:
  RationalTrigPolynomial() = default;
  explicit RationalTrigPolynomial(std::vector<RationalTrigTerm> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const RationalTrigTerm& a, const RationalTrigTerm& b) {
                return a.harmonic < b.harmonic;
              });
    for (auto& t : terms) {
      if (!terms_.empty() && terms_.back().harmonic == t.harmonic)
        terms_.back().coefficient += t.coefficient;
      else
        terms_.push_back(std::move(t));
    }
    std::erase_if(terms_, [](const RationalTrigTerm& t) { return t.coefficient == 0; });
  }

  const std::vector<RationalTrigTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Σ_j a_j m_j^k; the k-th derivative at 0 is (2πi)^k times this.
  Rational scaled_derivative_at_zero(int k) const {
    Rational s(0);
    for (const auto& t : terms_) {
      BigInt p(1);
      for (int i = 0; i < k; ++i) p *= t.harmonic;
      s += t.coefficient * Rational(p);
    }
    return s;
  }

  TrigPolynomial to_float() const {
    std::vector<TrigTerm> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_)
      out.push_back({two_pi * static_cast<Real>(t.harmonic), Complex(to_real(t.coefficient), 0)});
    return TrigPolynomial(std::move(out));
  }

 private:
  std::vector<RationalTrigTerm> terms_;
};

/// Smallest k with a nonzero k-th derivative at 0, or max_order if all
/// derivatives below max_order vanish. Float "nonzero" is judged against the
/// row scale Σ|a_j||μ_j|^k (an absolute threshold would drown as |μ|^k grows).
inline int vanishing_order(const TrigPolynomial& p, int max_order) {
  if (p.is_zero())
    throw std::domain_error("vanishing_order: undefined (infinite) for the zero polynomial");
  if (max_order < 1) throw std::invalid_argument("vanishing_order: max_order must be >= 1");
  for (int k = 0; k < max_order; ++k) {
    Real scale = 0;
    for (const auto& t : p.terms())
      scale += std::abs(t.coefficient) * std::pow(std::abs(t.frequency), k);
    if (std::abs(p.derivative_at_zero(k)) > 1e-9 * scale) return k;
  }
  return max_order;
}

inline int vanishing_order(const RationalTrigPolynomial& p, int max_order) {
  if (p.is_zero())
    throw std::domain_error("vanishing_order: undefined (infinite) for the zero polynomial");
  if (max_order < 1) throw std::invalid_argument("vanishing_order: max_order must be >= 1");
  for (int k = 0; k < max_order; ++k)
    if (p.scaled_derivative_at_zero(k) != 0) return k;
  return max_order;
}

}  // namespace wexp
