// Scalar aliases, index ranges and error types shared across the library.

#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>

namespace wexp {

using Real = double;
using Complex = std::complex<double>;
using Index = std::int64_t;

// Arbitrary-precision integers / rationals (exact certification path).
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using VectorXr = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
using VectorXc = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;
using MatrixXr = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
using MatrixXc = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
using VectorXq = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using MatrixXq = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;

inline constexpr Real two_pi = 6.283185307179586476925286766559005768;

/// Closed integer range [lo, hi].
struct IndexWindow {
  Index lo = 0;
  Index hi = -1;

  IndexWindow() = default;
  IndexWindow(Index lo_, Index hi_) : lo(lo_), hi(hi_) {
    if (lo > hi) throw std::invalid_argument("IndexWindow: lo > hi");
  }
  static IndexWindow symmetric(Index n) { return IndexWindow(-n, n); }

  bool contains(Index n) const { return n >= lo && n <= hi; }
  Index size() const { return hi - lo + 1; }
};

/// Accuracy budgets for the moment-integral kernels.
struct ToleranceConfig {
  Real abs_tol = 1e-12;
  Real rel_tol = 1e-10;
  int series_terms_max = 40000;
  int quadrature_subdivision_max = 1 << 20;

  void validate() const {
    if (!(abs_tol > 0) || !(rel_tol > 0) || series_terms_max <= 0 ||
        quadrature_subdivision_max <= 0)
      throw std::invalid_argument("ToleranceConfig: all fields must be strictly positive");
  }
};

/// Thrown when an evaluation cannot meet its accuracy budget; carries the
/// best estimate obtained so far.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, Complex best, Real err)
      : std::runtime_error(what), best_estimate(best), error_estimate(err) {}
  Complex best_estimate;
  Real error_estimate;
};

/// Thrown by closed-form inner-product paths when the frequency map is not
/// the trigonometric one (general dual functions r_n have no closed form).
class UnsupportedRealization : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace wexp
