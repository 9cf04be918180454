#include <doctest.h>

#include <cmath>
#include <random>

#include "wexp/moment.hpp"
#include "wexp/rational.hpp"

extern std::uint64_t test_seed();

using namespace wexp;

namespace {

// Test-only oracle: adaptive Simpson on real and imaginary parts, independent
// of every evaluation route in the library.
template <typename F>
double simpson_rec(F f, double a, double b, double fa, double fm, double fb, double eps,
                   int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * eps)
    return left + right + (left + right - whole) / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, eps / 2, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, eps / 2, depth - 1);
}

template <typename F>
double simpson(F f, double a, double b, double eps = 1e-13) {
  return simpson_rec(f, a, b, f(a), f(0.5 * (a + b)), f(b), eps, 40);
}

Complex simpson_moment(double beta, double theta) {
  const auto re = [=](double t) { return std::pow(t, beta) * std::cos(theta * t); };
  const auto im = [=](double t) { return std::pow(t, beta) * std::sin(theta * t); };
  return {simpson(re, 0.0, 1.0), simpson(im, 0.0, 1.0)};
}

}  // namespace

TEST_CASE("moment integral: pinned values") {
  // ∫₀¹ t dt
  CHECK(moment_integral(1.0, 0.0).value.real() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(moment_integral(1.0, 0.0).value.imag() == 0.0);

  // full period of e^{2πit}
  const auto full = moment_integral(0.0, two_pi);
  CHECK(std::abs(full.value) < 1e-14);

  // ∫₀¹ t e^{2πit} dt = −i/(2π), by parts; cross-checked with the Simpson oracle
  const auto v = moment_integral(1.0, two_pi);
  CHECK(v.value.real() == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(v.value.imag() == doctest::Approx(-0.15915494309189535).epsilon(1e-13));
  const Complex oracle = simpson_moment(1.0, two_pi);
  CHECK(std::abs(v.value - oracle) < 1e-10);
}

TEST_CASE("moment integral: Simpson oracle agreement on smooth exponents") {
  for (const auto& [beta, theta] : {std::pair{2.0, 5.0}, {1.5, -17.0}, {3.25, 31.0}}) {
    const Complex got = moment_integral(beta, theta).value;
    CHECK(std::abs(got - simpson_moment(beta, theta)) < 1e-9);
  }
}

TEST_CASE("moment integral: domain errors") {
  CHECK_THROWS_AS(moment_integral(-1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(moment_integral(-2.5, 0.0), std::domain_error);
  CHECK_THROWS_AS(moment_integral(1.0, std::numeric_limits<Real>::infinity()),
                  std::domain_error);
  ToleranceConfig bad;
  bad.abs_tol = -1;
  CHECK_THROWS_AS(moment_integral(1.0, 1.0, bad), std::invalid_argument);
}

TEST_CASE("moment integral: conjugate symmetry and bound") {
  std::mt19937_64 gen(test_seed());
  std::uniform_real_distribution<double> beta_pick(-0.9, 10.0);
  std::uniform_real_distribution<double> log_theta(-2.0, 4.0);
  for (int i = 0; i < 200; ++i) {
    const double beta = beta_pick(gen);
    const double theta = std::pow(10.0, log_theta(gen));
    const auto plus = moment_integral(beta, theta);
    const auto minus = moment_integral(beta, -theta);
    CHECK(std::abs(minus.value - std::conj(plus.value)) < 1e-12);
    CHECK(std::abs(plus.value) <= 1.0 / (beta + 1.0) + 1e-12);
    CHECK(plus.abs_error_estimate >= 0);
  }
}

TEST_CASE("moment integral: the three routes agree") {
  for (const double beta : {0.0, 0.5, 2.0, 7.25}) {
    for (const double theta : {0.3, 7.0, 39.5, 250.0, 6000.0}) {
      const Complex s = moment_integral_series(beta, theta).value;
      const Complex r = moment_integral_recurrence(beta, theta).value;
      const Complex q = moment_integral_quadrature(beta, theta).value;
      CAPTURE(beta);
      CAPTURE(theta);
      CHECK(std::abs(s - r) < 1e-12);
      CHECK(std::abs(s - q) < 1e-12);
    }
  }
}

TEST_CASE("moment integral: integration-by-parts identity") {
  std::mt19937_64 gen(test_seed() + 1);
  std::uniform_real_distribution<double> beta_pick(1.0, 9.0);
  std::uniform_real_distribution<double> theta_pick(0.5, 300.0);
  for (int i = 0; i < 50; ++i) {
    const double beta = beta_pick(gen);
    const double theta = theta_pick(gen);
    const Complex lhs = moment_integral(beta, theta).value;
    const Complex prev = moment_integral(beta - 1.0, theta).value;
    const Complex it(0.0, theta);
    const Complex rhs = std::exp(Complex(0, theta)) / it - (beta / it) * prev;
    CHECK(std::abs(lhs - rhs) < 1e-10 * (1.0 + std::abs(rhs)));
  }
}

TEST_CASE("moment integral: reported method follows the dispatch policy") {
  CHECK(moment_integral(1.0, 12.0).method == MomentMethod::series);
  CHECK(moment_integral(1.0, 300.0).method == MomentMethod::recurrence);
  CHECK(moment_integral(40.0, 41.0).method == MomentMethod::quadrature);
}

TEST_CASE("tail integral: pinned values") {
  CHECK(moment_integral_tail(-1.0, 0.0, std::exp(-1.0)).real() ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(moment_integral_tail(0.0, 0.0, 0.25).real() == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(moment_integral_tail(-2.0, 0.0, 0.01).real() == doctest::Approx(99.0).epsilon(1e-12));
  CHECK_THROWS_AS(moment_integral_tail(0.0, 0.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(moment_integral_tail(0.0, 0.0, 1.5), std::domain_error);
}

TEST_CASE("tail integral: additivity across a split point") {
  std::mt19937_64 gen(test_seed() + 2);
  std::uniform_real_distribution<double> beta_pick(-3.0, 4.0);
  std::uniform_real_distribution<double> theta_pick(-40.0, 40.0);
  for (int i = 0; i < 40; ++i) {
    const double beta = beta_pick(gen);
    const double theta = theta_pick(gen);
    const double e1 = 0.01, e2 = 0.2;
    const Complex whole = moment_integral_tail(beta, theta, e1);
    const Complex upper = moment_integral_tail(beta, theta, e2);
    const Complex middle = moment_integral_segment(beta, theta, e1, e2);
    const double scale = 1.0 + std::abs(whole);
    CHECK(std::abs(whole - (upper + middle)) < 1e-9 * scale);
  }
}

TEST_CASE("exact rationals: arithmetic suite") {
  const Rational third(1, 3), sixth(1, 6);
  CHECK(third + sixth == Rational(1, 2));
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(rational_numerator(Rational(2, 4)) == 2 / 2);
  CHECK(rational_denominator(Rational(2, 4)) == 2);
  CHECK(Rational(7, 3) * Rational(3, 7) == 1);
  CHECK(Rational(1, 3) - Rational(1, 2) == Rational(-1, 6));
  CHECK(rational_div(Rational(1, 2), Rational(3, 4)) == Rational(2, 3));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK_THROWS_AS(rational_div(Rational(1), Rational(0)), std::domain_error);

  // canonical form: positive denominator, reduced
  const Rational neg(3, -9);
  CHECK(rational_denominator(neg) == 3);
  CHECK(rational_numerator(neg) == -1);

  // values far beyond 64-bit stay exact
  Rational big(1);
  for (int i = 0; i < 40; ++i) big *= Rational(99991);
  CHECK(big * Rational(1, 99991) == [] {
    Rational r(1);
    for (int i = 0; i < 39; ++i) r *= Rational(99991);
    return r;
  }());
}

TEST_CASE("exact rationals: string round trip") {
  CHECK(rational_to_string(Rational(-22, 8)) == "-11/4");
  CHECK(rational_to_string(Rational(5)) == "5");
  CHECK(rational_from_string("-11/4") == Rational(-11, 4));
  CHECK(rational_from_string("17") == Rational(17));
  CHECK_THROWS_AS(rational_from_string("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(rational_from_string(""), std::invalid_argument);

  std::mt19937_64 gen(test_seed() + 3);
  std::uniform_int_distribution<long long> pick(-1000000, 1000000);
  for (int i = 0; i < 100; ++i) {
    long long d = pick(gen);
    if (d == 0) d = 7;
    const Rational r(pick(gen), d);
    CHECK(rational_from_string(rational_to_string(r)) == r);
  }
}
