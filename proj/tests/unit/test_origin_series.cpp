#include <doctest.h>

#include <array>
#include <cmath>

#include "dp3/origin_series.hpp"

using namespace dp3;

namespace {

Params special(double a, double b = 0.01) { return Params::make(a, b, Sign::plus, Mode::special); }

// Cleared equation tau u u'' - tau u'^2 + u u' + 8u^3 - 2abu - b^2 tau for
// the cubic u = c1 tau + c3 tau^3, evaluated directly.
long double cleared_residual(long double a, long double b, long double c1, long double c3,
                             long double t) {
  const long double u = c1 * t + c3 * t * t * t;
  const long double du = c1 + 3 * c3 * t * t;
  const long double ddu = 6 * c3 * t;
  return t * u * ddu - t * du * du + u * du + 8 * u * u * u - 2 * a * b * u - b * b * t;
}

// c3 by undetermined coefficients: the t^3 coefficient of the residual is
// affine in c3, read off at small t and solved for its root.
double undetermined_c3(double a, double b) {
  const long double c1 = -b / (2.0L * a);
  const long double t = 1e-4L;
  const long double r0 = cleared_residual(a, b, c1, 0.0L, t) / (t * t * t);
  const long double r1 = cleared_residual(a, b, c1, 1.0L, t) / (t * t * t);
  return static_cast<double>(-r0 / (r1 - r0));
}

// composite Gauss-Legendre, 8 nodes per panel
template <typename F>
double gauss(F&& f, double lo, double hi, int panels) {
  static const std::array<double, 4> x = {0.1834346424956498, 0.5255324099163290,
                                          0.7966664774136267, 0.9602898564975363};
  static const std::array<double, 4> w = {0.3626837833783620, 0.3137066458778873,
                                          0.2223810344533745, 0.1012285362903763};
  double s = 0.0;
  const double h = (hi - lo) / panels;
  for (int p = 0; p < panels; ++p) {
    const double m = lo + (p + 0.5) * h;
    for (int k = 0; k < 4; ++k) {
      s += w[k] * (f(m - 0.5 * h * x[k]) + f(m + 0.5 * h * x[k]));
    }
  }
  return s * 0.5 * h;
}

}  // namespace

TEST_CASE("first coefficient is -b/(2a)") {
  CHECK(build_series(special(-8.0), 12).coeffs[0] == 0.000625);
  CHECK(build_series(special(-0.125), 12).coeffs[0] == 0.04);
  CHECK(build_series(special(-1.0 / 8.0, 1.0 / 100.0), 12).coeffs[0] == -(1.0 / 100.0) / (2.0 * (-1.0 / 8.0)));
}

TEST_CASE("third coefficient against undetermined coefficients") {
  const double c3 = build_series(special(-1.0, 1.0), 6).coeffs[1];
  CHECK(c3 == doctest::Approx(-0.25).epsilon(1e-14));
  CHECK(undetermined_c3(-1.0, 1.0) == doctest::Approx(-0.25).epsilon(1e-6));
  for (double a : {-8.0, -0.125, -2.5}) {
    for (double b : {0.01, 1.0, 3.0}) {
      const double rec = build_series(special(a, b), 6).coeffs[1];
      CHECK(rec == doctest::Approx(undetermined_c3(a, b)).epsilon(1e-6));
      CHECK(rec == doctest::Approx(-b * b / (2.0 * a * a * (a * a + 1.0))).epsilon(1e-13));
    }
  }
}

TEST_CASE("fifth coefficient closed form") {
  CHECK(build_series(special(-1.0, 1.0), 6).coeffs[2] == doctest::Approx(0.15).epsilon(1e-14));
  for (double a : {-8.0, -0.125, -2.5}) {
    const double b = 0.7;
    const double expected = -3.0 * b * b * b / (2.0 * a * a * a * (a * a * a * a + 5.0 * a * a + 4.0));
    CHECK(build_series(special(a, b), 6).coeffs[2] == doctest::Approx(expected).epsilon(1e-13));
  }
}

TEST_CASE("series is odd") {
  const OriginSeries s = build_series(special(-0.125), 12);
  const SeriesPoint z = eval_u(s, 0.0);
  CHECK(z.u == 0.0);
  CHECK(z.du == s.coeffs[0]);
  for (double tau : {0.01, 0.05, 0.1}) {
    const SeriesPoint p = eval_u(s, tau);
    const SeriesPoint m = eval_u(s, -tau);
    CHECK(m.u == -p.u);
    CHECK(m.du == p.du);
  }
}

TEST_CASE("truncated series residual decays like tau^(2N+1)") {
  for (double a : {-8.0, -0.125}) {
    for (std::size_t n : {2u, 3u, 4u}) {
      const OriginSeries s = build_series(special(a, 1.0), n);
      const double r1 = std::abs(series_ode_residual(s, 1e-2));
      const double r2 = std::abs(series_ode_residual(s, 1e-3));
      const double slope = std::log10(r1 / r2);
      CHECK(slope == doctest::Approx(2.0 * n + 1.0).epsilon(0.5 / (2.0 * n + 1.0)));
    }
  }
}

TEST_CASE("series radius guard") {
  const OriginSeries s = build_series(special(-0.125, 1.0), 12);
  CHECK(s.radius_estimate > 0.0);
  CHECK(std::isfinite(s.radius_estimate));
  try {
    eval_u(s, 2.0 * s.radius_estimate);
    FAIL("no exception");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OutsideRadius);
  }
  CHECK_THROWS_AS(eval_integrals(s, 2.0 * s.radius_estimate), Error);
}

TEST_CASE("build_series preconditions") {
  const Params g = Params::make(-1.0, 1.0, Sign::plus, Mode::general);
  try {
    build_series(g, 12);
    FAIL("no exception");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SpecialModeViolation);
  }
  CHECK_THROWS_AS(build_series(special(-1.0), 1), Error);
}

TEST_CASE("integrals vanish at the origin and I1 is quadratic there") {
  const OriginSeries s = build_series(special(-0.125), 12);
  const SeriesIntegrals z = eval_integrals(s, 0.0);
  CHECK(z.i1 == 0.0);
  CHECK(z.i2.value() == Complex(0.0));
  const double r1 = eval_integrals(s, 1e-2).i1 / 1e-4;
  const double r2 = eval_integrals(s, 1e-3).i1 / 1e-6;
  CHECK(r1 == doctest::Approx(r2).epsilon(1e-3));
}

TEST_CASE("integrand has no 1/tau or constant term") {
  for (double a : {-8.0, -0.125}) {
    const Params p = special(a);
    const OriginSeries s = build_series(p, 12);
    double prev = HUGE_VAL;
    for (double tau : {1e-2, 1e-3, 1e-4}) {
      const double integrand = 2.0 * a / tau + p.b() / eval_u(s, tau).u;
      const double ratio = std::abs(integrand) / tau;
      CHECK(ratio < 2.0 * std::abs(eval_integrals(s, 1e-2).i1 / 1e-4) + 1e-6);
      CHECK(std::abs(integrand) < prev);
      prev = std::abs(integrand);
    }
  }
}

TEST_CASE("series I1 against Gauss-Legendre quadrature") {
  const Params p = special(-0.125);
  const OriginSeries s = build_series(p, 12);
  const double a = p.a_real(), b = p.b();
  const double tau0 = 0.1;
  const double quad = gauss([&](double t) { return 2.0 * a / t + b / eval_u(s, t).u; }, 0.0, tau0, 20);
  CHECK(std::abs(eval_integrals(s, tau0).i1 - quad) < 1e-10);
}

TEST_CASE("series Im I2 satisfies the log identity") {
  for (double a : {-8.0, -0.125}) {
    const Params p = special(a);
    const OriginSeries s = build_series(p, 12);
    const double b = p.b();
    for (double tau : {0.02, 0.05, 0.1}) {
      const double u = eval_u(s, tau).u;
      const double expected = -(b / 8.0) * (std::log(u / tau) - std::log(b / (-2.0 * a)));
      CHECK(std::abs(eval_integrals(s, tau).i2.im() - expected) < 1e-15);
      CHECK(std::abs(eval_integrals(s, tau).i2.re() - b / 8.0 * eval_integrals(s, tau).i1) < 1e-17);
    }
  }
}

TEST_CASE("seed point selection halves until the tail is negligible") {
  const OriginSeries s = build_series(special(-0.125, 1.0), 12);
  const double t = choose_seed_tau(s, 0.5);
  CHECK(t <= 0.5);
  CHECK(t > 0.0);
  const double u = eval_u(s, t).u;
  CHECK(std::abs(s.coeffs.back()) * std::pow(t, 23.0) < 1e-13 * std::abs(u));
  // the previous candidate, twice as large, did not qualify (unless capped)
  if (t < 0.5 && 2.0 * t <= 0.5 * s.radius_estimate) {
    CHECK(std::abs(s.coeffs.back()) * std::pow(2.0 * t, 23.0) >= 1e-13 * std::abs(eval_u(s, 2.0 * t).u));
  }
  CHECK(choose_seed_tau(build_series(special(-8.0), 12), 0.1) == 0.1);
}
