#include <doctest.h>

#include <cmath>
#include <complex>

#include "dp3/jet.hpp"

using dp3::Jet;

TEST_CASE("jet of a variable and polynomial derivatives") {
  using J = Jet<double, 6>;
  const J x = J::variable(2.0);
  CHECK(x.value() == 2.0);
  CHECK(x[1] == 1.0);
  const J p = (x * x) * (x * x * x);
  CHECK(p.value() == doctest::Approx(32.0));
  CHECK(p.derivative_value(1) == doctest::Approx(80.0));
  CHECK(p.derivative_value(2) == doctest::Approx(160.0));
  CHECK(p.derivative_value(3) == doctest::Approx(240.0));
  CHECK(p.derivative_value(5) == doctest::Approx(120.0));
  const J d = p.derivative();
  CHECK(d.value() == doctest::Approx(80.0));
  CHECK(d.derivative_value(1) == doctest::Approx(160.0));
}

TEST_CASE("jet division reproduces 1/(1+x) derivatives") {
  using J = Jet<double, 6>;
  const J x = J::variable(1.0);
  const J f = 1.0 / (1.0 + x);
  double factorial = 1.0;
  for (std::size_t k = 0; k < 6; ++k) {
    if (k) factorial *= static_cast<double>(k);
    const double expected = (k % 2 ? -1.0 : 1.0) * factorial / std::pow(2.0, static_cast<double>(k + 1));
    CHECK(f.derivative_value(k) == doctest::Approx(expected).epsilon(1e-14));
  }
  const J g = (x * x + 3.0) / (x - 4.0);
  const J back = g * (x - 4.0);
  for (std::size_t k = 0; k < 6; ++k) {
    CHECK(back[k] == doctest::Approx((x * x + 3.0)[k]).epsilon(1e-14));
  }
}

TEST_CASE("scalar and complex mixing") {
  using J = Jet<std::complex<double>, 4>;
  const std::complex<double> i(0.0, 1.0);
  const J x = J::variable(i);
  const J y = 2.0 * x - 1.0;
  CHECK(y.value() == 2.0 * i - 1.0);
  CHECK(y[1] == std::complex<double>(2.0));
  const J z = -(x * x) / i;
  // -(x^2)/i at x = i: value -i, first derivative -2x/i = -2
  CHECK(std::abs(z.value() + i) < 1e-15);
  CHECK(std::abs(z.derivative_value(1) + 2.0) < 1e-15);
  CHECK(std::abs(z.derivative_value(2) - (-2.0 / i)) < 1e-15);
}

TEST_CASE("compound assignment and subtraction") {
  using J = Jet<double, 3>;
  J a = J::variable(3.0);
  a += 1.0;
  a -= J(2.0);
  a *= a;
  CHECK(a.value() == doctest::Approx(4.0));
  CHECK(a[1] == doctest::Approx(4.0));
  CHECK(a[2] == doctest::Approx(1.0));
  a /= J(2.0);
  CHECK(a.value() == doctest::Approx(2.0));
  const J b = 5.0 - J::variable(1.0);
  CHECK(b.value() == 4.0);
  CHECK(b[1] == -1.0);
}
