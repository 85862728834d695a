#include "dp3/special_functions.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace dp3 {
namespace {

// B_2k / (2k (2k - 1)), k = 1..10.
constexpr std::array<double, 10> kStirling = {
    1.0 / 12.0,         -1.0 / 360.0,        1.0 / 1260.0,
    -1.0 / 1680.0,      1.0 / 1188.0,        -691.0 / 360360.0,
    1.0 / 156.0,        -3617.0 / 122400.0,  43867.0 / 244188.0,
    -174611.0 / 125400.0};

constexpr double kShiftTarget = 15.0;

Complex stirling(Complex z) {
  const Complex inv = 1.0 / z;
  const Complex inv2 = inv * inv;
  Complex series = 0.0;
  for (auto it = kStirling.rbegin(); it != kStirling.rend(); ++it) {
    series = series * inv2 + *it;
  }
  series *= inv;
  constexpr double half_log_2pi = 0.91893853320467274178032973640562;
  return (z - 0.5) * std::log(z) - z + half_log_2pi + series;
}

}  // namespace

LogGammaValue log_gamma(Complex z) {
  if (!is_finite(z)) fail(ErrorCode::NonFinite, "log_gamma argument");
  if (z.imag() == 0.0 && z.real() <= 0.0 &&
      z.real() == std::floor(z.real())) {
    fail(ErrorCode::PoleOfGamma, "Gamma has a pole at a nonpositive integer");
  }
  // Sum the logs one at a time: the log of the product would lose the
  // branch once the accumulated argument leaves (-pi, pi].
  Complex shifted = z;
  Complex log_sum = 0.0;
  while (shifted.real() < kShiftTarget) {
    log_sum += std::log(shifted);
    shifted += 1.0;
  }
  return {ComplexValue(stirling(shifted) - log_sum)};
}

double arg_gamma_continuous(double a) {
  return log_gamma(Complex(1.0, a)).value.im();
}

double wrap_to_pi(double angle) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::remainder(angle, two_pi);
  if (r <= -std::numbers::pi) r += two_pi;
  return r;
}

double arg_gamma_iq2(double q2) {
  if (!(q2 > 0.0) || !std::isfinite(q2)) {
    fail(ErrorCode::NonPositiveQ2, "arg_gamma_iq2 needs q2 > 0");
  }
  // Gamma(i q2) = Gamma(1 + i q2) / (i q2), and arg(i q2) = pi/2.
  const double continuous =
      log_gamma(Complex(1.0, q2)).value.im() - std::numbers::pi / 2.0;
  return wrap_to_pi(continuous);
}

}  // namespace dp3
