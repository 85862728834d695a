#include "dp3/asymptotics.hpp"

#include <cmath>
#include <numbers>

#include "dp3/special_functions.hpp"

namespace dp3 {
namespace {

using std::numbers::pi;

double checked_tau(double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    fail(ErrorCode::ZeroTau, "asymptotics need tau > 0");
  }
  return tau;
}

// ln(1 - e^{2 pi a})
double log_one_minus_exp(double a) { return std::log1p(-std::exp(2.0 * pi * a)); }

}  // namespace

double q_squared(const Params& p) {
  require_special(p, "q_squared");
  return -log_one_minus_exp(p.a_real()) / (2.0 * pi);
}

CorrectionInputs correction_inputs(const Params& p, double tau) {
  require_special(p, "correction_inputs");
  checked_tau(tau);
  const double a = p.a_real();
  const double q2 = q_squared(p);
  const double x = std::sqrt(3.0) * std::cbrt(p.b()) * std::pow(tau, 2.0 / 3.0);
  const double phi0 = a * std::log(2.0 + std::sqrt(3.0)) + q2 * std::log(12.0) -
                      pi / 4.0 - arg_gamma_iq2(q2);
  return {x, std::sqrt(q2), phi0};
}

double i1_asymptotic(const Params& p, double tau) {
  require_special(p, "i1_asymptotic");
  checked_tau(tau);
  const double a = p.a_real();
  const double scaled = std::cbrt(p.b()) * std::pow(tau, 2.0 / 3.0);
  return 3.0 * scaled + 2.0 * a * std::log(scaled) -
         std::log(2.0 + std::sqrt(3.0)) / pi * log_one_minus_exp(a) - pi / 2.0 -
         2.0 * arg_gamma_continuous(a);
}

double oscillatory_correction(const Params& p, double tau) {
  const CorrectionInputs in = correction_inputs(p, tau);
  const double q2 = in.q * in.q;
  return -(2.0 * in.q / std::sqrt(in.x)) *
         std::cos(3.0 * in.x + q2 * std::log(3.0 * in.x) + in.phi0);
}

double correction_amplitude(const Params& p, double tau) {
  const CorrectionInputs in = correction_inputs(p, tau);
  return 2.0 * in.q / std::sqrt(in.x);
}

double ln_u_over_tau_asymptotic(const Params& p, double tau,
                                bool with_correction) {
  checked_tau(tau);
  const double leading = -(2.0 / 3.0) * std::log(tau) +
                         (2.0 / 3.0) * std::log(p.b()) - std::log(2.0);
  return with_correction ? leading + oscillatory_correction(p, tau) : leading;
}

double limit_ln_u_over_tau_at_zero(const Params& p) {
  require_special(p, "limit_ln_u_over_tau_at_zero");
  return std::log(p.b()) - std::log(-p.a_real()) - std::log(2.0);
}

double im_i2_asymptotic(const Params& p, double tau, bool with_correction) {
  require_special(p, "im_i2_asymptotic");
  checked_tau(tau);
  const double b = p.b();
  const double scaled = std::cbrt(b) * std::pow(tau, 2.0 / 3.0);
  const double leading = (b / 8.0) * (std::log(scaled) - std::log(-p.a_real()));
  return with_correction ? leading - (b / 8.0) * oscillatory_correction(p, tau)
                         : leading;
}

double re_i2_asymptotic(const Params& p, double tau) {
  return (p.b() / 8.0) * i1_asymptotic(p, tau);
}

double u_asymptotic(const Params& p, double tau, bool with_correction) {
  return tau * std::exp(ln_u_over_tau_asymptotic(p, tau, with_correction));
}

double numeric_value(Observable obs, const AugmentedState& s) {
  switch (obs) {
    case Observable::solution: return s.point.u();
    case Observable::i1: return s.i1;
    case Observable::re_i2: return s.i2.re();
    case Observable::im_i2: return s.i2.im();
  }
  return 0.0;
}

AsymptoticReport compare(const Params& p, Observable obs,
                         const AugmentedState& s, bool with_correction) {
  const double tau = s.tau();
  const double numeric = numeric_value(obs, s);
  switch (obs) {
    case Observable::solution:
      return AsymptoticReport::make(
          tau, numeric, u_asymptotic(p, tau, false),
          with_correction ? std::optional(u_asymptotic(p, tau, true)) : std::nullopt);
    case Observable::i1:
      return AsymptoticReport::make(tau, numeric, i1_asymptotic(p, tau), std::nullopt);
    case Observable::re_i2:
      return AsymptoticReport::make(tau, numeric, re_i2_asymptotic(p, tau), std::nullopt);
    case Observable::im_i2:
      return AsymptoticReport::make(
          tau, numeric, im_i2_asymptotic(p, tau, false),
          with_correction ? std::optional(im_i2_asymptotic(p, tau, true)) : std::nullopt);
  }
  fail(ErrorCode::Usage, "unknown observable");
}

}  // namespace dp3
