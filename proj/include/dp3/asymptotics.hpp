#pragma once

// Large-tau behaviour of the special solution (a < 0, b > 0, eps = +1) and of
// the integrals over [0, tau]. The o(tau^-delta) remainders are dropped.

#include "dp3/core.hpp"
#include "dp3/integrator.hpp"

namespace dp3 {

/// x = sqrt(3) b^{1/3} tau^{2/3}, q = sqrt(-ln(1 - e^{2 pi a}) / (2 pi)) and
/// phi0 = a ln(2 + sqrt 3) + q^2 ln 12 - pi/4 - arg Gamma(i q^2).
struct CorrectionInputs {
  double x;
  double q;
  double phi0;
};

CorrectionInputs correction_inputs(const Params& p, double tau);

/// q^2, evaluated with log1p so that tiny e^{2 pi a} is not lost.
double q_squared(const Params& p);

/// I1(tau) ~ 3 b^{1/3} tau^{2/3} + 2a ln(b^{1/3} tau^{2/3})
///   - ln(2 + sqrt 3)/pi ln(1 - e^{2 pi a}) - pi/2 - 2 Arg Gamma(1 + ai).
double i1_asymptotic(const Params& p, double tau);

/// -(2q/sqrt x) cos(3x + q^2 ln(3x) + phi0).
double oscillatory_correction(const Params& p, double tau);

/// 2q / sqrt(x), the envelope of the correction.
double correction_amplitude(const Params& p, double tau);

/// ln(u/tau) ~ -(2/3) ln tau + (2/3) ln b - ln 2 (+ correction).
double ln_u_over_tau_asymptotic(const Params& p, double tau,
                                bool with_correction);

/// lim_{tau -> 0} ln(u/tau) = ln b - ln(-a) - ln 2.
double limit_ln_u_over_tau_at_zero(const Params& p);

/// Im I2(tau) ~ (b/8)(ln(b^{1/3} tau^{2/3}) - ln(-a)), minus (b/8) times the
/// correction when requested (the same correction as in ln(u/tau)).
double im_i2_asymptotic(const Params& p, double tau, bool with_correction);

/// Re I2 = (b/8) I1.
double re_i2_asymptotic(const Params& p, double tau);

/// u ~ tau exp(ln_u_over_tau_asymptotic).
double u_asymptotic(const Params& p, double tau, bool with_correction);

/// Quantity compared against its asymptotics.
enum class Observable { solution, i1, re_i2, im_i2 };

double numeric_value(Observable obs, const AugmentedState& s);

/// Numeric value at s against the leading asymptotics and, where one exists
/// (u and Im I2), the corrected asymptotics.
AsymptoticReport compare(const Params& p, Observable obs,
                         const AugmentedState& s, bool with_correction);

}  // namespace dp3
