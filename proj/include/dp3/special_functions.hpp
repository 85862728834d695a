#pragma once

#include "dp3/core.hpp"

namespace dp3 {

/// Principal branch of log Gamma: real on the positive axis and continuous
/// on the plane cut along the negative real axis.
struct LogGammaValue {
  ComplexValue value;

  Complex gamma() const { return std::exp(value.value()); }
};

/// Stirling series on a shifted argument, Re(z + n) >= 15, followed by the
/// recurrence ln Gamma(z) = ln Gamma(z + n) - sum_k log(z + k). Relative
/// accuracy of exp(value) is better than 1e-13 on Re z in (0, 2],
/// |Im z| <= 20. Throws PoleOfGamma for z in {0, -1, -2, ...}.
LogGammaValue log_gamma(Complex z);

/// Arg Gamma(1 + a i) continued in a from Arg Gamma(1) = 0, without the 2 pi
/// jumps of the principal argument.
double arg_gamma_continuous(double a);

/// Principal value of arg Gamma(i q2) in (-pi, pi], q2 > 0.
double arg_gamma_iq2(double q2);

/// Principal value in (-pi, pi].
double wrap_to_pi(double angle);

}  // namespace dp3
