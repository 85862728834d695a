#include "dp3/core.hpp"

#include <cmath>

namespace dp3 {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidB: return "InvalidB";
    case ErrorCode::InvalidEpsilon: return "InvalidEpsilon";
    case ErrorCode::SpecialModeViolation: return "SpecialModeViolation";
    case ErrorCode::NonRealA: return "NonRealA";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::PoleOfGamma: return "PoleOfGamma";
    case ErrorCode::NonPositiveQ2: return "NonPositiveQ2";
    case ErrorCode::ZeroU: return "ZeroU";
    case ErrorCode::ZeroTau: return "ZeroTau";
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::OutsideRadius: return "OutsideRadius";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::PoleEncountered: return "PoleEncountered";
    case ErrorCode::ZeroCrossing: return "ZeroCrossing";
    case ErrorCode::StepUnderflow: return "StepUnderflow";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::UnknownFigure: return "UnknownFigure";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::Usage: return "Usage";
  }
  return "Unknown";
}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, std::string(to_string(code)) + ": " + message);
}

bool is_finite(double x) noexcept { return std::isfinite(x); }

bool is_finite(Complex z) noexcept {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

Params Params::make(double a, double b, Sign epsilon, Mode mode) {
  return make(Complex(a, 0.0), b, epsilon, mode);
}

Params Params::make(Complex a, double b, Sign epsilon, Mode mode) {
  if (!is_finite(a) || !std::isfinite(b)) {
    fail(ErrorCode::NonFinite, "parameters must be finite");
  }
  if (!(b > 0.0)) fail(ErrorCode::InvalidB, "b must be positive");
  if (epsilon != Sign::plus && epsilon != Sign::minus) {
    fail(ErrorCode::InvalidEpsilon, "epsilon must be +1 or -1");
  }
  if (mode == Mode::special) {
    if (a.imag() != 0.0) {
      fail(ErrorCode::NonRealA, "special solution requires real a");
    }
    if (!(a.real() < 0.0)) {
      fail(ErrorCode::SpecialModeViolation, "special solution requires a < 0");
    }
    if (epsilon != Sign::plus) {
      fail(ErrorCode::SpecialModeViolation,
           "special solution requires epsilon = +1");
    }
  }
  return Params(a, b, epsilon, mode);
}

double Params::a_real() const {
  if (a_.imag() != 0.0) fail(ErrorCode::NonRealA, "a has an imaginary part");
  return a_.real();
}

Params Params::with_a(Complex a) const {
  return make(a, b_, epsilon_, Mode::general);
}

void require_special(const Params& p, std::string_view what) {
  if (!p.special()) {
    fail(ErrorCode::SpecialModeViolation,
         std::string(what) + " requires special-mode parameters");
  }
}

ComplexValue::ComplexValue(double re, double im) : z_(re, im) {
  if (!std::isfinite(re) || !std::isfinite(im)) {
    fail(ErrorCode::NonFinite, "complex value must have finite components");
  }
}

SolutionPoint::SolutionPoint(double tau, double u, double du)
    : tau_(tau), u_(u), du_(du) {
  if (!std::isfinite(tau) || !std::isfinite(u) || !std::isfinite(du)) {
    fail(ErrorCode::NonFinite, "solution point must be finite");
  }
  if (!(tau > 0.0)) fail(ErrorCode::ZeroTau, "solution point needs tau > 0");
}

AsymptoticReport AsymptoticReport::make(double tau, double numeric,
                                        double leading,
                                        std::optional<double> corrected) {
  const double reference = corrected.value_or(leading);
  const double abs_residual = std::abs(numeric - reference);
  const double denom = std::abs(reference);
  const double rel_residual =
      denom > 0.0 ? abs_residual / denom
                  : (abs_residual == 0.0 ? 0.0 : HUGE_VAL);
  return {tau, numeric, leading, corrected, abs_residual, rel_residual};
}

}  // namespace dp3
