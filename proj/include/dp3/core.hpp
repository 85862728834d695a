#pragma once

// Shared value types for the degenerate third Painleve equation (dP3)
//
//   u'' = (u')^2/u - u'/tau + (-8 eps u^2 + 2ab)/tau + b^2/u
//
// and its special odd solution u(0) = 0. Every type validates on
// construction and is immutable afterwards.

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dp3 {

using Complex = std::complex<double>;

enum class ErrorCode {
  InvalidB,
  InvalidEpsilon,
  SpecialModeViolation,
  NonRealA,
  NonFinite,
  InvalidState,
  PoleOfGamma,
  NonPositiveQ2,
  ZeroU,
  ZeroTau,
  DegenerateDenominator,
  OutsideRadius,
  InvalidConfig,
  PoleEncountered,
  ZeroCrossing,
  StepUnderflow,
  OutOfRange,
  UnknownFigure,
  IoError,
  Usage,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

enum class Sign : int { plus = 1, minus = -1 };

inline double to_double(Sign s) noexcept { return static_cast<int>(s); }

// General mode admits complex a and either sign of epsilon; special mode is
// the setting of the odd solution vanishing at the origin (real a < 0,
// epsilon = +1).
enum class Mode { general, special };

/// Parameters (a, b, epsilon) of one equation instance.
class Params {
 public:
  static Params make(double a, double b, Sign epsilon, Mode mode);
  static Params make(Complex a, double b, Sign epsilon, Mode mode);

  Complex a() const noexcept { return a_; }
  /// Real a; throws NonRealA when the imaginary part is nonzero.
  double a_real() const;
  double b() const noexcept { return b_; }
  Sign epsilon() const noexcept { return epsilon_; }
  double eps() const noexcept { return to_double(epsilon_); }
  Mode mode() const noexcept { return mode_; }
  bool special() const noexcept { return mode_ == Mode::special; }

  /// a + i and a - i: parameters solved by the Backlund images.
  Complex a_plus() const noexcept { return a_ + Complex(0.0, 1.0); }
  Complex a_minus() const noexcept { return a_ - Complex(0.0, 1.0); }

  /// Same b and epsilon with a replaced; always general mode.
  Params with_a(Complex a) const;

 private:
  Params(Complex a, double b, Sign epsilon, Mode mode)
      : a_(a), b_(b), epsilon_(epsilon), mode_(mode) {}

  Complex a_;
  double b_;
  Sign epsilon_;
  Mode mode_;
};

/// Throws SpecialModeViolation unless p is in special mode.
void require_special(const Params& p, std::string_view what);

/// A complex number with finite components.
class ComplexValue {
 public:
  ComplexValue() = default;
  ComplexValue(double re, double im);
  explicit ComplexValue(Complex z) : ComplexValue(z.real(), z.imag()) {}

  double re() const noexcept { return z_.real(); }
  double im() const noexcept { return z_.imag(); }
  Complex value() const noexcept { return z_; }
  operator Complex() const noexcept { return z_; }

  friend bool operator==(const ComplexValue&, const ComplexValue&) = default;

 private:
  Complex z_{};
};

/// Real phase point (tau, u, u') with tau > 0.
class SolutionPoint {
 public:
  SolutionPoint(double tau, double u, double du);

  double tau() const noexcept { return tau_; }
  double u() const noexcept { return u_; }
  double du() const noexcept { return du_; }

 private:
  double tau_;
  double u_;
  double du_;
};

/// Phase point together with the running integrals over [0, tau]:
///   i1 = int (2a/t + b/u) dt,   i2 = int f(t)/t dt.
struct AugmentedState {
  SolutionPoint point;
  double i1;
  ComplexValue i2;

  double tau() const noexcept { return point.tau(); }
};

/// Numeric value against its large-tau asymptotic prediction. The residual
/// is taken against the corrected prediction when one is present.
struct AsymptoticReport {
  double tau;
  double numeric;
  double asymptotic_leading;
  std::optional<double> asymptotic_with_correction;
  double abs_residual;
  double rel_residual;

  static AsymptoticReport make(double tau, double numeric, double leading,
                               std::optional<double> corrected);
};

bool is_finite(double x) noexcept;
bool is_finite(Complex z) noexcept;

}  // namespace dp3
