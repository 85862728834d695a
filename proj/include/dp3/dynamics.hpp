#pragma once

// The dP3 vector field, its Backlund images u+ and u-, the function
// f = u+ u and the exact identities those objects satisfy.

#include <array>

#include "dp3/core.hpp"
#include "dp3/jet.hpp"

namespace dp3 {

/// u'' as a function of (tau, u, u'). Generic over real, complex and Jet
/// scalars so that the same expression drives the integrator, the residual
/// oracles and the Taylor jets.
template <typename T, typename A>
T second_derivative(A a, double b, double eps, const T& tau, const T& u,
                    const T& du) {
  return du * du / u - du / tau + (-8.0 * eps * u * u + 2.0 * a * b) / tau +
         b * b / u;
}

/// Backlund image u+ (solves the equation with a + i).
template <typename T>
T backlund_plus_expr(Complex a, double b, double eps, const T& tau, const T& u,
                     const T& du) {
  const Complex i(0.0, 1.0);
  const Complex pre = i * eps * b / 8.0;
  return pre / (u * u) * (tau * (-du - i * b) - (2.0 * a * i - 1.0) * u);
}

/// Backlund image u- (solves the equation with a - i).
template <typename T>
T backlund_minus_expr(Complex a, double b, double eps, const T& tau,
                      const T& u, const T& du) {
  const Complex i(0.0, 1.0);
  const Complex pre = i * eps * b / 8.0;
  return pre / (u * u) * (tau * (du - i * b) - (2.0 * a * i + 1.0) * u);
}

inline constexpr std::size_t kJetSize = 6;
using ComplexJet = Jet<Complex, kJetSize>;

/// Taylor jet of the solution through (tau, u, u'), generated by the
/// equation itself: coefficient n comes from coefficient n - 2 of u''.
template <std::size_t N>
std::array<Jet<Complex, N>, 2> solution_jet(Complex a, double b, double eps,
                                            Complex tau, Complex u,
                                            Complex du) {
  using J = Jet<Complex, N>;
  const J t = J::variable(tau);
  J uj(u);
  if constexpr (N > 1) uj[1] = du;
  for (std::size_t n = 2; n < N; ++n) {
    const J acc = second_derivative(a, b, eps, t, uj, uj.derivative());
    uj[n] = acc[n - 2] / Complex(static_cast<double>(n * (n - 1)));
  }
  return {t, uj};
}

struct Derivatives {
  double du;
  double ddu;
};

/// (u', u'') on the real line; requires real a and u != 0.
Derivatives rhs(const Params& p, const SolutionPoint& s);

/// Residual of an identity "sum of terms = 0", together with the magnitude
/// of its largest term.
struct Residual {
  double absolute;
  double scale;

  double relative() const noexcept {
    return scale > 0.0 ? absolute / scale : absolute;
  }
};

/// Residual of the dP3 equation for complex data; a is taken as given so
/// that Backlund images can be checked against a + i and a - i.
Residual ode_residual(Complex a, double b, Sign epsilon, Complex tau,
                      Complex u, Complex du, Complex ddu);

ComplexValue backlund_plus(const Params& p, const SolutionPoint& s);
ComplexValue backlund_minus(const Params& p, const SolutionPoint& s);

/// Value and first two derivatives of a complex function of tau.
struct ComplexDerivatives {
  Complex value;
  Complex d1;
  Complex d2;
};

ComplexDerivatives backlund_plus_derivatives(const Params& p,
                                             const SolutionPoint& s);
ComplexDerivatives backlund_minus_derivatives(const Params& p,
                                              const SolutionPoint& s);

/// u+ (resp. u-) checked against the equation with a + i (resp. a - i).
Residual backlund_plus_residual(const Params& p, const SolutionPoint& s);
Residual backlund_minus_residual(const Params& p, const SolutionPoint& s);

struct TransformedPoint {
  ComplexValue u_plus;
  ComplexValue u_minus;
  ComplexValue f;
  ComplexValue df;
  ComplexValue ddf;
};

/// u+, u-, f = u+ u with f' and f'' obtained from the Taylor jet, where u''
/// and u''' are eliminated through the equation.
TransformedPoint transform(const Params& p, const SolutionPoint& s);

/// f = u+ u.
ComplexValue f_value(const Params& p, const SolutionPoint& s);

/// f = -(i eps b / 8) tau (u'/u - 1/tau + i (2a/tau + b/u)).
ComplexValue f_value_log_form(const Params& p, const SolutionPoint& s);

/// Left side of
///   b^2 tau^2 (f'' - 2b^2)^2 + (8f + i eps b (2ai - 1))^2 ((f')^2 - 4 b^2 f),
/// scaled by the larger of the two summands.
Residual residual_f_form(const Params& p, Complex f, Complex df, Complex ddf,
                         double tau);

struct InverseResult {
  ComplexValue u;
  ComplexValue u_plus;
};

/// u = f'/(2ib) - eps tau (f'' - 2b^2) / (2 (8f + i eps b (2ai - 1))) and
/// u+ = u - f'/(ib). Throws DegenerateDenominator when 8f + i eps b (2ai - 1)
/// vanishes.
InverseResult inverse_f_to_u(const Params& p, Complex f, Complex df,
                             Complex ddf, double tau);

/// phi' = 2a/tau + b/u, the integrand of the first integral.
double phi_derivative(const Params& p, const SolutionPoint& s);

}  // namespace dp3
