#include "dp3/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>

namespace dp3 {
namespace {

constexpr Complex kI(0.0, 1.0);

void require_nonzero_u(const SolutionPoint& s) {
  if (s.u() == 0.0) fail(ErrorCode::ZeroU, "vector field is singular at u = 0");
}

double largest(std::initializer_list<Complex> terms) {
  double m = 0.0;
  for (const Complex& t : terms) m = std::max(m, std::abs(t));
  return m;
}

std::array<ComplexJet, 2> jet_at(const Params& p, const SolutionPoint& s) {
  return solution_jet<kJetSize>(p.a(), p.b(), p.eps(), s.tau(), s.u(), s.du());
}

ComplexDerivatives to_derivatives(const ComplexJet& j) {
  return {j.value(), j.derivative_value(1), j.derivative_value(2)};
}

Residual image_residual(Complex shifted_a, const Params& p, Complex tau,
                        const ComplexDerivatives& d) {
  return ode_residual(shifted_a, p.b(), p.epsilon(), tau, d.value, d.d1, d.d2);
}

}  // namespace

Derivatives rhs(const Params& p, const SolutionPoint& s) {
  require_nonzero_u(s);
  const double a = p.a_real();
  return {s.du(),
          second_derivative(a, p.b(), p.eps(), s.tau(), s.u(), s.du())};
}

Residual ode_residual(Complex a, double b, Sign epsilon, Complex tau,
                      Complex u, Complex du, Complex ddu) {
  const double eps = to_double(epsilon);
  const Complex t1 = du * du / u;
  const Complex t2 = -du / tau;
  const Complex t3 = -8.0 * eps * u * u / tau;
  const Complex t4 = 2.0 * a * b / tau;
  const Complex t5 = b * b / u;
  const Complex r = ddu - (t1 + t2 + t3 + t4 + t5);
  return {std::abs(r), largest({ddu, t1, t2, t3, t4, t5})};
}

ComplexValue backlund_plus(const Params& p, const SolutionPoint& s) {
  require_nonzero_u(s);
  return ComplexValue(backlund_plus_expr<Complex>(
      p.a(), p.b(), p.eps(), s.tau(), s.u(), s.du()));
}

ComplexValue backlund_minus(const Params& p, const SolutionPoint& s) {
  require_nonzero_u(s);
  return ComplexValue(backlund_minus_expr<Complex>(
      p.a(), p.b(), p.eps(), s.tau(), s.u(), s.du()));
}

ComplexDerivatives backlund_plus_derivatives(const Params& p,
                                             const SolutionPoint& s) {
  require_nonzero_u(s);
  const auto [t, u] = jet_at(p, s);
  return to_derivatives(
      backlund_plus_expr(p.a(), p.b(), p.eps(), t, u, u.derivative()));
}

ComplexDerivatives backlund_minus_derivatives(const Params& p,
                                              const SolutionPoint& s) {
  require_nonzero_u(s);
  const auto [t, u] = jet_at(p, s);
  return to_derivatives(
      backlund_minus_expr(p.a(), p.b(), p.eps(), t, u, u.derivative()));
}

Residual backlund_plus_residual(const Params& p, const SolutionPoint& s) {
  return image_residual(p.a_plus(), p, s.tau(), backlund_plus_derivatives(p, s));
}

Residual backlund_minus_residual(const Params& p, const SolutionPoint& s) {
  return image_residual(p.a_minus(), p, s.tau(),
                        backlund_minus_derivatives(p, s));
}

TransformedPoint transform(const Params& p, const SolutionPoint& s) {
  require_nonzero_u(s);
  const auto [t, u] = jet_at(p, s);
  const ComplexJet du = u.derivative();
  const ComplexJet up = backlund_plus_expr(p.a(), p.b(), p.eps(), t, u, du);
  const ComplexJet f = up * u;
  return {ComplexValue(up.value()),
          ComplexValue(backlund_minus_expr<Complex>(p.a(), p.b(), p.eps(),
                                                    s.tau(), s.u(), s.du())),
          ComplexValue(f.value()), ComplexValue(f.derivative_value(1)),
          ComplexValue(f.derivative_value(2))};
}

ComplexValue f_value(const Params& p, const SolutionPoint& s) {
  return ComplexValue(backlund_plus(p, s).value() * s.u());
}

ComplexValue f_value_log_form(const Params& p, const SolutionPoint& s) {
  require_nonzero_u(s);
  const double tau = s.tau();
  const Complex bracket =
      s.du() / s.u() - 1.0 / tau + kI * (2.0 * p.a() / tau + p.b() / s.u());
  return ComplexValue(-tau * (kI * p.eps() * p.b() / 8.0) * bracket);
}

Residual residual_f_form(const Params& p, Complex f, Complex df, Complex ddf,
                         double tau) {
  if (!(tau > 0.0)) fail(ErrorCode::ZeroTau, "residual_f_form needs tau > 0");
  const double b = p.b();
  const Complex shift = kI * p.eps() * b * (2.0 * p.a() * kI - 1.0);
  const Complex first = b * b * tau * tau * (ddf - 2.0 * b * b) *
                        (ddf - 2.0 * b * b);
  const Complex lin = 8.0 * f + shift;
  const Complex second = lin * lin * (df * df - 4.0 * b * b * f);
  return {std::abs(first + second), largest({first, second})};
}

InverseResult inverse_f_to_u(const Params& p, Complex f, Complex df,
                             Complex ddf, double tau) {
  const double b = p.b();
  const Complex shift = kI * p.eps() * b * (2.0 * p.a() * kI - 1.0);
  const Complex den = 8.0 * f + shift;
  const double den_scale = 8.0 * std::abs(f) + std::abs(shift);
  if (std::abs(den) <= 1e-14 * den_scale) {
    fail(ErrorCode::DegenerateDenominator, "8f + i eps b (2ai - 1) vanishes");
  }
  const Complex u =
      df / (2.0 * kI * b) - p.eps() * tau * (ddf - 2.0 * b * b) / (2.0 * den);
  return {ComplexValue(u), ComplexValue(u - df / (kI * b))};
}

double phi_derivative(const Params& p, const SolutionPoint& s) {
  require_nonzero_u(s);
  return 2.0 * p.a_real() / s.tau() + p.b() / s.u();
}

}  // namespace dp3
