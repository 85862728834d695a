#include <doctest.h>

#include <cmath>
#include <random>

#include "dp3/dynamics.hpp"
#include "dp3/integrator.hpp"
#include "dp3/origin_series.hpp"

using namespace dp3;

namespace {

const Complex I(0.0, 1.0);

Params special(double a, double b = 0.01) { return Params::make(a, b, Sign::plus, Mode::special); }

// u = (b^{2/3}/2) tau^{1/3} solves the equation exactly when a = 0, eps = +1.
SolutionPoint arc_point(double b, double tau) {
  const double c = std::cbrt(b * b) / 2.0;
  return SolutionPoint(tau, c * std::cbrt(tau), c / 3.0 * std::pow(tau, -2.0 / 3.0));
}

}  // namespace

TEST_CASE("rhs at hand-computed points") {
  const Params p = special(-1.0, 1.0);
  const Derivatives d = rhs(p, SolutionPoint(1.0, 1.0, 0.0));
  CHECK(d.du == 0.0);
  CHECK(d.ddu == doctest::Approx(-9.0));
  const Derivatives m = rhs(p, SolutionPoint(1.0, -1.0, 0.0));
  CHECK(m.ddu == doctest::Approx(-11.0));
  CHECK(rhs(p, SolutionPoint(2.0, 0.5, 3.0)).du == 3.0);
}

TEST_CASE("rhs rejects u = 0") {
  try {
    rhs(special(-1.0), SolutionPoint(1.0, 0.0, 1.0));
    FAIL("no exception");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroU);
  }
}

TEST_CASE("vector field is odd under (tau, u) -> (-tau, -u)") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> d(0.1, 3.0);
  for (int k = 0; k < 200; ++k) {
    const double a = -d(rng), b = d(rng), tau = d(rng), u = d(rng), du = d(rng) - 1.5;
    const double f = second_derivative(a, b, 1.0, tau, u, du);
    const double g = second_derivative(a, b, 1.0, -tau, -u, du);
    CHECK(g == doctest::Approx(-f).epsilon(1e-13));
  }
}

TEST_CASE("exact arc solution for a = 0 has zero residual") {
  const Params p = Params::make(0.0, 2.0, Sign::plus, Mode::general);
  for (double tau : {0.3, 1.0, 7.0}) {
    const SolutionPoint s = arc_point(2.0, tau);
    const double c = std::cbrt(4.0) / 2.0;
    const double ddu = -2.0 * c / 9.0 * std::pow(tau, -5.0 / 3.0);
    CHECK(second_derivative(0.0, 2.0, 1.0, tau, s.u(), s.du()) == doctest::Approx(ddu).epsilon(1e-13));
    CHECK(ode_residual(p.a(), p.b(), p.epsilon(), tau, s.u(), s.du(), ddu).relative() < 1e-14);
    CHECK(ode_residual(p.a(), p.b(), p.epsilon(), tau, s.u(), s.du(), ddu * 1.01).relative() > 1e-6);
  }
}

TEST_CASE("Backlund images of the exact arc solve the shifted equations") {
  const Params p = Params::make(0.0, 2.0, Sign::plus, Mode::general);
  for (double tau : {0.5, 2.0, 9.0}) {
    const SolutionPoint s = arc_point(2.0, tau);
    CHECK(backlund_plus_residual(p, s).relative() < 1e-12);
    CHECK(backlund_minus_residual(p, s).relative() < 1e-12);
  }
}

TEST_CASE("u+ and u- are complex conjugates on real data") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> d(0.2, 4.0);
  for (int k = 0; k < 100; ++k) {
    const Params p = special(-d(rng), d(rng));
    const SolutionPoint s(d(rng), d(rng), d(rng) - 2.0);
    const Complex up = backlund_plus(p, s);
    const Complex um = backlund_minus(p, s);
    CHECK(std::abs(up - std::conj(um)) <= 1e-15 * std::abs(up));
    const TransformedPoint t = transform(p, s);
    CHECK(std::abs(t.u_plus.value() - std::conj(t.u_minus.value())) <= 1e-15 * std::abs(up));
  }
}

TEST_CASE("two formulas for f agree and Re f matches the I1 integrand") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> d(0.1, 5.0);
  for (int k = 0; k < 200; ++k) {
    const double a = -d(rng), b = d(rng);
    const Params p = special(a, b);
    const SolutionPoint s(d(rng), d(rng), d(rng) - 2.5);
    const Complex f1 = f_value(p, s);
    const Complex f2 = f_value_log_form(p, s);
    CHECK(std::abs(f1 - f2) <= 1e-12 * std::abs(f1));
    const double re_expected = (b * s.tau() / 8.0) * (2.0 * a / s.tau() + b / s.u());
    CHECK(f1.real() == doctest::Approx(re_expected).epsilon(1e-12));
    CHECK(f1.real() / s.tau() == doctest::Approx(b / 8.0 * phi_derivative(p, s)).epsilon(1e-12));
  }
}

TEST_CASE("phi derivative cancels on the linearisation") {
  const Params p = special(-8.0, 0.01);
  for (double tau : {1e-3, 0.1, 2.0}) {
    const double u = -p.b() * tau / (2.0 * p.a_real());
    CHECK(std::abs(phi_derivative(p, SolutionPoint(tau, u, 0.0))) < 1e-12 * (16.0 / tau));
  }
}

TEST_CASE("near the origin u+, f/tau and phi' vanish along the special solution") {
  for (double a : {-8.0, -0.125}) {
    const Params p = special(a);
    const OriginSeries series = build_series(p, 12);
    double prev_up = HUGE_VAL, prev_f = HUGE_VAL, prev_phi = HUGE_VAL;
    for (double tau : {1e-2, 1e-3, 1e-4}) {
      const SeriesPoint sp = eval_u(series, tau);
      const SolutionPoint s(tau, sp.u, sp.du);
      const double up = std::abs(backlund_plus(p, s).value());
      const double fo = std::abs(f_value(p, s).value()) / tau;
      const double ph = std::abs(phi_derivative(p, s));
      CHECK(up < prev_up);
      CHECK(fo < prev_f);
      CHECK(ph < prev_phi);
      prev_up = up;
      prev_f = fo;
      prev_phi = ph;
    }
    CHECK(prev_up < 1e-5);
    CHECK(prev_f < 1e-5);
  }
}

TEST_CASE("f-form residual on the integrated solution") {
  const Params p = special(-8.0);
  const Trajectory traj = integrate(p, IntegratorConfig{});
  for (double tau : {1.0, 5.0, 10.0}) {
    const AugmentedState s = sample_at(traj, tau);
    const TransformedPoint t = transform(p, s.point);
    CHECK(residual_f_form(p, t.f, t.df, t.ddf, tau).relative() < 1e-6);
  }
}

TEST_CASE("f-form residual is large away from solutions") {
  const Params p = special(-8.0);
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    const Complex f(d(rng), d(rng)), df(d(rng), d(rng)), ddf(d(rng), d(rng));
    CHECK(residual_f_form(p, f, df, ddf, 1.0 + std::abs(d(rng))).relative() > 1e-3);
  }
  const double b = p.b();
  const Residual zero = residual_f_form(p, 0.0, 0.0, 0.0, 1.0);
  CHECK(zero.absolute == doctest::Approx(4.0 * std::pow(b, 6)).epsilon(1e-12));
  CHECK(zero.absolute > 0.0);
}

TEST_CASE("f', f'' from jets agree with finite differences of f along the trajectory") {
  const Params p = special(-0.125);
  const Trajectory traj = integrate(p, IntegratorConfig{});
  const double h = 1e-3;
  for (double tau : {2.0, 7.5, 21.0}) {
    const TransformedPoint t = transform(p, sample_at(traj, tau).point);
    const Complex fm = f_value(p, sample_at(traj, tau - h).point);
    const Complex f0 = f_value(p, sample_at(traj, tau).point);
    const Complex fp = f_value(p, sample_at(traj, tau + h).point);
    const Complex d1 = (fp - fm) / (2.0 * h);
    const Complex d2 = (fp - 2.0 * f0 + fm) / (h * h);
    CHECK(std::abs(t.f.value() - f0) <= 1e-14 * std::abs(f0));
    CHECK(std::abs(t.df.value() - d1) <= 1e-6 * std::abs(t.df.value()));
    CHECK(std::abs(t.ddf.value() - d2) <= 1e-3 * std::abs(t.ddf.value()) + 1e-9);
  }
}

TEST_CASE("inverse map round trip and u+ consistency") {
  const Params p = special(-8.0);
  const Trajectory traj = integrate(p, IntegratorConfig{});
  for (double tau : {0.5, 3.0, 12.0, 39.0}) {
    const SolutionPoint s = sample_at(traj, tau).point;
    const TransformedPoint t = transform(p, s);
    const InverseResult inv = inverse_f_to_u(p, t.f, t.df, t.ddf, tau);
    CHECK(std::abs(inv.u.value() - s.u()) <= 1e-8 * s.u());
    const Complex up = inv.u.value() - t.df.value() / (I * p.b());
    CHECK(std::abs(up - backlund_plus(p, s).value()) <= 1e-8 * std::abs(up));
    CHECK(std::abs(inv.u_plus.value() - t.u_plus.value()) <= 1e-8 * std::abs(up));
  }
}

TEST_CASE("inverse map rejects a vanishing denominator") {
  const Params p = special(-8.0);
  const Complex shift = I * p.eps() * p.b() * (2.0 * p.a() * I - 1.0);
  try {
    inverse_f_to_u(p, -shift / 8.0, 0.1, 0.2, 1.0);
    FAIL("no exception");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateDenominator);
  }
}

TEST_CASE("Backlund residual on the integrated solution, tau in [0.5, 20]") {
  for (double a : {-8.0, -0.125}) {
    const Params p = special(a);
    const Trajectory traj = integrate(p, IntegratorConfig{});
    double worst = 0.0;
    for (double tau = 0.5; tau <= 20.0; tau += 0.5) {
      const SolutionPoint s = sample_at(traj, tau).point;
      worst = std::max({worst, backlund_plus_residual(p, s).relative(),
                        backlund_minus_residual(p, s).relative()});
    }
    CHECK(worst < 1e-6);
  }
}

TEST_CASE("solution jet matches the trajectory nearby") {
  const Params p = special(-0.125);
  const Trajectory traj = integrate(p, IntegratorConfig{});
  const double tau = 6.0;
  const SolutionPoint s = sample_at(traj, tau).point;
  const auto jets = solution_jet<8>(p.a(), p.b(), 1.0, tau, s.u(), s.du());
  const double h = 0.05;
  Complex taylor = 0.0;
  for (std::size_t k = 8; k-- > 0;) taylor = taylor * h + jets[1][k];
  CHECK(std::abs(taylor.real() - sample_at(traj, tau + h).point.u()) < 1e-10);
  CHECK(std::abs(taylor.imag()) < 1e-15);
  CHECK(jets[0].value() == Complex(tau));
}

TEST_CASE("transform guards") {
  const Params p = special(-1.0);
  CHECK_THROWS_AS(backlund_plus(p, SolutionPoint(1.0, 0.0, 1.0)), Error);
  CHECK_THROWS_AS(f_value(p, SolutionPoint(1.0, 0.0, 1.0)), Error);
  try {
    residual_f_form(p, 1.0, 1.0, 1.0, 0.0);
    FAIL("no exception");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroTau);
  }
}
