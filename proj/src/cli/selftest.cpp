#include "dp3/cli/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "dp3/dynamics.hpp"
#include "dp3/integrator.hpp"
#include "dp3/origin_series.hpp"
#include "dp3/special_functions.hpp"

namespace dp3::cli {
namespace {

using std::numbers::pi;

SelftestCheck at_most(std::string name, double measured, double tol) {
  return {std::move(name), measured, tol, std::isfinite(measured) && measured <= tol};
}

std::string tag(double a) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "[a=%g]", a);
  return buf;
}

void trajectory_checks(double a, const SelftestOptions& opt, std::vector<SelftestCheck>& out) {
  const Params p = Params::make(a, 0.01, Sign::plus, Mode::special);
  IntegratorConfig cfg;
  const double b = p.b();
  const double tol = 10.0 * cfg.rtol;

  double min_u = HUGE_VAL;
  double re_id = 0.0;
  double im_id = 0.0;
  double fform = 0.0;
  double back_plus = 0.0;
  double back_minus = 0.0;
  double round_trip = 0.0;

  try {
    const Trajectory traj = integrate(p, cfg);
    const double bp = b + opt.perturb_b;
    for (const auto& s : traj.samples()) {
      const double tau = s.tau();
      const double u = s.point.u();
      min_u = std::min(min_u, u);
      re_id = std::max(re_id, std::abs(s.i2.re() - bp / 8.0 * s.i1) / std::max(1.0, std::abs(s.i2.re())));
      const double im_ref = -(b / 8.0) * (std::log(u / tau) - std::log(b / (-2.0 * a)));
      im_id = std::max(im_id, std::abs(s.i2.im() - im_ref) / std::max(1.0, std::abs(im_ref)));
    }
    // 50 points spread over the interval for the more expensive residuals
    for (int k = 1; k <= 50; ++k) {
      const double tau = traj.tau_start() + (traj.tau_end() - traj.tau_start()) * k / 50.0;
      const AugmentedState s = sample_at(traj, tau);
      const TransformedPoint t = transform(p, s.point);
      fform = std::max(fform, residual_f_form(p, t.f, t.df, t.ddf, tau).relative());
      back_plus = std::max(back_plus, backlund_plus_residual(p, s.point).relative());
      back_minus = std::max(back_minus, backlund_minus_residual(p, s.point).relative());
      const InverseResult inv = inverse_f_to_u(p, t.f, t.df, t.ddf, tau);
      round_trip = std::max(round_trip, std::abs(inv.u.value() - s.point.u()) / std::abs(s.point.u()));
    }
    out.push_back({"positivity" + tag(a), min_u, 0.0, min_u > 0.0});
    out.push_back(at_most("dense_ode_residual" + tag(a), traj.diagnostics().max_residual, 1e-6));
  } catch (const Error& e) {
    out.push_back({std::string("integration") + tag(a) + " " + std::string(to_string(e.code())), HUGE_VAL, 0.0, false});
    return;
  }
  out.push_back(at_most("re_i2_equals_b_over_8_i1" + tag(a), re_id, tol));
  out.push_back(at_most("im_i2_log_identity" + tag(a), im_id, tol));
  out.push_back(at_most("f_form_residual" + tag(a), fform, 1e-6));
  out.push_back(at_most("inverse_round_trip" + tag(a), round_trip, 1e-8));
  out.push_back(at_most("backlund_plus_residual" + tag(a), back_plus, 1e-6));
  out.push_back(at_most("backlund_minus_residual" + tag(a), back_minus, 1e-6));

  const OriginSeries series = build_series(p, cfg.series_terms);
  out.push_back(at_most("series_c1" + tag(a), std::abs(series.coeffs[0] - (-b / (2.0 * a))), 0.0));

  // series against the integrator started closer to the origin
  const double t0 = choose_seed_tau(series, cfg.tau0);
  const double ts = choose_seed_tau(series, t0 / 4.0);
  IntegratorConfig near = cfg;
  near.tau_max = t0;
  const SeriesPoint sp = eval_u(series, ts);
  const SeriesIntegrals si = eval_integrals(series, ts);
  const Trajectory short_run =
      integrate_from(p, {SolutionPoint(ts, sp.u, sp.du), si.i1, si.i2}, near);
  const State end = short_run.state_at(t0);
  const SeriesPoint ep = eval_u(series, t0);
  const double handoff =
      std::max(std::abs(end[0] - ep.u) / std::abs(ep.u), std::abs(end[1] - ep.du) / std::abs(ep.du));
  out.push_back(at_most("series_ode_handoff" + tag(a), handoff, 1e-10));
}

void gamma_checks(std::vector<SelftestCheck>& out) {
  double modulus = 0.0;
  for (int k = 1; k <= 1000; ++k) {
    const double a = -0.01 - (10.0 - 0.01) * (k - 1) / 999.0;
    const double lhs = std::exp(2.0 * log_gamma({1.0, a}).value.re());
    const double rhs = pi * a / std::sinh(pi * a);
    modulus = std::max(modulus, std::abs(lhs - rhs) / rhs);
  }
  out.push_back(at_most("gamma_modulus_identity", modulus, 1e-10));

  const double principal = std::arg(log_gamma({1.0, -8.0}).gamma());
  out.push_back(at_most("arg_gamma_branch[a=-8]",
                        std::abs(arg_gamma_continuous(-8.0) - (principal - 2.0 * pi)), 1e-10));

  double jump = 0.0;
  double prev = arg_gamma_continuous(0.0);
  for (int k = 1; k <= 10000; ++k) {
    const double cur = arg_gamma_continuous(-1e-3 * k);
    jump = std::max(jump, std::abs(cur - prev));
    prev = cur;
  }
  out.push_back(at_most("arg_gamma_continuity", jump, 0.1));

  double recurrence = 0.0;
  for (const Complex z : {Complex(0.3, 2.0), Complex(2.5, -7.0), Complex(-1.5, 0.5), Complex(4.0, 11.0)}) {
    const Complex d = log_gamma(z + 1.0).value.value() - log_gamma(z).value.value() - std::log(z);
    recurrence = std::max(recurrence, std::abs(std::exp(d) - 1.0));
  }
  out.push_back(at_most("gamma_recurrence", recurrence, 1e-12));
}

}  // namespace

bool SelftestReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const SelftestCheck& c) { return c.pass; });
}

std::string SelftestReport::text() const {
  std::string s;
  char buf[256];
  for (const auto& c : checks) {
    std::snprintf(buf, sizeof buf, "%s %-40s measured=%.6e tol=%.1e\n", c.pass ? "PASS" : "FAIL",
                  c.name.c_str(), c.measured, c.tolerance);
    s += buf;
  }
  std::snprintf(buf, sizeof buf, "%s %zu/%zu checks passed\n", all_pass() ? "OK" : "FAILED",
                static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(),
                                                       [](const SelftestCheck& c) { return c.pass; })),
                checks.size());
  s += buf;
  return s;
}

SelftestReport cmd_selftest(const SelftestOptions& options) {
  SelftestReport report;
  gamma_checks(report.checks);
  for (double a : {-8.0, -1.0 / 8.0}) trajectory_checks(a, options, report.checks);
  return report;
}

}  // namespace dp3::cli
