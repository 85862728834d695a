#include "dp3/origin_series.hpp"

#include <cmath>
#include <limits>

namespace dp3 {
namespace {

constexpr Complex kI(0.0, 1.0);

template <typename T>
std::vector<T> reciprocal(const std::vector<T>& s) {
  std::vector<T> r(s.size());
  r[0] = T(1) / s[0];
  for (std::size_t k = 1; k < s.size(); ++k) {
    T acc(0);
    for (std::size_t j = 1; j <= k; ++j) acc += s[j] * r[k - j];
    r[k] = -acc / s[0];
  }
  return r;
}

template <typename T>
std::vector<T> multiply(const std::vector<T>& x, const std::vector<T>& y) {
  std::vector<T> r(x.size() + y.size() - 1, T(0));
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) r[i + j] += x[i] * y[j];
  }
  return r;
}

double ratio_radius(const std::vector<double>& c) {
  for (std::size_t k = c.size() - 1; k >= 1; --k) {
    if (c[k] != 0.0 && c[k - 1] != 0.0) {
      return std::sqrt(std::abs(c[k - 1] / c[k]));
    }
  }
  return std::numeric_limits<double>::infinity();
}

void require_in_radius(const OriginSeries& s, double tau) {
  if (!(std::abs(tau) <= s.radius_estimate)) {
    fail(ErrorCode::OutsideRadius,
         "tau = " + std::to_string(tau) + " exceeds series radius estimate " +
             std::to_string(s.radius_estimate));
  }
}

// Sum of integral of sum_{k>=1} w_k tau^{2k-1}.
template <typename T>
T integrate_odd_tail(const std::vector<T>& w, double tau) {
  const double s = tau * tau;
  T acc(0);
  for (std::size_t k = w.size() - 1; k >= 1; --k) {
    acc = acc * s + w[k] / (2.0 * static_cast<double>(k));
  }
  return acc * s;
}

}  // namespace

OriginSeries build_series(const Params& p, std::size_t n_terms) {
  require_special(p, "build_series");
  if (n_terms < 2) fail(ErrorCode::InvalidConfig, "series needs n_terms >= 2");
  const double a = p.a_real();
  const double b = p.b();

  std::vector<double> c(n_terms, 0.0);
  c[0] = -b / (2.0 * a);
  for (std::size_t m = 1; m < n_terms; ++m) {
    // order tau^n with n = 2m + 1; c_i = c[(i - 1) / 2]
    double quadratic = 0.0;
    for (std::size_t i = 1; i < m; ++i) {
      const double d = 2.0 * (static_cast<double>(m - i) - static_cast<double>(i));
      quadratic += 0.5 * d * d * c[i] * c[m - i];
    }
    double cubic = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; i + j < m; ++j) {
        cubic += c[i] * c[j] * c[m - 1 - i - j];
      }
    }
    const double n = static_cast<double>(2 * m + 1);
    const double source = quadratic + 8.0 * cubic;
    c[m] = 2.0 * a * source / (b * ((n - 1.0) * (n - 1.0) + 4.0 * a * a));
  }
  const double radius = ratio_radius(c);
  return {a, b, std::move(c), n_terms, radius};
}

SeriesPoint eval_u(const OriginSeries& series, double tau) {
  require_in_radius(series, tau);
  const double s = tau * tau;
  double u = 0.0;
  double du = 0.0;
  for (std::size_t k = series.coeffs.size(); k-- > 0;) {
    u = u * s + series.coeffs[k];
    du = du * s + static_cast<double>(2 * k + 1) * series.coeffs[k];
  }
  return {u * tau, du};
}

SeriesIntegrals eval_integrals(const OriginSeries& series, double tau0) {
  if (!(tau0 >= 0.0)) fail(ErrorCode::OutOfRange, "eval_integrals needs tau0 >= 0");
  require_in_radius(series, tau0);
  const double a = series.a;
  const double b = series.b;
  const std::vector<double> inv = reciprocal(series.coeffs);

  // 2a/tau + b/u = b sum_{k>=1} inv_k tau^{2k-1}
  const double i1 = b * integrate_odd_tail(inv, tau0);

  // f/tau = (ib/8) W / tau with W = (1 - 2ai) - (u' + ib) tau/u
  std::vector<Complex> v(series.coeffs.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    v[k] = static_cast<double>(2 * k + 1) * series.coeffs[k];
  }
  v[0] += kI * b;
  std::vector<Complex> inv_c(inv.begin(), inv.end());
  std::vector<Complex> w = multiply(v, inv_c);
  w.resize(series.coeffs.size());
  for (auto& x : w) x = -x;
  w[0] += 1.0 - 2.0 * a * kI;

  const Complex i2 = (kI * b / 8.0) * integrate_odd_tail(w, tau0);
  return {i1, ComplexValue(i2)};
}

double series_ode_residual(const OriginSeries& series, double tau) {
  const std::size_t n = series.coeffs.size();
  const double a = series.a;
  const double b = series.b;
  // polynomial coefficients in tau
  std::vector<double> u(2 * n, 0.0), du(2 * n, 0.0), ddu(2 * n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t e = 2 * k + 1;
    const double c = series.coeffs[k];
    u[e] = c;
    du[e - 1] = static_cast<double>(e) * c;
    if (e >= 2) ddu[e - 2] = static_cast<double>(e * (e - 1)) * c;
  }
  std::vector<double> tau_poly = {0.0, 1.0};
  auto r = multiply(multiply(tau_poly, u), ddu);
  auto sub = multiply(multiply(tau_poly, du), du);
  auto add = multiply(u, du);
  auto cube = multiply(multiply(u, u), u);
  r.resize(cube.size(), 0.0);
  for (std::size_t k = 0; k < sub.size(); ++k) r[k] -= sub[k];
  for (std::size_t k = 0; k < add.size(); ++k) r[k] += add[k];
  for (std::size_t k = 0; k < cube.size(); ++k) r[k] += 8.0 * cube[k];
  for (std::size_t k = 0; k < u.size(); ++k) r[k] -= 2.0 * a * b * u[k];
  r[1] -= b * b;

  double acc = 0.0;
  for (std::size_t k = r.size(); k-- > 0;) acc = acc * tau + r[k];
  return acc;
}

double choose_seed_tau(const OriginSeries& series, double tau0,
                       double rel_tol) {
  double tau = std::min(tau0, 0.5 * series.radius_estimate);
  const double last = series.coeffs.back();
  const auto exponent = static_cast<double>(2 * series.coeffs.size() - 1);
  for (int guard = 0; guard < 200; ++guard) {
    const double u = eval_u(series, tau).u;
    if (std::abs(last) * std::pow(tau, exponent) < rel_tol * std::abs(u)) {
      return tau;
    }
    tau *= 0.5;
  }
  return tau;
}

}  // namespace dp3
